/*
 *  Copyright 2026 The dasp Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "dasp/semantics.hpp"

#include <algorithm>

namespace dasp {

bool body_true( const Rule& rule, const Interpretation& interpretation )
{
    for( AtomId a : rule.pos )
        if( interpretation[ a ] != Value::True )
            return false;
    for( AtomId a : rule.neg )
        if( interpretation[ a ] != Value::False )
            return false;
    return true;
}

bool is_model( const GroundProgram& program, const Interpretation& interpretation )
{
    if( interpretation.size() < program.atom_count() || !interpretation.is_total() )
        throw ProgramError( "model check requires a total interpretation over the program atoms" );
    for( const Rule& r : program.rules() )
        if( body_true( r, interpretation ) && interpretation[ r.head ] != Value::True )
            return false;
    return true;
}

GroundProgram reduct( const GroundProgram& program, const Interpretation& interpretation )
{
    if( interpretation.size() < program.atom_count() || !interpretation.is_total() )
        throw ProgramError( "the reduct requires a total interpretation over the program atoms" );
    GroundProgram out;
    out.ensure_atom( static_cast< AtomId >( program.atom_count() - 1 ) );
    for( AtomId a = 1; a < program.atom_count(); ++a )
        if( program.has_name( a ) )
            out.set_name( a, program.name( a ) );
    for( const Rule& r : program.rules() ) {
        bool blocked = std::any_of( r.neg.begin(), r.neg.end(), [ & ]( AtomId a ) { return interpretation[ a ] == Value::True; } );
        if( !blocked )
            out.add_rule( r.head, r.pos, {} );
    }
    return out;
}

namespace {

/* Occurrence lists for repeated least-model computations. */
class Compiled {
public:
    explicit Compiled( const GroundProgram& program ) : program_( program ), pos_occ_( program.atom_count() )
    {
        auto rules = program.rules();
        pos_size_.resize( rules.size() );
        for( std::size_t i = 0; i < rules.size(); ++i ) {
            std::vector< AtomId > pos = rules[ i ].pos;
            std::sort( pos.begin(), pos.end() );
            pos.erase( std::unique( pos.begin(), pos.end() ), pos.end() );
            pos_size_[ i ] = static_cast< int >( pos.size() );
            for( AtomId a : pos )
                pos_occ_[ a ].push_back( i );
        }
        missing_.resize( rules.size() );
        model_.resize( program.atom_count() );
    }

    /* Least model of the rules not blocked by `blocked_by`; constraints are ignored. */
    template< class Blocked >
    const std::vector< bool >& least_model( Blocked&& blocked_by )
    {
        auto rules = program_.rules();
        std::fill( model_.begin(), model_.end(), false );
        queue_.clear();
        for( std::size_t i = 0; i < rules.size(); ++i ) {
            const Rule& r = rules[ i ];
            bool blocked = r.head == kBottom;
            for( AtomId a : r.neg )
                if( blocked || blocked_by( a ) ) {
                    blocked = true;
                    break;
                }
            missing_[ i ] = blocked ? -1 : pos_size_[ i ];
            if( missing_[ i ] == 0 && !model_[ r.head ] ) {
                model_[ r.head ] = true;
                queue_.push_back( r.head );
            }
        }
        for( std::size_t q = 0; q < queue_.size(); ++q ) {
            for( std::size_t i : pos_occ_[ queue_[ q ] ] ) {
                if( missing_[ i ] <= 0 || --missing_[ i ] != 0 )
                    continue;
                AtomId head = rules[ i ].head;
                if( !model_[ head ] ) {
                    model_[ head ] = true;
                    queue_.push_back( head );
                }
            }
        }
        return model_;
    }

private:
    const GroundProgram& program_;
    std::vector< std::vector< std::size_t > > pos_occ_;
    std::vector< int > pos_size_;
    std::vector< int > missing_;
    std::vector< bool > model_;
    std::vector< AtomId > queue_;
};

}  // namespace

std::vector< bool > least_model( const GroundProgram& program )
{
    Compiled compiled( program );
    return compiled.least_model( []( AtomId ) { return false; } );
}

bool is_answer_set( const GroundProgram& program, const Interpretation& interpretation )
{
    if( interpretation[ kBottom ] != Value::False )
        return false;
    if( !is_model( program, interpretation ) )
        return false;
    Compiled compiled( program );
    const auto& lm = compiled.least_model( [ & ]( AtomId a ) { return interpretation[ a ] == Value::True; } );
    for( AtomId a = 1; a < program.atom_count(); ++a )
        if( lm[ a ] != ( interpretation[ a ] == Value::True ) )
            return false;
    return true;
}

std::vector< AnswerSet > brute_force_answer_sets( const GroundProgram& program, std::size_t limit )
{
    std::vector< bool > fact( program.atom_count(), false );
    for( const Rule& r : program.rules() )
        if( r.is_fact() )
            fact[ r.head ] = true;
    std::vector< AtomId > free;
    for( AtomId a = 1; a < program.atom_count(); ++a )
        if( !fact[ a ] )
            free.push_back( a );
    if( free.size() > limit )
        throw OracleLimitError( "brute force over " + std::to_string( free.size() ) + " atoms exceeds the limit of " + std::to_string( limit ) );

    Compiled compiled( program );
    Interpretation interpretation( program.atom_count() );
    for( AtomId a = 1; a < program.atom_count(); ++a )
        interpretation.set( a, fact[ a ] ? Value::True : Value::False );

    std::vector< AnswerSet > result;
    const std::uint64_t total = std::uint64_t( 1 ) << free.size();
    for( std::uint64_t mask = 0; mask < total; ++mask ) {
        for( std::size_t i = 0; i < free.size(); ++i )
            interpretation.set( free[ i ], ( mask >> i ) & 1u ? Value::True : Value::False );
        bool model = true;
        for( const Rule& r : program.rules() )
            if( body_true( r, interpretation ) && interpretation[ r.head ] != Value::True ) {
                model = false;
                break;
            }
        if( !model )
            continue;
        const auto& lm = compiled.least_model( [ & ]( AtomId a ) { return interpretation[ a ] == Value::True; } );
        bool stable = true;
        for( AtomId a = 1; a < program.atom_count() && stable; ++a )
            stable = lm[ a ] == ( interpretation[ a ] == Value::True );
        if( stable )
            result.push_back( interpretation.true_atoms() );
    }
    std::sort( result.begin(), result.end() );
    return result;
}

std::vector< AnswerSet > guess_answer_sets( const GroundProgram& program, std::size_t limit )
{
    std::vector< int > index( program.atom_count(), -1 );
    std::vector< AtomId > guessed;
    for( const Rule& r : program.rules() )
        for( AtomId a : r.neg )
            if( index[ a ] < 0 ) {
                index[ a ] = static_cast< int >( guessed.size() );
                guessed.push_back( a );
            }
    if( guessed.size() > limit )
        throw OracleLimitError( "guess enumeration over " + std::to_string( guessed.size() ) + " atoms exceeds the limit of " + std::to_string( limit ) );

    Compiled compiled( program );
    std::vector< AnswerSet > result;
    const std::uint64_t total = std::uint64_t( 1 ) << guessed.size();
    for( std::uint64_t mask = 0; mask < total; ++mask ) {
        auto in_guess = [ & ]( AtomId a ) { return index[ a ] >= 0 && ( ( mask >> index[ a ] ) & 1u ); };
        const auto& lm = compiled.least_model( in_guess );
        bool ok = true;
        for( std::size_t i = 0; i < guessed.size() && ok; ++i )
            ok = lm[ guessed[ i ] ] == bool( ( mask >> i ) & 1u );
        if( !ok )
            continue;
        for( const Rule& r : program.rules() ) {
            if( r.head != kBottom )
                continue;
            bool fires = std::all_of( r.pos.begin(), r.pos.end(), [ & ]( AtomId a ) { return lm[ a ]; } )
                && std::none_of( r.neg.begin(), r.neg.end(), [ & ]( AtomId a ) { return lm[ a ]; } );
            if( fires ) {
                ok = false;
                break;
            }
        }
        if( !ok )
            continue;
        AnswerSet s;
        for( AtomId a = 1; a < program.atom_count(); ++a )
            if( lm[ a ] )
                s.push_back( a );
        result.push_back( std::move( s ) );
    }
    std::sort( result.begin(), result.end() );
    return result;
}

}  // namespace dasp
