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

#include "dasp/simplify.hpp"

#include <algorithm>

namespace dasp {

namespace {

class Simplifier {
public:
    Simplifier( const GroundProgram& program, std::span< const AtomId > frozen )
        : input_( program ),
          n_( program.atom_count() ),
          fixed_( n_, Value::Undefined ),
          frozen_( n_, false ),
          occ_pos_( n_ ),
          occ_neg_( n_ ),
          occ_head_( n_ ),
          head_count_( n_, 0 )
    {
        fixed_[ kBottom ] = Value::False;
        for( AtomId a : frozen )
            if( a < n_ )
                frozen_[ a ] = true;
        for( const Rule& r : program.rules() ) {
            Rule copy = r;
            dedupe( copy.pos );
            dedupe( copy.neg );
            rules_.push_back( std::move( copy ) );
            alive_.push_back( true );
        }
    }

    SimplifyResult run()
    {
        for( std::size_t i = 0; i < rules_.size(); ++i ) {
            const Rule& r = rules_[ i ];
            if( r.is_vacuous() ) {
                alive_[ i ] = false;
                continue;
            }
            for( AtomId a : r.pos )
                occ_pos_[ a ].push_back( i );
            for( AtomId a : r.neg )
                occ_neg_[ a ].push_back( i );
            if( r.head != kBottom ) {
                occ_head_[ r.head ].push_back( i );
                ++head_count_[ r.head ];
            }
        }
        for( std::size_t i = 0; i < rules_.size(); ++i )
            if( alive_[ i ] )
                check( i );
        for( AtomId a = 1; a < n_; ++a )
            if( head_count_[ a ] == 0 )
                fix( a, Value::False );

        for( std::size_t q = 0; q < queue_.size() && !incoherent_; ++q )
            propagate( queue_[ q ] );

        SimplifyResult result;
        result.incoherent = incoherent_;
        result.fixed = fixed_;
        result.program.ensure_atom( static_cast< AtomId >( n_ - 1 ) );
        for( AtomId a = 1; a < n_; ++a )
            if( input_.has_name( a ) )
                result.program.set_name( a, input_.name( a ) );
        for( std::size_t i = 0; i < rules_.size(); ++i )
            if( alive_[ i ] )
                result.program.add_rule( rules_[ i ] );
        return result;
    }

private:
    static void dedupe( std::vector< AtomId >& v )
    {
        std::vector< AtomId > out;
        for( AtomId a : v )
            if( std::find( out.begin(), out.end(), a ) == out.end() )
                out.push_back( a );
        v = std::move( out );
    }

    static void erase( std::vector< AtomId >& v, AtomId a ) { v.erase( std::remove( v.begin(), v.end(), a ), v.end() ); }

    void fix( AtomId a, Value v )
    {
        if( a == kBottom ) {
            if( v == Value::True )
                incoherent_ = true;
            return;
        }
        if( frozen_[ a ] )
            return;
        if( fixed_[ a ] != Value::Undefined ) {
            if( fixed_[ a ] != v )
                incoherent_ = true;
            return;
        }
        fixed_[ a ] = v;
        queue_.push_back( a );
    }

    void remove( std::size_t i )
    {
        if( !alive_[ i ] )
            return;
        alive_[ i ] = false;
        AtomId h = rules_[ i ].head;
        if( h != kBottom && --head_count_[ h ] == 0 && fixed_[ h ] == Value::Undefined )
            fix( h, Value::False );
    }

    void check( std::size_t i )
    {
        const Rule& r = rules_[ i ];
        if( r.pos.empty() && r.neg.empty() ) {
            if( r.head == kBottom )
                incoherent_ = true;
            else
                fix( r.head, Value::True );
        }
        else if( r.head == kBottom && r.pos.size() == 1 && r.neg.empty() ) {
            fix( r.pos.front(), Value::False );
        }
    }

    void propagate( AtomId a )
    {
        if( fixed_[ a ] == Value::True ) {
            for( std::size_t i : occ_neg_[ a ] )
                remove( i );
            for( std::size_t i : occ_pos_[ a ] )
                if( alive_[ i ] ) {
                    erase( rules_[ i ].pos, a );
                    check( i );
                }
            for( std::size_t i : occ_head_[ a ] )
                remove( i );
        }
        else {
            for( std::size_t i : occ_pos_[ a ] )
                remove( i );
            for( std::size_t i : occ_neg_[ a ] )
                if( alive_[ i ] ) {
                    erase( rules_[ i ].neg, a );
                    check( i );
                }
            for( std::size_t i : occ_head_[ a ] )
                if( alive_[ i ] ) {
                    rules_[ i ].head = kBottom;
                    check( i );
                }
        }
    }

    const GroundProgram& input_;
    std::size_t n_;
    std::vector< Value > fixed_;
    std::vector< bool > frozen_;
    std::vector< Rule > rules_;
    std::vector< bool > alive_;
    std::vector< std::vector< std::size_t > > occ_pos_;
    std::vector< std::vector< std::size_t > > occ_neg_;
    std::vector< std::vector< std::size_t > > occ_head_;
    std::vector< int > head_count_;
    std::vector< AtomId > queue_;
    bool incoherent_ = false;
};

}  // namespace

SimplifyResult simplify( const GroundProgram& program, std::span< const AtomId > frozen )
{
    return Simplifier( program, frozen ).run();
}

}  // namespace dasp
