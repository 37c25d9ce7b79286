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

#include "dasp/pigeonhole_heuristic.hpp"

#include "dasp/symbol.hpp"

namespace dasp {

std::vector< AtomId > PigeonholeHeuristic::on_finished_parsing( const GroundProgram& program )
{
    std::vector< AtomId > frozen;
    std::map< std::string, AtomId > in_hole;
    for( AtomId a = 1; a < program.atom_count(); ++a ) {
        frozen.push_back( a );
        if( !program.has_name( a ) )
            continue;
        Symbol s = parse_symbol( program.name( a ) );
        if( s.predicate == "pigeon" && s.args.size() == 1 )
            pigeons_[ s.args[ 0 ] ] = a;
        else if( s.predicate == "hole" && s.args.size() == 1 )
            holes_[ s.args[ 0 ] ] = a;
    }
    for( std::size_t i = 1; i <= pigeons_.size(); ++i ) {
        auto id = std::to_string( i );
        if( auto a = program.find( format_symbol( "inHole", { id, id } ) ) )
            diagonal_.push_back( *a );
    }
    values_.assign( program.atom_count(), Value::Undefined );
    return frozen;
}

void PigeonholeHeuristic::on_lit_true( Literal lit )
{
    if( lit.atom() < values_.size() )
        values_[ lit.atom() ] = lit.negative() ? Value::False : Value::True;
}

void PigeonholeHeuristic::on_unroll_lit( Literal lit )
{
    if( lit.atom() < values_.size() )
        values_[ lit.atom() ] = Value::Undefined;
}

CommandBatch PigeonholeHeuristic::on_choice_required()
{
    if( pigeons_.size() > holes_.size() )
        return { AddConstraint{} };
    CommandBatch batch;
    for( AtomId a : diagonal_ )
        if( values_[ a ] != Value::True )
            batch.push_back( Choose{ Literal::pos( a ) } );
    if( batch.empty() )
        batch.push_back( Fallback{} );
    return batch;
}

}  // namespace dasp
