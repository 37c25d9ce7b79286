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

#include "dasp/cardinality.hpp"

#include "dasp/symbol.hpp"

namespace dasp {

namespace {

constexpr std::size_t kPairwiseLimit = 6;

AtomId counter_atom( GroundProgram& program, const CounterName& name, std::size_t i, int j )
{
    Symbol s{ name.predicate, name.key };
    s.args.push_back( std::to_string( i ) );
    s.args.push_back( std::to_string( j ) );
    return program.atom( format_symbol( s ) );
}

}  // namespace

void add_at_most( GroundProgram& program, std::span< const AtomId > inputs, int bound, const CounterName& name )
{
    std::vector< int > ones( inputs.size(), 1 );
    add_weighted_at_most( program, inputs, ones, bound, name );
}

void add_weighted_at_most( GroundProgram& program, std::span< const AtomId > inputs, std::span< const int > weights, int bound, const CounterName& name )
{
    if( weights.size() != inputs.size() )
        throw ProgramError( "counter needs one weight per input" );
    for( int w : weights )
        if( w <= 0 )
            throw ProgramError( "counter weights must be positive" );
    if( bound < 0 ) {
        program.add_constraint( {} );
        return;
    }
    long total = 0;
    for( int w : weights )
        total += w;
    if( total <= bound )
        return;
    if( bound == 0 ) {
        for( AtomId x : inputs )
            program.add_constraint( { x } );
        return;
    }

    const std::size_t n = inputs.size();
    // s(i,j): the inputs 1..i weigh at least j
    std::vector< std::vector< AtomId > > s( n + 1, std::vector< AtomId >( bound + 1, kBottom ) );
    for( std::size_t i = 1; i <= n; ++i ) {
        AtomId x = inputs[ i - 1 ];
        int w = weights[ i - 1 ];
        if( w > bound )
            program.add_constraint( { x } );
        else if( i > 1 )
            program.add_constraint( { s[ i - 1 ][ bound - w + 1 ], x } );
        if( i == n )
            break;
        for( int j = 1; j <= bound; ++j ) {
            s[ i ][ j ] = counter_atom( program, name, i, j );
            if( i > 1 )
                program.add_rule( s[ i ][ j ], { s[ i - 1 ][ j ] } );
            if( j <= w )
                program.add_rule( s[ i ][ j ], { x } );
            else if( i > 1 )
                program.add_rule( s[ i ][ j ], { s[ i - 1 ][ j - w ], x } );
        }
    }
}

void add_at_least_one( GroundProgram& program, std::span< const AtomId > inputs )
{
    program.add_constraint( {}, std::vector< AtomId >( inputs.begin(), inputs.end() ) );
}

void add_exactly_one( GroundProgram& program, std::span< const AtomId > inputs, const CounterName& name )
{
    add_at_least_one( program, inputs );
    if( inputs.size() <= kPairwiseLimit ) {
        for( std::size_t i = 0; i < inputs.size(); ++i )
            for( std::size_t j = i + 1; j < inputs.size(); ++j )
                program.add_constraint( { inputs[ i ], inputs[ j ] } );
    }
    else {
        add_at_most( program, inputs, 1, name );
    }
}

}  // namespace dasp
