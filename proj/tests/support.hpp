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

#pragma once

#include "dasp/heuristic.hpp"
#include "dasp/program.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace dasp::testing {

/*
 * Random normal program over `atoms` named atoms. Rule bodies mix positive
 * and negative literals so that both loops and choices show up.
 */
inline GroundProgram random_program( std::mt19937_64& rng, int atoms, int rules, int constraints = 0 )
{
    GroundProgram p;
    for( int i = 0; i < atoms; ++i )
        p.add_atom( "x" + std::to_string( i ) );
    std::uniform_int_distribution< AtomId > pick( 1, atoms );
    std::uniform_int_distribution< int > len( 0, 3 );
    std::bernoulli_distribution coin( 0.5 );
    auto body = [&]( Rule& r ) {
        int n = len( rng );
        for( int k = 0; k < n; ++k ) {
            AtomId a = pick( rng );
            if( coin( rng ) )
                r.pos.push_back( a );
            else
                r.neg.push_back( a );
        }
    };
    for( int i = 0; i < rules; ++i ) {
        Rule r;
        r.head = pick( rng );
        body( r );
        p.add_rule( r );
    }
    for( int i = 0; i < constraints; ++i ) {
        Rule r;
        body( r );
        if( r.pos.empty() && r.neg.empty() )
            r.neg.push_back( pick( rng ) );
        p.add_rule( r );
    }
    return p;
}

/* Records every event as a short string; choices come from a callback. */
class RecordingHeuristic : public Heuristic {
public:
    std::function< CommandBatch() > next = [] { return CommandBatch{ Fallback{} }; };
    std::vector< AtomId > frozen;
    std::vector< std::string > events;
    /* Per-atom value as seen through LitTrue and UnrollLit. */
    std::vector< Value > values;
    int balance_errors = 0;

    std::vector< AtomId > on_finished_parsing( const GroundProgram& program ) override
    {
        values.assign( program.atom_count(), Value::Undefined );
        return frozen;
    }
    void on_search( const SearchView& ) override { events.push_back( "search" ); }
    void on_inco_choice( Literal l ) override { events.push_back( "inco " + std::to_string( l.to_signed() ) ); }
    void on_conflict( std::optional< Literal > l ) override
    {
        events.push_back( "conflict " + std::to_string( l ? l->to_signed() : 0 ) );
    }
    void on_learn( std::span< const Literal > ) override { events.push_back( "learn" ); }
    void on_restart() override { events.push_back( "restart" ); }
    void on_lit_true( Literal l ) override
    {
        if( values[ l.atom() ] != Value::Undefined )
            ++balance_errors;
        values[ l.atom() ] = l.negative() ? Value::False : Value::True;
    }
    void on_unroll_lit( Literal l ) override
    {
        Value expect = l.negative() ? Value::False : Value::True;
        if( values[ l.atom() ] != expect )
            ++balance_errors;
        values[ l.atom() ] = Value::Undefined;
    }
    CommandBatch on_choice_required() override
    {
        events.push_back( "choice" );
        return next();
    }
    std::size_t count( const std::string& prefix ) const
    {
        return std::count_if( events.begin(), events.end(), [&]( const std::string& e ) { return e.rfind( prefix, 0 ) == 0; } );
    }
};

}  // namespace dasp::testing
