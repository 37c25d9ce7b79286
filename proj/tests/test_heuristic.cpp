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

#include "dasp/pigeonhole.hpp"
#include "dasp/pigeonhole_heuristic.hpp"
#include "dasp/semantics.hpp"
#include "dasp/solver.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace dasp;
using dasp::testing::RecordingHeuristic;

namespace {

/* n independent guesses g1..gn with complements; returns the gi atoms. */
std::vector< AtomId > guesses( GroundProgram& p, int n )
{
    std::vector< AtomId > out;
    for( int i = 1; i <= n; ++i ) {
        AtomId a = p.atom( "g" + std::to_string( i ) ), na = p.atom( "ng" + std::to_string( i ) );
        p.add_rule( a, {}, { na } );
        p.add_rule( na, {}, { a } );
        out.push_back( a );
    }
    return out;
}

SolverOptions seeded( std::uint64_t seed )
{
    return SolverOptions{ .seed = seed, .limits = {} };
}

/* Picks a random open atom with a random sign, or falls back when all are set. */
struct RandomChooser {
    std::mt19937_64 rng;
    const std::vector< Value >* values;
    CommandBatch operator()()
    {
        std::vector< AtomId > open;
        for( AtomId a = 1; a < values->size(); ++a )
            if( ( *values )[ a ] == Value::Undefined )
                open.push_back( a );
        if( open.empty() )
            return { Fallback{ 1, {}, {}, {} } };
        return { Choose{ Literal( open[ rng() % open.size() ], rng() % 2 ) } };
    }
};

}  // namespace

TEST_CASE( "events balance and mirror the final assignment" )
{
    std::mt19937_64 rng( 23 );
    for( int i = 0; i < 200; ++i ) {
        GroundProgram p = testing::random_program( rng, 4 + i % 9, 6 + i % 18, i % 4 );
        RecordingHeuristic h;
        for( AtomId a = 1; a < p.atom_count(); a += 3 )
            h.frozen.push_back( a );
        h.next = RandomChooser{ std::mt19937_64( i ), &h.values };
        Answer ans = solve( p, &h, seeded( i ) );
        CHECK( h.balance_errors == 0 );
        CHECK( h.count( "search" ) == 1 );
        std::uint64_t final_conflict = ans.outcome == Outcome::Incoherent && ans.stats.conflicts > 0 ? 1 : 0;
        CHECK( h.count( "learn" ) == ans.stats.conflicts - final_conflict );
        bool coherent = !guess_answer_sets( p ).empty();
        CHECK( ( ans.outcome == Outcome::Coherent ) == coherent );
        if( ans.outcome == Outcome::Coherent ) {
            std::vector< AtomId > seen;
            for( AtomId a = 1; a < p.atom_count(); ++a ) {
                CHECK( h.values[ a ] != Value::Undefined );
                if( h.values[ a ] == Value::True )
                    seen.push_back( a );
            }
            CHECK( seen == ans.witness );
        }
    }
}

TEST_CASE( "fallback for k choices skips the heuristic k times" )
{
    GroundProgram p;
    guesses( p, 9 );
    RecordingHeuristic h;
    h.next = [] { return CommandBatch{ Fallback{ 3, {}, {}, {} } }; };
    Answer a = solve( p, &h );
    CHECK( a.outcome == Outcome::Coherent );
    CHECK( a.stats.decisions == 9 );
    CHECK( h.count( "choice" ) == 3 );
}

TEST_CASE( "permanent fallback matches the default heuristic" )
{
    std::mt19937_64 rng( 29 );
    for( int i = 0; i < 60; ++i ) {
        GroundProgram p = i % 3 == 0 ? encode_pigeonhole( 4 + i % 3, 4 ) : testing::random_program( rng, 10, 22, 3 );
        RecordingHeuristic h;
        std::int64_t n = i % 2 ? 0 : -5;
        h.next = [ n ] { return CommandBatch{ Fallback{ n, {}, {}, {} } }; };
        Answer with = solve( p, &h, seeded( i ) );
        Answer without = solve( p, nullptr, seeded( i ) );
        CHECK( with.outcome == without.outcome );
        CHECK( with.witness == without.witness );
        CHECK( with.stats.decisions == without.stats.decisions );
        CHECK( with.stats.conflicts == without.stats.conflicts );
        CHECK( h.count( "choice" ) == ( with.stats.decisions > 0 ? 1u : 0u ) );
    }
}

TEST_CASE( "fallback activity and sign steer the first default choice" )
{
    GroundProgram p;
    auto g = guesses( p, 6 );
    AtomId a = g[ 4 ];
    RecordingHeuristic h;
    h.next = [ a ] { return CommandBatch{ Fallback{ 0, { { a, 10 } }, {}, { { a, Sign::Positive } } } }; };
    Solver s( p, SolverOptions{ .seed = 1, .limits = SolveLimits{ .timeout_seconds = {}, .max_conflicts = {}, .max_decisions = 1 } }, &h );
    s.solve();
    CHECK( s.value( Literal::pos( a ) ) == Value::True );
    CHECK( s.level( a ) == 1 );
}

TEST_CASE( "fallback rejects negative activities" )
{
    GroundProgram p;
    auto g = guesses( p, 2 );
    RecordingHeuristic h;
    h.next = [ & ] { return CommandBatch{ Fallback{ 0, { { g[ 0 ], -1 } }, {}, {} } }; };
    CHECK_THROWS_AS( solve( p, &h ), ProtocolError );
}

TEST_CASE( "unroll backjumps below the literal's level" )
{
    GroundProgram p;
    auto g = guesses( p, 6 );
    RecordingHeuristic h;
    Solver* solver = nullptr;
    int step = 0;
    int level_after = -1;
    h.next = [ & ]() -> CommandBatch {
        ++step;
        if( step <= 5 )
            return { Choose{ Literal::pos( g[ step - 1 ] ) } };
        if( step == 6 ) {
            CHECK( solver->decision_level() == 5 );
            return { Unroll{ Literal::pos( g[ 2 ] ) } };
        }
        if( step == 7 ) {
            level_after = solver->decision_level();
            CHECK( solver->value( Literal::pos( g[ 2 ] ) ) == Value::Undefined );
            CHECK( solver->value( Literal::pos( g[ 1 ] ) ) == Value::True );
            return { Unroll{ Literal::pos( g[ 4 ] ) } };  // already undefined: no-op
        }
        if( step == 8 ) {
            CHECK( solver->decision_level() == level_after );
            return { Unroll{} };
        }
        if( step == 9 )
            CHECK( solver->decision_level() == 0 );
        return { Fallback{} };
    };
    Solver s( p, seeded( 1 ), &h );
    solver = &s;
    Answer a = s.solve();
    CHECK( a.outcome == Outcome::Coherent );
    CHECK( level_after == 2 );
    CHECK( h.count( "restart" ) == 1 );
    CHECK( a.stats.restarts == 1 );
}

TEST_CASE( "unroll of a level-0 literal is a protocol error" )
{
    GroundProgram p;
    auto g = guesses( p, 2 );
    AtomId f = p.atom( "f" );
    p.add_fact( f );
    RecordingHeuristic h;
    h.next = [ & ] { return CommandBatch{ Unroll{ Literal::pos( f ) } }; };
    CHECK_THROWS_AS( solve( p, &h ), ProtocolError );
    h.next = [ & ] { return CommandBatch{ Choose{ Literal::pos( 99 ) } }; };
    CHECK_THROWS_AS( solve( p, &h ), ProtocolError );
}

TEST_CASE( "choose on assigned literals" )
{
    GroundProgram p;
    auto g = guesses( p, 3 );
    RecordingHeuristic h;
    Solver* solver = nullptr;
    int step = 0;
    h.next = [ & ]() -> CommandBatch {
        ++step;
        if( step == 1 )
            return { Choose{ Literal::pos( g[ 0 ] ) } };
        if( step == 2 )
            return { Choose{ Literal::pos( g[ 0 ] ) } };  // true already
        if( step == 3 ) {
            CHECK( solver->decision_level() == 1 );
            return { Choose{ Literal::neg( g[ 0 ] ) } };  // false
        }
        return { Fallback{} };
    };
    Solver s( p, seeded( 1 ), &h );
    solver = &s;
    s.solve();
    CHECK( h.count( "inco " + std::to_string( -std::int64_t( g[ 0 ] ) ) ) == 1 );
    CHECK( step == 4 );
}

TEST_CASE( "add constraint backjumps to the falsifying level" )
{
    GroundProgram p;
    auto g = guesses( p, 8 );
    RecordingHeuristic h;
    Solver* solver = nullptr;
    int step = 0;
    h.next = [ & ]() -> CommandBatch {
        ++step;
        if( step <= 6 )
            return { Choose{ Literal::pos( g[ step - 1 ] ) } };
        if( step == 7 ) {
            std::vector< Literal > body;
            for( int i = 0; i < 4; ++i )
                body.push_back( Literal::pos( g[ i ] ) );
            return { AddConstraint{ body } };
        }
        if( step == 8 ) {
            CHECK( solver->decision_level() == 3 );
            CHECK( solver->value( Literal::pos( g[ 3 ] ) ) == Value::False );
            CHECK( solver->level( g[ 3 ] ) == 3 );
        }
        return { Fallback{} };
    };
    Solver s( p, seeded( 1 ), &h );
    solver = &s;
    Answer a = s.solve();
    CHECK( step == 8 );
    REQUIRE( a.outcome == Outcome::Coherent );
    for( int i = 0; i < 3; ++i )
        CHECK( std::binary_search( a.witness.begin(), a.witness.end(), g[ i ] ) );
    CHECK_FALSE( std::binary_search( a.witness.begin(), a.witness.end(), g[ 3 ] ) );
}

TEST_CASE( "empty constraint stops the search" )
{
    GroundProgram p;
    guesses( p, 3 );
    RecordingHeuristic h;
    h.next = [] { return CommandBatch{ AddConstraint{} }; };
    Answer a = solve( p, &h );
    CHECK( a.outcome == Outcome::Incoherent );
    CHECK( a.stats.conflicts == 0 );
}

TEST_CASE( "conflict reports the latest decision left on the trail" )
{
    // g1 and g2 together leave no value for g3; g1 survives the backjump
    GroundProgram p;
    auto g = guesses( p, 3 );
    p.add_constraint( { g[ 0 ], g[ 1 ], g[ 2 ] } );
    p.add_constraint( { g[ 0 ], g[ 1 ] }, { g[ 2 ] } );
    RecordingHeuristic h;
    int step = 0;
    h.next = [ & ]() -> CommandBatch {
        ++step;
        if( step == 1 )
            return { Choose{ Literal::pos( g[ 0 ] ) }, Choose{ Literal::pos( g[ 1 ] ) } };
        return { Fallback{} };
    };
    Answer a = solve( p, &h );
    CHECK( a.outcome == Outcome::Coherent );
    REQUIRE( h.count( "conflict" ) == 1 );
    auto it = std::find_if( h.events.begin(), h.events.end(), []( const std::string& e ) { return e.rfind( "conflict", 0 ) == 0; } );
    CHECK( *it == "conflict " + std::to_string( g[ 0 ] ) );
    CHECK( *( it + 1 ) == "learn" );
}

TEST_CASE( "runs are deterministic per seed" )
{
    std::mt19937_64 rng( 31 );
    for( int i = 0; i < 30; ++i ) {
        GroundProgram p = testing::random_program( rng, 12, 24, 4 );
        RecordingHeuristic h1, h2;
        h1.next = RandomChooser{ std::mt19937_64( i ), &h1.values };
        h2.next = RandomChooser{ std::mt19937_64( i ), &h2.values };
        Answer a = solve( p, &h1, seeded( i ) );
        Answer b = solve( p, &h2, seeded( i ) );
        CHECK( h1.events == h2.events );
        CHECK( a.stats.decisions == b.stats.decisions );
        CHECK( a.stats.conflicts == b.stats.conflicts );
        CHECK( a.witness == b.witness );
    }
}

TEST_CASE( "pigeonhole heuristic" )
{
    for( int n : { 5, 10 } ) {
        PigeonholeHeuristic h;
        Answer a = solve( encode_pigeonhole( n, n ), &h );
        CHECK( a.outcome == Outcome::Coherent );
        // the last pigeon is forced into its hole by propagation
        CHECK( a.stats.decisions == std::uint64_t( n - 1 ) );
        CHECK( a.stats.conflicts == 0 );
        PigeonholeHeuristic stop;
        Answer b = solve( encode_pigeonhole( n + 1, n ), &stop );
        CHECK( b.outcome == Outcome::Incoherent );
        CHECK( b.stats.conflicts == 0 );
    }
}
