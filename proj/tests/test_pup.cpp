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

#include "dasp/gpf.hpp"
#include "dasp/pup.hpp"
#include "dasp/pup_heuristic.hpp"
#include "dasp/semantics.hpp"
#include "dasp/solver.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace dasp;

namespace {

std::string slurp( const std::string& path )
{
    std::ifstream in( path );
    REQUIRE( in );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PupInstance fig1() { return parse_pup( slurp( DASP_TEST_DATA "/fig1.pup" ) ); }

/* Every assignment of vertices to units, checked with the verifier. */
bool pup_solvable( const PupInstance& inst )
{
    const std::size_t nz = inst.zones.size(), n = nz + inst.sensors.size();
    std::vector< int > assign( n, 0 );
    while( true ) {
        PupSolution sol;
        sol.zone_unit.assign( assign.begin(), assign.begin() + nz );
        sol.sensor_unit.assign( assign.begin() + nz, assign.end() );
        for( auto [ s, z ] : inst.edges ) {
            int a = sol.sensor_unit[ s ], b = sol.zone_unit[ z ];
            if( a != b )
                sol.partners.insert( { std::min( a, b ), std::max( a, b ) } );
        }
        if( verify_pup( inst, sol ).empty() )
            return true;
        std::size_t i = 0;
        while( i < n && ++assign[ i ] == inst.units )
            assign[ i++ ] = 0;
        if( i == n )
            return false;
    }
}

}  // namespace

TEST_CASE( "fig1.pup instance" )
{
    PupInstance inst = fig1();
    CHECK( inst.sensors.size() == 6 );
    CHECK( inst.zones.size() == 6 );
    CHECK( inst.edges.size() == 12 );
    CHECK( inst.units == 3 );
    CHECK( inst.ucap == 2 );
    CHECK( inst.iucap == 2 );
    CHECK( parse_pup( serialize_pup( inst ) ) == inst );
}

TEST_CASE( "pupf errors" )
{
    CHECK_THROWS_AS( parse_pup( "pup 2 2 1\nz z1\ne s1 z1\n" ), ParseError );
    CHECK_THROWS_AS( parse_pup( "pup 0 2 1\n" ), ParseError );
    CHECK_THROWS_AS( parse_pup( "z z1\n" ), ParseError );
    CHECK_THROWS_AS( parse_pup( "pup 1 1 1\nz z1\nz z1\n" ), ParseError );
    PupInstance empty = parse_pup( "pup 1 1 1\n" );
    CHECK( empty.zones.empty() );
}

TEST_CASE( "fig1.pup solution verifies" )
{
    PupInstance inst = fig1();
    PupSolution sol = parse_pup_solution( inst, slurp( DASP_TEST_DATA "/fig1.sol" ) );
    CHECK( verify_pup( inst, sol ).empty() );
    CHECK( parse_pup_solution( inst, serialize_pup_solution( inst, sol ) ).zone_unit == sol.zone_unit );

    PupSolution alone = sol;
    alone.partners.clear();
    auto v = verify_pup( inst, alone );
    CHECK_FALSE( v.empty() );
    CHECK( std::any_of( v.begin(), v.end(), []( const std::string& s ) { return s.find( "sensor s2" ) != std::string::npos && s.find( "z123" ) != std::string::npos; } ) );

    PupSolution crowded = sol;
    crowded.zone_unit[ 1 ] = 0;  // z123 joins z1 and z35 on u1
    auto c = verify_pup( inst, crowded );
    CHECK( std::any_of( c.begin(), c.end(), []( const std::string& s ) { return s.find( "3 zones" ) != std::string::npos; } ) );
}

TEST_CASE( "bfs order" )
{
    PupInstance inst = fig1();
    int start = pup_start_zone( inst );
    CHECK( inst.zones[ start ] == "z123" );
    auto order = bfs_order( inst, start );
    REQUIRE( order.size() == 12 );
    std::vector< std::string > names;
    for( auto v : order )
        names.push_back( v.zone ? inst.zones[ v.index ] : inst.sensors[ v.index ] );
    CHECK( std::vector< std::string >( names.begin(), names.begin() + 7 ) == std::vector< std::string >{ "z123", "s1", "s2", "s3", "z1", "z24", "z35" } );

    PupInstance single = parse_pup( "pup 1 1 1\nz z\n" );
    CHECK( bfs_order( single, 0 ).size() == 1 );

    // permutation with nondecreasing distance, also across topologies
    for( auto inst2 : { gen_pup( PupTopology::Grid, 3, 2 ), gen_pup( PupTopology::DoubleVariant, 3 ), gen_pup( PupTopology::Triple, 4 ) } ) {
        auto o = bfs_order( inst2, pup_start_zone( inst2 ) );
        CHECK( o.size() == inst2.zones.size() + inst2.sensors.size() );
        std::set< std::pair< bool, int > > seen;
        for( auto v : o )
            seen.insert( { v.zone, v.index } );
        CHECK( seen.size() == o.size() );
    }
}

TEST_CASE( "generators" )
{
    PupInstance d = gen_pup( PupTopology::Double, 2 );
    CHECK( d.zones.size() == 4 );
    CHECK( d.sensors.size() == 3 );
    CHECK( d.units == 2 );
    PupInstance t = gen_pup( PupTopology::Triple, 1 );
    CHECK( t.zones.size() == 3 );
    CHECK( t.sensors.size() == 1 );
    CHECK( t.edges.size() == 3 );
    PupInstance g = gen_pup( PupTopology::Grid, 1, 1 );
    CHECK( g.zones.size() == 1 );
    CHECK( g.sensors.size() == 4 );
    PupInstance v = gen_pup( PupTopology::DoubleVariant, 2 );
    CHECK( v.zones.size() == 6 );
    CHECK( serialize_pup( gen_pup( PupTopology::Double, 3 ) ) == serialize_pup( gen_pup( PupTopology::Double, 3 ) ) );
    CHECK_THROWS( gen_pup( PupTopology::Double, 0 ) );
}

TEST_CASE( "encoding agrees with the verifier on small instances" )
{
    std::vector< PupInstance > cases;
    cases.push_back( parse_pup( "pup 1 1 1\nz z1\ns s1\ne s1 z1\n" ) );
    cases.push_back( parse_pup( "pup 2 1 1\nz z1\nz z2\nz z3\n" ) );
    cases.push_back( parse_pup( "pup 1 1 2\nz z1\nz z2\ns s1\ns s2\ne s1 z1\ne s2 z2\ne s1 z2\n" ) );
    cases.push_back( parse_pup( "pup 1 1 3\nz z1\nz z2\ns s1\ne s1 z1\ne s1 z2\n" ) );
    cases.push_back( parse_pup( "pup 1 1 2\nz z1\nz z2\ns s1\ns s2\ns s3\n" ) );
    cases.push_back( gen_pup( PupTopology::Triple, 1, 1, 2, 1 ) );
    cases.push_back( gen_pup( PupTopology::Double, 1 ) );
    for( const PupInstance& inst : cases ) {
        GroundProgram p = encode_pup( inst );
        auto sets = guess_answer_sets( p );
        CHECK( sets.empty() != pup_solvable( inst ) );
        for( const AnswerSet& s : sets )
            CHECK( verify_pup( inst, extract_pup( inst, p, s ) ).empty() );
    }
    // forced: everything on the only unit
    GroundProgram p = encode_pup( cases[ 0 ] );
    auto sets = guess_answer_sets( p );
    REQUIRE( sets.size() == 1 );
    PupSolution sol = extract_pup( cases[ 0 ], p, sets[ 0 ] );
    CHECK( sol.zone_unit == std::vector< int >{ 0 } );
    CHECK( sol.sensor_unit == std::vector< int >{ 0 } );
    // three zones on one unit of capacity two
    CHECK( sets.size() == 1 );
    CHECK( guess_answer_sets( encode_pup( cases[ 1 ] ) ).empty() );
}

TEST_CASE( "fig1.pup solves under every heuristic" )
{
    PupInstance inst = fig1();
    GroundProgram p = encode_pup( inst );
    for( int h = 0; h < 4; ++h ) {
        std::unique_ptr< PupHeuristic > heuristic;
        if( h > 0 )
            heuristic = std::make_unique< PupHeuristic >( inst, PupVariant( h - 1 ) );
        Answer a = solve( p, heuristic.get() );
        REQUIRE( a.outcome == Outcome::Coherent );
        CHECK( verify_pup( inst, extract_pup( inst, p, a.witness ) ).empty() );
    }
}

TEST_CASE( "pred follows neighbouring units" )
{
    PupInstance inst = fig1();
    GroundProgram p = encode_pup( inst );
    PupHeuristic h( inst, PupVariant::Pred );
    std::vector< AtomId > frozen = h.on_finished_parsing( p );
    for( AtomId a = 1; a < p.atom_count(); ++a )
        h.on_lit_true( Literal::neg( a ) ), h.on_unroll_lit( Literal::neg( a ) );
    auto first = h.on_choice_required();
    REQUIRE( first.size() == 1 );
    CHECK( std::get< Choose >( first[ 0 ] ).lit == Literal::pos( *p.find( "unit2zone(u1,z123)" ) ) );
    h.on_lit_true( Literal::pos( *p.find( "unit2zone(u1,z123)" ) ) );
    auto second = h.on_choice_required();
    CHECK( std::get< Choose >( second[ 0 ] ).lit == Literal::pos( *p.find( "unit2sensor(u1,s1)" ) ) );
}

TEST_CASE( "pup heuristics stay complete on incoherent instances" )
{
    // two units cannot hold five zones with capacity two
    PupInstance inst = parse_pup( "pup 2 1 2\nz z1\nz z2\nz z3\nz z4\nz z5\ns s1\ne s1 z1\ne s1 z5\n" );
    GroundProgram p = encode_pup( inst );
    for( int v = 0; v < 3; ++v ) {
        PupHeuristic h( inst, PupVariant( v ) );
        CHECK( solve( p, &h ).outcome == Outcome::Incoherent );
    }
}

TEST_CASE( "pup heuristics agree with the default heuristic" )
{
    std::mt19937_64 rng( 41 );
    for( int i = 0; i < 60; ++i ) {
        PupInstance inst;
        inst.ucap = 1 + rng() % 2;
        inst.iucap = 1 + rng() % 2;
        int nz = 1 + rng() % 4, ns = 1 + rng() % 4;
        for( int z = 0; z < nz; ++z )
            inst.zones.push_back( "z" + std::to_string( z ) );
        for( int s = 0; s < ns; ++s )
            inst.sensors.push_back( "s" + std::to_string( s ) );
        for( int s = 0; s < ns; ++s )
            for( int z = 0; z < nz; ++z )
                if( rng() % 3 == 0 )
                    inst.edges.push_back( { s, z } );
        inst.units = 1 + rng() % 3;
        GroundProgram p = encode_pup( inst );
        Outcome expected = solve( p ).outcome;
        for( int v = 0; v < 3; ++v ) {
            PupHeuristic h( inst, PupVariant( v ) );
            Answer a = solve( p, &h, SolverOptions{ .seed = std::uint64_t( i ), .limits = {} } );
            CHECK( a.outcome == expected );
            if( a.outcome == Outcome::Coherent )
                CHECK( verify_pup( inst, extract_pup( inst, p, a.witness ) ).empty() );
        }
    }
}

TEST_CASE( "pup heuristic view matches the trail" )
{
    // replay: the units seen by the heuristic equal those read off the final witness
    PupInstance inst = gen_pup( PupTopology::DoubleVariant, 3 );
    GroundProgram p = encode_pup( inst );
    PupHeuristic h( inst, PupVariant::QuickPup );
    Answer a = solve( p, &h );
    REQUIRE( a.outcome == Outcome::Coherent );
    PupSolution sol = extract_pup( inst, p, a.witness );
    auto seen = h.assigned_units();
    for( std::size_t i = 0; i < h.order().size(); ++i ) {
        PupVertex v = h.order()[ i ];
        CHECK( seen[ i ] == ( v.zone ? sol.zone_unit[ v.index ] : sol.sensor_unit[ v.index ] ) );
    }
}
