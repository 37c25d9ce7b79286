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
#include "dasp/pigeonhole.hpp"
#include "dasp/semantics.hpp"
#include "dasp/symbol.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace dasp;

TEST_CASE( "reduct of a negative rule" )
{
    GroundProgram p;
    AtomId a = p.atom( "p" ), q = p.atom( "q" );
    p.add_rule( a, {}, { q } );
    std::vector< AtomId > t{ a };
    GroundProgram r = reduct( p, Interpretation::from_true_atoms( p.atom_count(), t ) );
    REQUIRE( r.rule_count() == 1 );
    CHECK( r.rules()[ 0 ].is_fact() );
    std::vector< AtomId > tq{ q };
    CHECK( reduct( p, Interpretation::from_true_atoms( p.atom_count(), tq ) ).rule_count() == 0 );
}

TEST_CASE( "self-supporting atom is not an answer set" )
{
    GroundProgram p;
    AtomId a = p.atom( "p" );
    p.add_rule( a, { a } );
    std::vector< AtomId > t{ a };
    CHECK_FALSE( is_answer_set( p, Interpretation::from_true_atoms( p.atom_count(), t ) ) );
    CHECK_THROWS( is_answer_set( p, Interpretation( p.atom_count() ) ) );
    CHECK( is_answer_set( p, Interpretation::from_true_atoms( p.atom_count(), {} ) ) );
}

TEST_CASE( "pigeonhole answer sets" )
{
    CHECK( brute_force_answer_sets( encode_pigeonhole( 2, 2 ) ).size() == 2 );
    CHECK( brute_force_answer_sets( encode_pigeonhole( 3, 2 ) ).empty() );
    CHECK( brute_force_answer_sets( encode_pigeonhole( 2, 1 ) ).empty() );
    CHECK( guess_answer_sets( encode_pigeonhole( 3, 3 ) ).size() == 6 );
    CHECK( guess_answer_sets( encode_pigeonhole( 2, 4 ) ).size() == 12 );
    CHECK( guess_answer_sets( encode_pigeonhole( 4, 2 ) ).empty() );
}

TEST_CASE( "oracle limit is enforced" )
{
    CHECK_THROWS_AS( brute_force_answer_sets( encode_pigeonhole( 4, 4 ) ), OracleLimitError );
}

TEST_CASE( "guess oracle agrees with brute force on random programs" )
{
    std::mt19937_64 rng( 11 );
    for( int i = 0; i < 300; ++i ) {
        GroundProgram p = testing::random_program( rng, 3 + i % 8, 4 + i % 12, i % 3 );
        CHECK( guess_answer_sets( p ) == brute_force_answer_sets( p ) );
    }
}

TEST_CASE( "sequential counter admits exactly the bounded selections" )
{
    for( int n = 1; n <= 6; ++n )
        for( int b = 0; b <= n; ++b ) {
            GroundProgram p;
            std::vector< AtomId > in;
            for( int i = 0; i < n; ++i ) {
                AtomId x = p.atom( format_symbol( "x", { std::to_string( i ) } ) );
                AtomId nx = p.atom( format_symbol( "nx", { std::to_string( i ) } ) );
                p.add_rule( x, {}, { nx } );
                p.add_rule( nx, {}, { x } );
                in.push_back( x );
            }
            add_at_most( p, in, b, { "cnt", {} } );
            std::vector< int > seen( n + 1, 0 );
            for( const AnswerSet& s : guess_answer_sets( p ) ) {
                int k = 0;
                for( AtomId x : in )
                    k += std::binary_search( s.begin(), s.end(), x );
                ++seen[ k ];
            }
            for( int k = 0; k <= n; ++k )
                CHECK( ( seen[ k ] > 0 ) == ( k <= b ) );
        }
}

TEST_CASE( "weighted counter bounds the weight sum" )
{
    GroundProgram p;
    std::vector< AtomId > in;
    std::vector< int > w{ 1, 3, 2, 1 };
    for( int i = 0; i < 4; ++i ) {
        AtomId x = p.atom( format_symbol( "x", { std::to_string( i ) } ) );
        AtomId nx = p.atom( format_symbol( "nx", { std::to_string( i ) } ) );
        p.add_rule( x, {}, { nx } );
        p.add_rule( nx, {}, { x } );
        in.push_back( x );
    }
    add_weighted_at_most( p, in, w, 3, { "load", { "c" } } );
    int models = 0;
    for( const AnswerSet& s : guess_answer_sets( p ) ) {
        int sum = 0;
        for( int i = 0; i < 4; ++i )
            sum += std::binary_search( s.begin(), s.end(), in[ i ] ) ? w[ i ] : 0;
        CHECK( sum <= 3 );
        ++models;
    }
    // subsets of {1,3,2,1} with sum <= 3: {}, 4 singles, {0,2}, {0,3}, {2,3}
    CHECK( models == 8 );
}

TEST_CASE( "exactly one over many inputs" )
{
    for( int n : { 3, 8 } ) {
        GroundProgram p;
        std::vector< AtomId > in;
        for( int i = 0; i < n; ++i ) {
            AtomId x = p.atom( format_symbol( "x", { std::to_string( i ) } ) );
            AtomId nx = p.atom( format_symbol( "nx", { std::to_string( i ) } ) );
            p.add_rule( x, {}, { nx } );
            p.add_rule( nx, {}, { x } );
            in.push_back( x );
        }
        add_exactly_one( p, in, { "one", {} } );
        CHECK( guess_answer_sets( p ).size() == std::size_t( n ) );
    }
}
