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

/*
 * The recorded plugin sessions: program, solver options and the peer that
 * answered the solver. Shared by the transcript generator, the unit tests
 * and the acceptance suite.
 */

#include "dasp/ccp.hpp"
#include "dasp/ccp_heuristic.hpp"
#include "dasp/pigeonhole.hpp"
#include "dasp/pigeonhole_heuristic.hpp"
#include "dasp/plugin.hpp"
#include "dasp/pup.hpp"
#include "dasp/pup_heuristic.hpp"
#include "dasp/solver.hpp"
#include "dasp/wire.hpp"
#include "support.hpp"

#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dasp::testing {

inline std::string read_file( const std::string& path )
{
    std::ifstream in( path );
    if( !in )
        throw std::runtime_error( "cannot open " + path );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/* Answers every request of one session. */
class Peer {
public:
    virtual ~Peer() = default;
    virtual std::string answer( const std::string& request ) = 0;
};

/* In-process heuristic behind the wire. */
class HeuristicPeer : public Peer {
public:
    HeuristicPeer( std::unique_ptr< Heuristic > h, const GroundProgram& program )
        : heuristic_( std::move( h ) ), server_( *heuristic_, program ) {}
    std::string answer( const std::string& request ) override { return server_.handle( request ); }

private:
    std::unique_ptr< Heuristic > heuristic_;
    WireServer server_;
};

/*
 * Hand-written responder exercising the short answer forms: bare literals,
 * bare lists, choose lists and bounded fallbacks. It picks undefined atoms
 * in id order, negative first, tracking values from the notifications.
 */
class ScriptedPeer : public Peer {
public:
    std::string answer( const std::string& request ) override
    {
        wire::Event ev = wire::parse_event( request );
        if( ev.kind == "atom" ) {
            if( values_.size() <= ev.id )
                values_.resize( ev.id + 1, Value::Undefined );
            return wire::ack();
        }
        if( ev.kind == "parsing_done" )
            return wire::frozen_response( {} );
        if( ev.kind == "lit_true" )
            for( Literal l : ev.lits )
                set( l.atom(), l.negative() ? Value::False : Value::True );
        if( ev.kind == "unroll_lit" )
            for( Literal l : ev.lits )
                set( l.atom(), Value::Undefined );
        if( ev.kind != "choice_required" )
            return wire::ack();

        std::vector< std::int64_t > open;
        for( AtomId a = 1; a < values_.size() && open.size() < 3; ++a )
            if( values_[ a ] == Value::Undefined )
                open.push_back( ( a + requests_ ) % 2 ? -std::int64_t( a ) : std::int64_t( a ) );
        std::size_t n = requests_++;
        if( open.empty() || n % 5 == 4 )
            return R"({"fallback":{"n":2}})";
        std::string list;
        for( std::size_t i = 0; i < open.size(); ++i )
            list += ( i ? "," : "" ) + std::to_string( open[ i ] );
        switch( n % 3 ) {
        case 0: return std::to_string( open[ 0 ] );
        case 1: return "[" + list + "]";
        default: return R"({"choose":[)" + list + "]}";
        }
    }

private:
    void set( AtomId a, Value v )
    {
        if( values_.size() <= a )
            values_.resize( a + 1, Value::Undefined );
        values_[ a ] = v;
    }

    std::vector< Value > values_;
    std::size_t requests_ = 0;
};

struct Session {
    std::string file;
    std::string program_line;
    GroundProgram program;
    SolverOptions options;
    std::function< std::unique_ptr< Peer >( const GroundProgram& ) > peer;
};

inline GroundProgram session5_program()
{
    std::mt19937_64 rng( 158 );
    return random_program( rng, 12, 24, 1 );
}

/* data_dir holds fig1.pup and fig2.ccp. */
inline std::vector< Session > golden_sessions( const std::string& data_dir )
{
    std::vector< Session > out;
    auto heuristic = []( auto make ) {
        return [ make ]( const GroundProgram& p ) -> std::unique_ptr< Peer > {
            return std::make_unique< HeuristicPeer >( make(), p );
        };
    };
    out.push_back( { "01-pigeonhole-2-2.txt", "pigeonhole 2 2", encode_pigeonhole( 2, 2 ), {},
                     heuristic( [] { return std::make_unique< PigeonholeHeuristic >(); } ) } );
    out.push_back( { "02-pigeonhole-3-2-stop.txt", "pigeonhole 3 2", encode_pigeonhole( 3, 2 ), {},
                     heuristic( [] { return std::make_unique< PigeonholeHeuristic >(); } ) } );

    PupInstance pup = parse_pup( read_file( data_dir + "/fig1.pup" ) );
    out.push_back( { "03-pup-fig1-quickpup.txt", "pup fig1.pup quickpup", encode_pup( pup ), {},
                     heuristic( [ pup ] { return std::make_unique< PupHeuristic >( pup, PupVariant::QuickPup ); } ) } );

    CcpInstance ccp = parse_ccp( read_file( data_dir + "/fig2.ccp" ) );
    CcpBudget budget{ BudgetMode::Choices, 0, 4 };
    out.push_back( { "04-ccp-fig2-a2afo.txt", "ccp fig2.ccp a2afo choices 4", encode_ccp( ccp ), {},
                     heuristic( [ ccp, budget ] { return std::make_unique< CcpHeuristic >( ccp, CcpVariant::A2AFO, budget ); } ) } );

    SolverOptions scripted;
    scripted.seed = 7;
    out.push_back( { "05-random-scripted.txt", "random 158 12 24 1", session5_program(), scripted,
                     []( const GroundProgram& ) -> std::unique_ptr< Peer > { return std::make_unique< ScriptedPeer >(); } } );
    return out;
}

inline std::string outcome_line( const Answer& a )
{
    return "# outcome " + to_string( a.outcome ) + " decisions " + std::to_string( a.stats.decisions ) +
           " conflicts " + std::to_string( a.stats.conflicts ) + " restarts " + std::to_string( a.stats.restarts );
}

inline std::string header( const Session& s, const Answer& a )
{
    return "# program " + s.program_line + "\n# seed " + std::to_string( s.options.seed ) + "\n" + outcome_line( a ) + "\n";
}

/* Transcript body: the file without its comment lines. */
inline std::string transcript_body( const std::string& text )
{
    std::istringstream in( text );
    std::string out;
    for( std::string line; std::getline( in, line ); )
        if( !line.starts_with( "#" ) )
            out += line + "\n";
    return out;
}

inline std::string transcript_outcome( const std::string& text )
{
    std::istringstream in( text );
    for( std::string line; std::getline( in, line ); )
        if( line.starts_with( "# outcome " ) )
            return line;
    return {};
}

struct Recorded {
    Answer answer;
    std::string log;
};

/* Runs a session against an in-process peer and records the exchange. */
inline Recorded record( const Session& s )
{
    std::unique_ptr< Peer > peer = s.peer( s.program );
    FunctionChannel inner( [ & ]( const std::string& req ) { return peer->answer( req ); } );
    std::ostringstream log;
    RecordingChannel channel( inner, log );
    PluginHeuristic plugin( channel );
    Answer a = solve( s.program, &plugin, s.options );
    plugin.close();
    return { a, log.str() };
}

/* Runs a session against an external command and records the exchange. */
inline Recorded replay( const Session& s, const std::string& command, std::chrono::milliseconds timeout = std::chrono::milliseconds( 10000 ) )
{
    ProcessChannel child( command, timeout );
    std::ostringstream log;
    RecordingChannel channel( child, log );
    PluginHeuristic plugin( channel );
    Answer a = solve( s.program, &plugin, s.options );
    plugin.close();
    return { a, log.str() };
}

}  // namespace dasp::testing
