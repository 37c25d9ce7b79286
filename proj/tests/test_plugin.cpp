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
#include "dasp/plugin.hpp"
#include "dasp/solver.hpp"
#include "dasp/wire.hpp"
#include "sessions.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

using namespace dasp;
using namespace dasp::testing;
using namespace std::chrono;

namespace {

const std::string kChild = DASP_TRANSCRIPT_CHILD;
const std::string kData = DASP_TEST_DATA;
const std::string kTranscripts = kData + "/transcripts";

/* Forwards to another heuristic and logs every event and answer. */
class Tap : public Heuristic {
public:
    explicit Tap( Heuristic& inner ) : inner_( inner ) {}
    std::vector< std::string > log;

    std::vector< AtomId > on_finished_parsing( const GroundProgram& p ) override
    {
        auto frozen = inner_.on_finished_parsing( p );
        log.push_back( "frozen " + std::to_string( frozen.size() ) );
        return frozen;
    }
    void on_search( const SearchView& v ) override { log.push_back( "search" ); inner_.on_search( v ); }
    void on_inco_choice( Literal l ) override { log.push_back( "inco " + std::to_string( l.to_signed() ) ); inner_.on_inco_choice( l ); }
    void on_conflict( std::optional< Literal > l ) override
    {
        log.push_back( "conflict " + std::to_string( l ? l->to_signed() : 0 ) );
        inner_.on_conflict( l );
    }
    void on_learn( std::span< const Literal > l ) override { log.push_back( "learn " + lits( l ) ); inner_.on_learn( l ); }
    void on_restart() override { log.push_back( "restart" ); inner_.on_restart(); }
    void on_lits_true( std::span< const Literal > l ) override { log.push_back( "true " + lits( l ) ); inner_.on_lits_true( l ); }
    void on_unroll_lits( std::span< const Literal > l ) override { log.push_back( "unroll " + lits( l ) ); inner_.on_unroll_lits( l ); }
    CommandBatch on_choice_required() override
    {
        CommandBatch b = inner_.on_choice_required();
        // a choose list arrives one literal per request on the plugin side
        std::string s = "answer";
        for( const Command& c : b )
            s += " " + describe( c );
        log.push_back( s );
        return b;
    }

private:
    static std::string lits( std::span< const Literal > l )
    {
        std::string s;
        for( Literal x : l )
            s += std::to_string( x.to_signed() ) + ",";
        return s;
    }
    Heuristic& inner_;
};

std::string first_line_with( const std::string& text, const std::string& prefix )
{
    std::istringstream in( text );
    for( std::string line; std::getline( in, line ); )
        if( line.starts_with( prefix ) )
            return line.substr( prefix.size() );
    return {};
}

std::string child( const std::string& transcript ) { return kChild + " " + transcript; }

}  // namespace

TEST_CASE( "wire events round trip", "[plugin]" )
{
    CHECK( wire::atom_event( 5, "inHole(1,1)" ) == R"j({"e":"atom","id":5,"name":"inHole(1,1)"})j" );
    CHECK( wire::atom_event( 2, "q\"x" ) == R"({"e":"atom","id":2,"name":"q\"x"})" );
    std::vector< Literal > ls{ Literal::pos( 3 ), Literal::neg( 7 ) };
    CHECK( wire::lits_event( "lit_true", ls ) == R"({"e":"lit_true","lits":[3,-7]})" );
    CHECK( wire::lit_event( "conflict", std::nullopt ) == R"({"e":"conflict","lit":0})" );
    CHECK( wire::lit_event( "inco_choice", Literal::neg( 4 ) ) == R"({"e":"inco_choice","lit":-4})" );

    wire::Event e = wire::parse_event( wire::atom_event( 9, "p(a)" ) );
    CHECK( e.kind == "atom" );
    CHECK( e.id == 9 );
    CHECK( e.name == "p(a)" );
    e = wire::parse_event( wire::lits_event( "unroll_lit", ls ) );
    CHECK( e.lits == ls );
    e = wire::parse_event( wire::lit_event( "conflict", std::nullopt ) );
    CHECK( !e.lit );
    e = wire::parse_event( wire::lit_event( "conflict", Literal::neg( 2 ) ) );
    CHECK( e.lit == Literal::neg( 2 ) );
    for( auto s : { wire::search_event(), wire::parsing_done_event(), wire::restart_event(), wire::choice_required_event() } )
        CHECK_NOTHROW( wire::parse_event( s ) );
    CHECK_THROWS_AS( wire::parse_event( R"({"e":"bogus"})" ), wire::WireError );
    CHECK_THROWS_AS( wire::parse_event( R"({"id":1})" ), wire::WireError );
    CHECK_THROWS_AS( wire::parse_event( "{" ), wire::WireError );
}

TEST_CASE( "handshake responses", "[plugin]" )
{
    std::vector< AtomId > f{ 1, 4, 9 };
    CHECK( wire::frozen_response( f ) == R"({"frozen":[1,4,9]})" );
    CHECK( wire::parse_frozen( R"({"frozen":[1,4,9]})" ) == f );
    CHECK( wire::parse_frozen( R"({"frozen":[]})" ).empty() );
    CHECK_THROWS_AS( wire::parse_frozen( R"({"frozen":[0]})" ), wire::WireError );
    CHECK_THROWS_AS( wire::parse_frozen( R"({"ack":true})" ), wire::WireError );
    CHECK_NOTHROW( wire::parse_ack( R"({"ack":true})" ) );
    CHECK_NOTHROW( wire::parse_ack( R"( { "ack" : true } )" ) );
    CHECK_THROWS_AS( wire::parse_ack( R"({"ack":false})" ), wire::WireError );
    CHECK_THROWS_AS( wire::parse_ack( R"({"ack":true,"x":1})" ), wire::WireError );
    CHECK_THROWS_AS( wire::parse_ack( "5" ), wire::WireError );
}

TEST_CASE( "choice responses", "[plugin]" )
{
    using wire::parse_choice_response;

    auto r = parse_choice_response( R"({"choose":[5]})" );
    CHECK( r.queue == std::vector< Literal >{ Literal::pos( 5 ) } );
    r = parse_choice_response( R"({"choose":[5,9,12]})" );
    CHECK( r.queue == std::vector< Literal >{ Literal::pos( 5 ), Literal::pos( 9 ), Literal::pos( 12 ) } );
    CHECK( r.batch.empty() );
    r = parse_choice_response( "[5,-9]" );
    CHECK( r.queue == std::vector< Literal >{ Literal::pos( 5 ), Literal::neg( 9 ) } );
    r = parse_choice_response( "-3" );
    CHECK( r.batch == CommandBatch{ Choose{ Literal::neg( 3 ) } } );
    r = parse_choice_response( R"({"choose":-3})" );
    CHECK( r.batch == CommandBatch{ Choose{ Literal::neg( 3 ) } } );
    r = parse_choice_response( R"({"stop":true})" );
    CHECK( r.batch == CommandBatch{ AddConstraint{} } );
    r = parse_choice_response( R"({"unroll":0})" );
    CHECK( r.batch == CommandBatch{ Unroll{} } );
    r = parse_choice_response( R"({"unroll":-4})" );
    CHECK( r.batch == CommandBatch{ Unroll{ Literal::neg( 4 ) } } );
    r = parse_choice_response( R"({"add_constraint":[1,-2]})" );
    CHECK( r.batch == CommandBatch{ AddConstraint{ { Literal::pos( 1 ), Literal::neg( 2 ) } } } );

    r = parse_choice_response( R"({"fallback":{"n":3,"init":[[2,10]],"factor":[[2,4]],"sign":[[2,-1],[3,1]]}})" );
    Fallback f;
    f.choices = 3;
    f.activity[ 2 ] = 10;
    f.factor[ 2 ] = 4;
    f.sign[ 2 ] = Sign::Negative;
    f.sign[ 3 ] = Sign::Positive;
    CHECK( r.batch == CommandBatch{ f } );
    r = parse_choice_response( R"({"fallback":{}})" );
    CHECK( r.batch == CommandBatch{ Fallback{} } );

    // an array of commands is one batch; choose lists inside it expand in place
    r = parse_choice_response( R"([{"unroll":0},{"add_constraint":[-7]},{"choose":[1,2]},{"choose":3}])" );
    CHECK( r.batch == CommandBatch{ Unroll{}, AddConstraint{ { Literal::neg( 7 ) } }, Choose{ Literal::pos( 1 ) },
                                    Choose{ Literal::pos( 2 ) }, Choose{ Literal::pos( 3 ) } } );

    for( const char* bad : { "{}", "[]", R"({"choose":[]})", R"({"choose":0})", R"({"frobnicate":1})", R"("x")",
                             R"({"stop":false})", R"({"fallback":{"n":1,"speed":2}})", R"({"fallback":{"sign":[[1,0]]}})",
                             R"({"choose":1,"stop":true})", "{\"choose\":", "[1,{\"stop\":true}]" } ) {
        INFO( bad );
        CHECK_THROWS_AS( parse_choice_response( bad ), wire::WireError );
    }
}

TEST_CASE( "command responses parse back to the same batch", "[plugin]" )
{
    Fallback f;
    f.choices = -2;
    f.activity[ 1 ] = 5;
    f.sign[ 4 ] = Sign::Negative;
    std::vector< CommandBatch > batches{
        { Choose{ Literal::neg( 8 ) } },
        { Choose{ Literal::pos( 1 ) }, Choose{ Literal::pos( 2 ) } },
        { Unroll{}, AddConstraint{ { Literal::pos( 3 ) } }, f },
        { AddConstraint{} },
        { Unroll{ Literal::pos( 6 ) } },
    };
    for( const CommandBatch& b : batches ) {
        std::string line = wire::command_response( b );
        INFO( line );
        CHECK( wire::parse_choice_response( line ).batch == b );
    }
    CHECK( wire::command_response( { Choose{ Literal::neg( 8 ) } } ) == R"({"choose":-8})" );
    CHECK( wire::command_response( { AddConstraint{} } ) == R"([{"add_constraint":[]}])" );
}

TEST_CASE( "a choose list is spent one choice per request", "[plugin]" )
{
    std::vector< std::string > sent;
    std::vector< std::string > answers{ R"({"choose":[5,9,12]})", R"({"choose":[2,3]})", "7" };
    std::size_t next = 0;
    FunctionChannel ch( [ & ]( const std::string& req ) -> std::string {
        sent.push_back( req );
        if( req == wire::choice_required_event() )
            return answers.at( next++ );
        if( req == wire::parsing_done_event() )
            return wire::frozen_response( {} );
        return wire::ack();
    } );
    PluginHeuristic h( ch );
    GroundProgram p = encode_pigeonhole( 2, 2 );
    h.on_finished_parsing( p );
    CHECK( h.state() == PluginHeuristic::State::Searching );
    CHECK( h.on_choice_required() == CommandBatch{ Choose{ Literal::pos( 5 ) } } );
    CHECK( h.on_choice_required() == CommandBatch{ Choose{ Literal::pos( 9 ) } } );
    CHECK( h.on_choice_required() == CommandBatch{ Choose{ Literal::pos( 12 ) } } );
    CHECK( std::count( sent.begin(), sent.end(), wire::choice_required_event() ) == 1 );

    // a conflict drops the rest of the queue
    CHECK( h.on_choice_required() == CommandBatch{ Choose{ Literal::pos( 2 ) } } );
    h.on_conflict( std::nullopt );
    CHECK( h.on_choice_required() == CommandBatch{ Choose{ Literal::pos( 7 ) } } );
    CHECK( std::count( sent.begin(), sent.end(), wire::choice_required_event() ) == 3 );
    CHECK( sent[ sent.size() - 2 ] == R"({"e":"conflict","lit":0})" );
}

TEST_CASE( "stop answer makes pigeonhole(3,2) incoherent", "[plugin]" )
{
    GroundProgram p = encode_pigeonhole( 3, 2 );
    FunctionChannel ch( []( const std::string& req ) -> std::string {
        if( req == wire::choice_required_event() )
            return R"({"stop":true})";
        if( req == wire::parsing_done_event() )
            return wire::frozen_response( {} );
        return wire::ack();
    } );
    PluginHeuristic h( ch );
    Answer a = solve( p, &h );
    CHECK( a.outcome == Outcome::Incoherent );
    CHECK( a.stats.conflicts == 0 );
}

TEST_CASE( "in-process and wire pigeonhole heuristics agree", "[plugin]" )
{
    for( int n = 1; n <= 4; ++n )
        for( int m = 1; m <= 4; ++m ) {
            INFO( n << " pigeons, " << m << " holes" );
            GroundProgram p = encode_pigeonhole( n, m );

            PigeonholeHeuristic direct;
            Tap tap1( direct );
            Answer a1 = solve( p, &tap1 );

            PigeonholeHeuristic remote;
            WireServer server( remote, p );
            FunctionChannel ch( [ & ]( const std::string& req ) { return server.handle( req ); } );
            PluginHeuristic plugin( ch );
            Tap tap2( plugin );
            Answer a2 = solve( p, &tap2 );

            CHECK( a1.outcome == a2.outcome );
            CHECK( a1.witness == a2.witness );
            CHECK( a1.stats.decisions == a2.stats.decisions );
            CHECK( a1.stats.conflicts == a2.stats.conflicts );
            // the plugin side answers a diagonal list with single choices
            auto events = []( const std::vector< std::string >& log ) {
                std::vector< std::string > out;
                for( const auto& s : log )
                    if( !s.starts_with( "answer" ) )
                        out.push_back( s );
                return out;
            };
            CHECK( events( tap1.log ) == events( tap2.log ) );
        }
}

TEST_CASE( "golden transcripts match the in-process peers", "[plugin]" )
{
    for( const Session& s : golden_sessions( kData ) ) {
        INFO( s.file );
        std::string golden = read_file( kTranscripts + "/" + s.file );
        Recorded r = record( s );
        CHECK( header( s, r.answer ) + r.log == golden );
    }
}

TEST_CASE( "golden transcripts replay byte for byte against a mock child", "[plugin]" )
{
    for( const Session& s : golden_sessions( kData ) ) {
        INFO( s.file );
        std::string path = kTranscripts + "/" + s.file;
        std::string golden = read_file( path );
        Recorded r = replay( s, child( path ) );
        CHECK( r.log == transcript_body( golden ) );
        CHECK( outcome_line( r.answer ) == transcript_outcome( golden ) );
    }
}

TEST_CASE( "protocol violations abort with a diagnostic", "[plugin]" )
{
    GroundProgram p = encode_pigeonhole( 2, 2 );
    for( const char* name : { "malformed.txt", "bad-ack.txt", "timeout.txt" } ) {
        INFO( name );
        std::string path = kTranscripts + "/" + name;
        std::string text = read_file( path );
        std::string expect = first_line_with( text, "# expect " );
        milliseconds timeout( std::stol( first_line_with( text, "# timeout-ms " ) ) );
        REQUIRE( !expect.empty() );

        ProcessChannel ch( child( path ), timeout );
        PluginHeuristic h( ch );
        auto start = steady_clock::now();
        std::string got;
        try {
            solve( p, &h );
        } catch( const ProtocolError& e ) {
            got = e.what();
        }
        CHECK( got == expect );
        CHECK( h.state() == PluginHeuristic::State::Closed );
        CHECK( ch.exit_status().has_value() );
        // the timeout case kills the sleeping child after the grace period
        CHECK( steady_clock::now() - start < seconds( 4 ) );
        CHECK_THROWS_AS( h.on_choice_required(), ProtocolError );
    }
}

TEST_CASE( "a diverging session is caught by the mock child", "[plugin]" )
{
    Session s = std::move( golden_sessions( kData )[ 0 ] );
    std::string golden = read_file( kTranscripts + "/" + s.file );
    // the child now waits for a restart where the solver sends search
    std::string altered = golden;
    auto pos = altered.find( R"(> {"e":"search"})" );
    REQUIRE( pos != std::string::npos );
    altered.replace( pos, 16, R"(> {"e":"restart"})" );
    auto path = std::filesystem::temp_directory_path() / "dasp_altered_transcript.txt";
    std::ofstream( path ) << altered;

    ProcessChannel ch( child( path.string() ) );
    PluginHeuristic h( ch );
    std::string got;
    try {
        solve( s.program, &h );
    } catch( const ProtocolError& e ) {
        got = e.what();
    }
    CHECK( got == R"(plugin protocol violation: plugin closed its output before responding to "search")" );
    REQUIRE( ch.exit_status() );
    CHECK( WIFEXITED( *ch.exit_status() ) );
    CHECK( WEXITSTATUS( *ch.exit_status() ) == 3 );
    std::filesystem::remove( path );
}

TEST_CASE( "process channel lifecycle", "[plugin]" )
{
    SECTION( "nonexistent executable" )
    {
        CHECK_THROWS_AS( ProcessChannel( "/nonexistent/dasp-plugin --flag" ), PluginSpawnError );
        CHECK_THROWS_AS( ProcessChannel( "   " ), PluginSpawnError );
    }
    SECTION( "close after a session, twice" )
    {
        std::string path = kTranscripts + "/01-pigeonhole-2-2.txt";
        ProcessChannel ch( child( path ) );
        PluginHeuristic h( ch );
        Answer a = solve( encode_pigeonhole( 2, 2 ), &h );
        CHECK( a.outcome == Outcome::Coherent );
        h.close();
        REQUIRE( ch.exit_status() );
        CHECK( WIFEXITED( *ch.exit_status() ) );
        CHECK( WEXITSTATUS( *ch.exit_status() ) == 0 );
        ch.close();
        h.close();
        CHECK( !ch.exchange( wire::search_event() ) );
    }
    SECTION( "hung child is killed" )
    {
        ProcessChannel ch( "sleep 30" );
        auto start = steady_clock::now();
        ch.close();
        auto took = steady_clock::now() - start;
        CHECK( took >= milliseconds( 1900 ) );
        CHECK( took < seconds( 5 ) );
        REQUIRE( ch.exit_status() );
        CHECK( WIFSIGNALED( *ch.exit_status() ) );
        CHECK( WTERMSIG( *ch.exit_status() ) == SIGKILL );
    }
    SECTION( "child that exits early" )
    {
        ProcessChannel ch( "true" );
        PluginHeuristic h( ch );
        std::string got;
        try {
            h.on_finished_parsing( encode_pigeonhole( 1, 1 ) );
        } catch( const ProtocolError& e ) {
            got = e.what();
        }
        CHECK( got == R"(plugin protocol violation: plugin closed its output before responding to "atom")" );
    }
}

TEST_CASE( "default plugin timeout", "[plugin]" )
{
    const char* old = std::getenv( "DASP_PLUGIN_TIMEOUT_MS" );
    std::string saved = old ? old : "";
    setenv( "DASP_PLUGIN_TIMEOUT_MS", "1234", 1 );
    CHECK( default_plugin_timeout() == milliseconds( 1234 ) );
    setenv( "DASP_PLUGIN_TIMEOUT_MS", "soon", 1 );
    CHECK( default_plugin_timeout() == milliseconds( 10000 ) );
    unsetenv( "DASP_PLUGIN_TIMEOUT_MS" );
    CHECK( default_plugin_timeout() == milliseconds( 10000 ) );
    if( old )
        setenv( "DASP_PLUGIN_TIMEOUT_MS", saved.c_str(), 1 );
}

TEST_CASE( "frozen set from the plugin", "[plugin]" )
{
    // p is a fact, q depends on p only; both vanish unless frozen
    GroundProgram p;
    AtomId pa = p.atom( "p" ), q = p.atom( "q" ), r = p.atom( "r" ), s = p.atom( "s" );
    p.add_fact( pa );
    p.add_rule( q, { pa } );
    p.add_rule( r, {}, { s } );
    p.add_rule( s, {}, { r } );
    auto view_atoms = [ & ]( std::string frozen ) {
        FunctionChannel ch( [ & ]( const std::string& req ) -> std::string {
            if( req == wire::parsing_done_event() )
                return frozen;
            return wire::ack();
        } );
        PluginHeuristic h( ch );
        Solver s( p, {}, &h );
        return s.view().atoms;
    };
    Solver plain( p );
    CHECK( view_atoms( R"({"frozen":[]})" ) == plain.view().atoms );
    std::vector< AtomId > all;
    for( AtomId a = 1; a < p.atom_count(); ++a )
        all.push_back( a );
    CHECK( plain.view().atoms.size() < all.size() );
    CHECK( view_atoms( wire::frozen_response( all ) ) == all );
    CHECK_THROWS_WITH( view_atoms( R"({"frozen":[99]})" ),
                       "plugin protocol violation: frozen atom 99 is not part of the program" );
    CHECK_THROWS_WITH( view_atoms( R"({"ack":true})" ),
                       Catch::Matchers::StartsWith( "plugin protocol violation: bad response to \"parsing_done\"" ) );
}
