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

#include "dasp/bench.hpp"

#include "dasp/gpf.hpp"
#include "dasp/pigeonhole_heuristic.hpp"
#include "dasp/pup_heuristic.hpp"
#include "dasp/semantics.hpp"
#include "text.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace dasp {

Domain parse_domain( std::string_view name )
{
    if( name == "pup" )
        return Domain::Pup;
    if( name == "ccp" )
        return Domain::Ccp;
    if( name == "gpf" )
        return Domain::Gpf;
    throw UsageError( "unknown domain '" + std::string( name ) + "' (pup, ccp or gpf)" );
}

std::string to_string( Domain domain )
{
    switch( domain ) {
        case Domain::Pup: return "pup";
        case Domain::Ccp: return "ccp";
        case Domain::Gpf: return "gpf";
    }
    return "gpf";
}

Domain domain_for_path( const std::string& path )
{
    auto ext = std::filesystem::path( path ).extension().string();
    if( ext == ".pup" )
        return Domain::Pup;
    if( ext == ".ccp" )
        return Domain::Ccp;
    return Domain::Gpf;
}

std::string read_text_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if( !in )
        throw std::runtime_error( "cannot read " + path );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LoadedInstance load_instance( const std::string& path, Domain domain )
{
    LoadedInstance li;
    li.domain = domain;
    std::string text = read_text_file( path );
    try {
        switch( domain ) {
            case Domain::Pup:
                li.pup = parse_pup( text );
                li.program = encode_pup( *li.pup );
                break;
            case Domain::Ccp:
                li.ccp = parse_ccp( text );
                li.program = encode_ccp( *li.ccp );
                break;
            case Domain::Gpf:
                li.program = parse_program( text );
                break;
        }
    } catch( const ParseError& e ) {
        throw std::runtime_error( path + ": " + e.what() );
    }
    return li;
}

BudgetMode parse_budget_mode( std::string_view name )
{
    if( name == "wall" )
        return BudgetMode::Wall;
    if( name == "choices" )
        return BudgetMode::Choices;
    throw UsageError( "unknown budget mode '" + std::string( name ) + "' (wall or choices)" );
}

void HeuristicHandle::close()
{
    if( auto p = dynamic_cast< PluginHeuristic* >( heuristic_.get() ) )
        p->close();
    else if( channel_ )
        channel_->close();
}

HeuristicHandle make_heuristic( const LoadedInstance& instance, const RunSettings& settings )
{
    const std::string& name = settings.heuristic;
    HeuristicHandle h;
    if( name == "default" )
        return h;
    if( name.starts_with( "plugin:" ) ) {
        std::string command = name.substr( 7 );
        if( text::split_words( command ).empty() )
            throw UsageError( "plugin: needs a command" );
        h.channel_ = std::make_unique< ProcessChannel >( command );
        h.heuristic_ = std::make_unique< PluginHeuristic >( *h.channel_ );
        return h;
    }
    auto mismatch = [ & ]( const char* wants ) {
        return UsageError( "heuristic '" + name + "' needs --domain " + wants + ", not " + to_string( instance.domain ) );
    };
    if( name == "pigeonhole" ) {
        if( instance.domain != Domain::Gpf )
            throw mismatch( "gpf" );
        h.heuristic_ = std::make_unique< PigeonholeHeuristic >();
        return h;
    }
    if( name == "quickpup" || name == "quickpup-star" || name == "pred" ) {
        if( instance.domain != Domain::Pup )
            throw mismatch( "pup" );
        h.heuristic_ = std::make_unique< PupHeuristic >( *instance.pup, parse_pup_variant( name ) );
        return h;
    }
    if( name == "a1a2" || name == "a2f" || name == "a2fo" || name == "a2afo" ) {
        if( instance.domain != Domain::Ccp )
            throw mismatch( "ccp" );
        CcpBudget budget;
        budget.mode = settings.budget_mode;
        if( settings.budget ) {
            if( *settings.budget < 0 )
                throw UsageError( "the budget must not be negative" );
            budget.seconds = *settings.budget;
            budget.choices = static_cast< std::int64_t >( *settings.budget );
        }
        h.heuristic_ = std::make_unique< CcpHeuristic >( *instance.ccp, parse_ccp_variant( name ), budget );
        return h;
    }
    throw UsageError( "unknown heuristic '" + name + "'" );
}

std::vector< std::string > verify_witness( const LoadedInstance& instance, const Answer& answer )
{
    if( answer.outcome != Outcome::Coherent )
        return {};
    switch( instance.domain ) {
        case Domain::Pup:
            return verify_pup( *instance.pup, extract_pup( *instance.pup, instance.program, answer.witness ) );
        case Domain::Ccp:
            return verify_ccp( *instance.ccp, extract_ccp( *instance.ccp, instance.program, answer.witness ) );
        case Domain::Gpf:
            if( !is_answer_set( instance.program, Interpretation::from_true_atoms( instance.program.atom_count(), answer.witness ) ) )
                return { "the witness is not an answer set" };
            return {};
    }
    return {};
}

std::string csv_row( const RunRecord& r )
{
    char wall[ 32 ];
    std::snprintf( wall, sizeof wall, "%.3f", r.wall_ms );
    auto field = []( const std::string& s ) {
        if( s.find_first_of( ",\"\n" ) == std::string::npos )
            return s;
        std::string q = "\"";
        for( char c : s )
            q += c == '"' ? std::string( "\"\"" ) : std::string( 1, c );
        return q + "\"";
    };
    std::ostringstream out;
    out << field( r.instance ) << ',' << field( r.heuristic ) << ',' << r.seed << ',' << r.outcome << ','
        << r.decisions << ',' << r.conflicts << ',' << r.restarts << ',' << wall;
    return out.str();
}

std::vector< MatrixEntry > parse_matrix( std::string_view input, const std::string& base_dir )
{
    std::vector< MatrixEntry > out;
    text::for_each_line( input, [ & ]( std::size_t line, const std::vector< std::string >& all ) {
        std::vector< std::string > words;
        for( const auto& w : all ) {
            if( w[ 0 ] == '#' )
                break;
            words.push_back( w );
        }
        auto fail = [ & ]( const std::string& what ) { return ParseError( line, what ); };
        if( words.size() != 5 )
            throw fail( "expected <instance> <domain> <heuristic> <seed> <timeout>" );
        MatrixEntry e;
        e.instance = words[ 0 ];
        std::filesystem::path p( e.instance );
        e.path = p.is_absolute() ? e.instance : ( std::filesystem::path( base_dir ) / p ).string();
        try {
            e.domain = parse_domain( words[ 1 ] );
        } catch( const UsageError& u ) {
            throw fail( u.what() );
        }
        e.heuristic = words[ 2 ];
        int seed = text::parse_int( line, words[ 3 ], "the seed" );
        if( seed < 0 )
            throw fail( "the seed must not be negative" );
        e.seed = static_cast< std::uint64_t >( seed );
        try {
            std::size_t used = 0;
            e.timeout = std::stod( words[ 4 ], &used );
            if( used != words[ 4 ].size() || e.timeout < 0 )
                throw std::invalid_argument( words[ 4 ] );
        } catch( const std::exception& ) {
            throw fail( "bad timeout '" + words[ 4 ] + "'" );
        }
        out.push_back( std::move( e ) );
    } );
    return out;
}

RunRecord run_entry( const MatrixEntry& entry, BudgetMode budget_mode )
{
    RunRecord r;
    r.instance = entry.instance;
    r.heuristic = entry.heuristic;
    r.seed = entry.seed;
    auto start = std::chrono::steady_clock::now();
    try {
        LoadedInstance li = load_instance( entry.path, entry.domain );
        RunSettings settings;
        settings.heuristic = entry.heuristic;
        settings.seed = entry.seed;
        settings.timeout_seconds = entry.timeout;
        settings.budget_mode = budget_mode;
        HeuristicHandle h = make_heuristic( li, settings );
        SolverOptions options;
        options.seed = entry.seed;
        options.limits.timeout_seconds = entry.timeout;
        Answer a = solve( li.program, h.get(), options );
        h.close();
        if( auto bad = verify_witness( li, a ); !bad.empty() )
            throw std::runtime_error( "verifier rejected the witness: " + bad.front() );
        r.outcome = to_string( a.outcome );
        r.decisions = a.stats.decisions;
        r.conflicts = a.stats.conflicts;
        r.restarts = a.stats.restarts;
        r.wall_ms = a.stats.wall_ms;
    } catch( const std::exception& e ) {
        r.outcome = "error";
        r.error = e.what();
        r.decisions = r.conflicts = r.restarts = 0;
        r.wall_ms = std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - start ).count();
    }
    return r;
}

namespace {

/* One record per line, tab separated, error text last. */
std::string pack( std::size_t index, const RunRecord& r )
{
    std::ostringstream out;
    char wall[ 32 ];
    std::snprintf( wall, sizeof wall, "%.6f", r.wall_ms );
    std::string error = r.error;
    for( char& c : error )
        if( c == '\n' || c == '\t' )
            c = ' ';
    out << index << '\t' << r.outcome << '\t' << r.decisions << '\t' << r.conflicts << '\t' << r.restarts << '\t' << wall
        << '\t' << error << '\n';
    return out.str();
}

void unpack( const std::string& line, std::vector< RunRecord >& records )
{
    std::istringstream in( line );
    std::size_t index;
    RunRecord r;
    in >> index;
    in.ignore( 1 );
    std::getline( in, r.outcome, '\t' );
    in >> r.decisions >> r.conflicts >> r.restarts >> r.wall_ms;
    in.ignore( 1 );
    std::getline( in, r.error );
    if( !in.fail() || in.eof() ) {
        if( index < records.size() ) {
            RunRecord& dst = records[ index ];
            dst.outcome = r.outcome;
            dst.decisions = r.decisions;
            dst.conflicts = r.conflicts;
            dst.restarts = r.restarts;
            dst.wall_ms = r.wall_ms;
            dst.error = r.error;
        }
    }
}

}  // namespace

std::vector< RunRecord > run_matrix( const std::vector< MatrixEntry >& entries, int jobs, BudgetMode budget_mode )
{
    std::vector< RunRecord > records( entries.size() );
    if( jobs <= 1 || entries.size() <= 1 ) {
        for( std::size_t i = 0; i < entries.size(); ++i )
            records[ i ] = run_entry( entries[ i ], budget_mode );
        return records;
    }

    // rows default to error, so a worker that dies leaves a trace
    for( std::size_t i = 0; i < entries.size(); ++i ) {
        records[ i ].instance = entries[ i ].instance;
        records[ i ].heuristic = entries[ i ].heuristic;
        records[ i ].seed = entries[ i ].seed;
        records[ i ].outcome = "error";
        records[ i ].error = "worker process failed";
    }
    std::size_t workers = std::min< std::size_t >( jobs, entries.size() );
    std::vector< std::FILE* > files;
    std::vector< pid_t > pids;
    std::fflush( nullptr );
    for( std::size_t w = 0; w < workers; ++w ) {
        std::FILE* f = std::tmpfile();
        if( !f )
            throw std::runtime_error( "cannot create a temporary file for the bench workers" );
        pid_t pid = fork();
        if( pid < 0 )
            throw std::runtime_error( "fork failed" );
        if( pid == 0 ) {
            for( std::size_t i = w; i < entries.size(); i += workers ) {
                std::string line = pack( i, run_entry( entries[ i ], budget_mode ) );
                std::fwrite( line.data(), 1, line.size(), f );
                std::fflush( f );
            }
            _exit( 0 );
        }
        files.push_back( f );
        pids.push_back( pid );
    }
    for( std::size_t w = 0; w < workers; ++w ) {
        int status = 0;
        waitpid( pids[ w ], &status, 0 );
        std::rewind( files[ w ] );
        std::string line;
        for( int c; ( c = std::fgetc( files[ w ] ) ) != EOF; ) {
            if( c == '\n' ) {
                unpack( line, records );
                line.clear();
            }
            else
                line += static_cast< char >( c );
        }
        std::fclose( files[ w ] );
    }
    return records;
}

std::string bench_summary( const std::vector< RunRecord >& records )
{
    std::vector< std::string > order;
    std::map< std::string, std::pair< int, int > > counts;
    for( const RunRecord& r : records ) {
        if( !counts.count( r.heuristic ) )
            order.push_back( r.heuristic );
        auto& c = counts[ r.heuristic ];
        c.second += 1;
        if( r.outcome == "coherent" || r.outcome == "incoherent" )
            c.first += 1;
    }
    std::string out;
    for( const auto& h : order )
        out += h + " " + std::to_string( counts[ h ].first ) + "/" + std::to_string( counts[ h ].second ) + "\n";
    return out;
}

}  // namespace dasp
