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

// dasp command line: solve, encode, generate, verify, bench.

#include "dasp/bench.hpp"
#include "dasp/ccp.hpp"
#include "dasp/gpf.hpp"
#include "dasp/pigeonhole.hpp"
#include "dasp/pup.hpp"
#include "dasp/semantics.hpp"
#include "dasp/solver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dasp;

namespace {

constexpr int kCoherent = 10;
constexpr int kIncoherent = 20;
constexpr int kTimeout = 30;
constexpr int kError = 1;

void write_output( const std::string& path, const std::string& text )
{
    if( path.empty() || path == "-" ) {
        std::cout << text;
        return;
    }
    std::ofstream out( path, std::ios::binary );
    out << text;
    if( !out )
        throw std::runtime_error( "cannot write " + path );
}

Domain pick_domain( const std::string& flag, const std::string& path )
{
    return flag.empty() ? domain_for_path( path ) : parse_domain( flag );
}

std::string atom_label( const GroundProgram& p, AtomId a )
{
    return p.has_name( a ) ? p.name( a ) : "#" + std::to_string( a );
}

struct SolveArgs {
    std::string instance;
    std::string domain;
    std::string heuristic = "default";
    std::uint64_t seed = 1;
    std::optional< double > timeout;
    std::string budget_mode = "wall";
    std::optional< double > budget;
    bool stats = false;
    std::string solution;
};

int cmd_solve( const SolveArgs& args )
{
    LoadedInstance li = load_instance( args.instance, pick_domain( args.domain, args.instance ) );
    RunSettings settings;
    settings.heuristic = args.heuristic;
    settings.seed = args.seed;
    settings.timeout_seconds = args.timeout;
    settings.budget_mode = parse_budget_mode( args.budget_mode );
    settings.budget = args.budget;
    HeuristicHandle h = make_heuristic( li, settings );

    SolverOptions options;
    options.seed = args.seed;
    options.limits.timeout_seconds = args.timeout;
    Answer a = solve( li.program, h.get(), options );
    h.close();

    if( args.stats ) {
        std::cerr << "outcome " << to_string( a.outcome ) << "\n"
                  << "decisions " << a.stats.decisions << "\n"
                  << "conflicts " << a.stats.conflicts << "\n"
                  << "restarts " << a.stats.restarts << "\n"
                  << "learned " << a.stats.learned << "\n"
                  << "propagations " << a.stats.propagations << "\n"
                  << "wall_ms " << a.stats.wall_ms << "\n";
    }
    if( a.outcome == Outcome::Incoherent )
        return kIncoherent;
    if( a.outcome == Outcome::TimedOut )
        return kTimeout;

    if( auto bad = verify_witness( li, a ); !bad.empty() ) {
        for( const auto& v : bad )
            std::cerr << "dasp: verifier: " << v << "\n";
        return kError;
    }
    std::string atoms;
    for( AtomId x : a.witness )
        atoms += atom_label( li.program, x ) + "\n";
    std::cout << atoms;
    if( !args.solution.empty() ) {
        if( li.domain == Domain::Pup )
            write_output( args.solution, serialize_pup_solution( *li.pup, extract_pup( *li.pup, li.program, a.witness ) ) );
        else if( li.domain == Domain::Ccp )
            write_output( args.solution, serialize_ccp_solution( *li.ccp, extract_ccp( *li.ccp, li.program, a.witness ) ) );
        else
            write_output( args.solution, atoms );
    }
    return kCoherent;
}

/* 0 accepted, 1 rejected, 2 unreadable input. */
int cmd_verify( const std::string& instance, const std::string& solution, const std::string& domain_flag )
{
    std::vector< std::string > bad;
    try {
        Domain domain = pick_domain( domain_flag, instance );
        std::string text = read_text_file( solution );
        if( domain == Domain::Pup ) {
            PupInstance inst = parse_pup( read_text_file( instance ) );
            bad = verify_pup( inst, parse_pup_solution( inst, text ) );
        }
        else if( domain == Domain::Ccp ) {
            CcpInstance inst = parse_ccp( read_text_file( instance ) );
            bad = verify_ccp( inst, parse_ccp_solution( inst, text ) );
        }
        else {
            // a ground program solution lists its true atoms by name
            GroundProgram p = parse_program( read_text_file( instance ) );
            std::vector< AtomId > atoms;
            std::istringstream in( text );
            for( std::string name; in >> name; ) {
                auto a = name.starts_with( "#" ) ? std::optional< AtomId >( std::stoul( name.substr( 1 ) ) ) : p.find( name );
                if( !a || *a == kBottom || *a >= p.atom_count() )
                    throw std::runtime_error( "unknown atom '" + name + "'" );
                atoms.push_back( *a );
            }
            if( !is_answer_set( p, Interpretation::from_true_atoms( p.atom_count(), atoms ) ) )
                bad.push_back( "the atoms are not an answer set" );
        }
    } catch( const std::exception& e ) {
        std::cerr << "dasp: " << e.what() << "\n";
        return 2;
    }
    if( bad.empty() ) {
        std::cout << "ok\n";
        return 0;
    }
    for( const auto& v : bad )
        std::cout << v << "\n";
    return 1;
}

}  // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "dasp: CDCL answer set solver with domain heuristics" };
    app.require_subcommand( 1 );
    app.set_version_flag( "--version", "dasp 1.0" );

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand( "solve", "solve an instance; exit 10 coherent, 20 incoherent, 30 timeout, 1 error" );
    solve_cmd->add_option( "instance", solve_args.instance, "PUP (.pup), CCP (.ccp) or ground program file" )->required();
    solve_cmd->add_option( "--domain", solve_args.domain, "pup, ccp or gpf (default: by file extension)" );
    solve_cmd->add_option( "--heuristic", solve_args.heuristic,
                           "default, pigeonhole, quickpup, quickpup-star, pred, a1a2, a2f, a2fo, a2afo or plugin:<command>" );
    solve_cmd->add_option( "--seed", solve_args.seed, "random seed" );
    solve_cmd->add_option( "--timeout", solve_args.timeout, "time limit in seconds" );
    solve_cmd->add_option( "--budget-mode", solve_args.budget_mode, "CCP heuristic periods: wall (seconds) or choices" );
    solve_cmd->add_option( "--budget", solve_args.budget, "CCP period length (default 10 s or 5000 choices)" );
    solve_cmd->add_flag( "--stats", solve_args.stats, "print search statistics to stderr" );
    solve_cmd->add_option( "--solution", solve_args.solution, "write the extracted domain solution to a file" );

    std::string enc_instance, enc_domain, enc_out;
    auto* encode_cmd = app.add_subcommand( "encode", "write the ground program of an instance" );
    encode_cmd->add_option( "instance", enc_instance )->required();
    encode_cmd->add_option( "--domain", enc_domain, "pup or ccp (default: by file extension)" );
    encode_cmd->add_option( "-o,--output", enc_out, "output file (default: stdout)" );

    auto* gen_cmd = app.add_subcommand( "generate", "write a generated instance" );
    gen_cmd->require_subcommand( 1 );
    std::string gen_out;

    std::string topology;
    int pup_a = 0, pup_b = 1, ucap = 2, iucap = 2;
    auto* gen_pup_cmd = gen_cmd->add_subcommand( "pup", "PUP instance: double, doublev, triple or grid" );
    gen_pup_cmd->add_option( "-o,--output", gen_out, "output file (default: stdout)" );
    gen_pup_cmd->add_option( "topology", topology )->required();
    gen_pup_cmd->add_option( "a", pup_a, "size (rows for grid)" )->required();
    gen_pup_cmd->add_option( "b", pup_b, "columns for grid" );
    gen_pup_cmd->add_option( "--ucap", ucap );
    gen_pup_cmd->add_option( "--iucap", iucap );

    int grid_w = 0, grid_h = 0;
    CcpGridParams grid;
    bool no_paths = false;
    auto* gen_ccp_cmd = gen_cmd->add_subcommand( "ccp", "CCP grid instance" );
    gen_ccp_cmd->add_option( "-o,--output", gen_out, "output file (default: stdout)" );
    gen_ccp_cmd->add_option( "width", grid_w )->required();
    gen_ccp_cmd->add_option( "height", grid_h )->required();
    gen_ccp_cmd->add_option( "--colors", grid.colors );
    gen_ccp_cmd->add_option( "--bins", grid.bins );
    gen_ccp_cmd->add_option( "--capacity", grid.capacity );
    gen_ccp_cmd->add_option( "--max-border", grid.max_border );
    gen_ccp_cmd->add_option( "--size-a", grid.size_a );
    gen_ccp_cmd->add_option( "--size-b", grid.size_b );
    gen_ccp_cmd->add_flag( "--no-paths", no_paths, "leave out the two paths" );

    int pigeons = 0, holes = 0;
    auto* gen_php_cmd = gen_cmd->add_subcommand( "pigeonhole", "pigeonhole ground program" );
    gen_php_cmd->add_option( "-o,--output", gen_out, "output file (default: stdout)" );
    gen_php_cmd->add_option( "pigeons", pigeons )->required()->check( CLI::NonNegativeNumber );
    gen_php_cmd->add_option( "holes", holes )->required()->check( CLI::NonNegativeNumber );

    std::string ver_instance, ver_solution, ver_domain;
    auto* verify_cmd = app.add_subcommand( "verify", "check a solution; exit 0 ok, 1 rejected, 2 error" );
    verify_cmd->add_option( "instance", ver_instance )->required();
    verify_cmd->add_option( "solution", ver_solution )->required();
    verify_cmd->add_option( "--domain", ver_domain, "pup, ccp or gpf (default: by file extension)" );

    std::string matrix, bench_out, bench_budget = "wall";
    int jobs = 1;
    auto* bench_cmd = app.add_subcommand( "bench", "run a matrix of solves and write CSV" );
    bench_cmd->add_option( "matrix", matrix, "lines: <instance> <domain> <heuristic> <seed> <timeout>" )->required();
    bench_cmd->add_option( "--jobs", jobs, "worker processes" )->check( CLI::PositiveNumber );
    bench_cmd->add_option( "--budget-mode", bench_budget, "wall or choices" );
    bench_cmd->add_option( "-o,--output", bench_out, "CSV file (default: stdout)" );

    try {
        app.parse( argc, argv );
    } catch( const CLI::ParseError& e ) {
        int code = app.exit( e );
        return code == 0 ? 0 : kError;
    }

    try {
        if( *solve_cmd )
            return cmd_solve( solve_args );
        if( *verify_cmd )
            return cmd_verify( ver_instance, ver_solution, ver_domain );
        if( *encode_cmd ) {
            Domain d = pick_domain( enc_domain, enc_instance );
            write_output( enc_out, serialize_program( load_instance( enc_instance, d ).program ) );
            return 0;
        }
        if( *gen_cmd ) {
            if( *gen_pup_cmd )
                write_output( gen_out, serialize_pup( gen_pup( parse_pup_topology( topology ), pup_a, pup_b, ucap, iucap ) ) );
            else if( *gen_ccp_cmd ) {
                grid.paths = !no_paths;
                write_output( gen_out, serialize_ccp( gen_ccp_grid( grid_w, grid_h, grid ) ) );
            }
            else
                write_output( gen_out, serialize_program( encode_pigeonhole( pigeons, holes ) ) );
            return 0;
        }
        if( *bench_cmd ) {
            BudgetMode mode = parse_budget_mode( bench_budget );
            std::string base = std::filesystem::path( matrix ).parent_path().string();
            auto entries = parse_matrix( read_text_file( matrix ), base.empty() ? "." : base );
            auto records = run_matrix( entries, jobs, mode );
            std::string csv = std::string( kCsvHeader ) + "\n";
            for( const RunRecord& r : records ) {
                csv += csv_row( r ) + "\n";
                if( r.outcome == "error" )
                    std::cerr << "dasp: " << r.instance << " " << r.heuristic << ": " << r.error << "\n";
            }
            write_output( bench_out, csv );
            std::cerr << bench_summary( records );
            return 0;
        }
    } catch( const UsageError& e ) {
        std::cerr << "dasp: usage error: " << e.what() << "\n";
        return kError;
    } catch( const std::exception& e ) {
        std::cerr << "dasp: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
