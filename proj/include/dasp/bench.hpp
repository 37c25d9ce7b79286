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

#include "dasp/ccp.hpp"
#include "dasp/ccp_heuristic.hpp"
#include "dasp/plugin.hpp"
#include "dasp/pup.hpp"
#include "dasp/solver.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dasp {

/* Bad flags or a heuristic that does not fit the domain. */
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Domain { Pup, Ccp, Gpf };

Domain parse_domain( std::string_view name );
std::string to_string( Domain domain );
/* .pup and .ccp files by extension, everything else ground programs. */
Domain domain_for_path( const std::string& path );

struct LoadedInstance {
    Domain domain = Domain::Gpf;
    GroundProgram program;
    std::optional< PupInstance > pup;
    std::optional< CcpInstance > ccp;
};

std::string read_text_file( const std::string& path );
LoadedInstance load_instance( const std::string& path, Domain domain );

struct RunSettings {
    std::string heuristic = "default";
    std::uint64_t seed = 1;
    std::optional< double > timeout_seconds;
    BudgetMode budget_mode = BudgetMode::Wall;
    /* Seconds or choices per heuristic period, depending on the mode. */
    std::optional< double > budget;
};

BudgetMode parse_budget_mode( std::string_view name );

/*
 * Owns the heuristic for one solve, plus the plugin process when the name
 * is plugin:<command>. get() is null for the default heuristic.
 */
class HeuristicHandle {
public:
    Heuristic* get() const { return heuristic_.get(); }
    void close();

private:
    friend HeuristicHandle make_heuristic( const LoadedInstance&, const RunSettings& );
    std::unique_ptr< ProcessChannel > channel_;
    std::unique_ptr< Heuristic > heuristic_;
};

/*
 * default everywhere; pigeonhole on ground programs; quickpup,
 * quickpup-star and pred on PUP; a1a2, a2f, a2fo and a2afo on CCP;
 * plugin:<command> everywhere. Throws UsageError otherwise.
 */
HeuristicHandle make_heuristic( const LoadedInstance& instance, const RunSettings& settings );

/* Checks the answer against the domain verifier; empty when fine. */
std::vector< std::string > verify_witness( const LoadedInstance& instance, const Answer& answer );

struct RunRecord {
    std::string instance;
    std::string heuristic;
    std::uint64_t seed = 0;
    /* coherent, incoherent, timeout or error */
    std::string outcome;
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t restarts = 0;
    double wall_ms = 0;
    std::string error;
};

inline constexpr const char* kCsvHeader = "instance,heuristic,seed,outcome,decisions,conflicts,restarts,wall_ms";
std::string csv_row( const RunRecord& record );

struct MatrixEntry {
    std::string instance;
    /* Path as resolved against the matrix file. */
    std::string path;
    Domain domain = Domain::Gpf;
    std::string heuristic;
    std::uint64_t seed = 1;
    double timeout = 0;
};

/* Lines "<instance> <domain> <heuristic> <seed> <timeout>"; # starts a comment. */
std::vector< MatrixEntry > parse_matrix( std::string_view text, const std::string& base_dir = "." );

/* Never throws for a failing run; the record carries outcome=error. */
RunRecord run_entry( const MatrixEntry& entry, BudgetMode budget_mode );

/* Runs the matrix on `jobs` worker processes; records keep matrix order. */
std::vector< RunRecord > run_matrix( const std::vector< MatrixEntry >& entries, int jobs, BudgetMode budget_mode );

/* Solved runs per heuristic, "heuristic solved/total" lines in first-seen order. */
std::string bench_summary( const std::vector< RunRecord >& records );

}  // namespace dasp
