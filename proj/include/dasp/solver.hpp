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

#include "dasp/activity.hpp"
#include "dasp/heuristic.hpp"
#include "dasp/program.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dasp {

struct SolveLimits {
    std::optional< double > timeout_seconds;
    std::optional< std::uint64_t > max_conflicts;
    std::optional< std::uint64_t > max_decisions;
};

struct SolverOptions {
    std::uint64_t seed = 1;
    SolveLimits limits;
    std::uint64_t restart_unit = 32;
    bool restarts = true;
};

struct Statistics {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t restarts = 0;
    std::uint64_t learned = 0;
    std::uint64_t propagations = 0;
    std::uint64_t loop_clauses = 0;
    std::uint64_t deleted = 0;
    double wall_ms = 0;
};

enum class Outcome { Coherent, Incoherent, TimedOut };

std::string to_string( Outcome outcome );

struct Answer {
    Outcome outcome = Outcome::TimedOut;
    /* True atoms of the answer set, sorted; empty unless coherent. */
    std::vector< AtomId > witness;
    Statistics stats;
};

/* A falsified clause of the solver. */
struct ConflictRecord {
    std::uint32_t clause = 0;
    std::vector< Literal > literals;
};

/* Clause learned from a conflict; literals[0] is the asserting literal. */
struct LearnedConstraint {
    std::vector< Literal > literals;
    int backjump_level = 0;
    int lbd = 0;
};

/*
 * CDCL search over the completion of a normal program with unfounded-set
 * propagation. Variables 0..atom_count()-1 are the program atoms; rule
 * bodies with two or more literals get auxiliary variables above them.
 */
class Solver {
public:
    explicit Solver( const GroundProgram& program, SolverOptions options = {}, Heuristic* heuristic = nullptr );
    ~Solver();
    Solver( const Solver& ) = delete;
    Solver& operator=( const Solver& ) = delete;

    Answer solve();

    /* Fine-grained access, used by the tests. */
    bool incoherent_at_root() const;
    std::optional< ConflictRecord > propagate();
    void decide( Literal lit );
    LearnedConstraint analyze( const ConflictRecord& conflict );
    void backjump( int level );

    Value value( Literal lit ) const;
    int level( AtomId var ) const;
    int decision_level() const;
    std::vector< Literal > trail() const;
    std::size_t atom_count() const;
    std::size_t variable_count() const;
    const ActivityTable& activity() const;
    const Statistics& statistics() const;
    const SearchView& view() const;

private:
    struct Impl;
    std::unique_ptr< Impl > impl_;
};

Answer solve( const GroundProgram& program, Heuristic* heuristic = nullptr, SolverOptions options = {} );

}  // namespace dasp
