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
#include "dasp/program.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dasp {

/* Atoms that survived simplification, plus the frozen ones. */
struct SearchView {
    const GroundProgram* program = nullptr;
    std::vector< AtomId > atoms;
    std::size_t rule_count = 0;
};

struct Choose {
    Literal lit;
    bool operator==( const Choose& ) const = default;
};

/* Backjump so that `lit` becomes unassigned; without a literal, restart. */
struct Unroll {
    std::optional< Literal > lit;
    bool operator==( const Unroll& ) const = default;
};

/*
 * Hands control to the default heuristic for `choices` choices, or for the
 * rest of the search when `choices` <= 0, after applying the given initial
 * activities, amplification factors and signs.
 */
struct Fallback {
    std::int64_t choices = 0;
    std::map< AtomId, std::int64_t > activity;
    std::map< AtomId, std::int64_t > factor;
    std::map< AtomId, Sign > sign;
    bool operator==( const Fallback& ) const = default;
};

/* Adds the constraint "<- body"; an empty body makes the search incoherent. */
struct AddConstraint {
    std::vector< Literal > body;
    bool operator==( const AddConstraint& ) const = default;
};

using Command = std::variant< Choose, Unroll, Fallback, AddConstraint >;
using CommandBatch = std::vector< Command >;

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * Domain heuristic driven by solver events. Notifications report changes of
 * the assignment to atoms; on_choice_required asks for commands, which are
 * executed in order.
 */
class Heuristic {
public:
    virtual ~Heuristic() = default;

    /* Called once before simplification; returns the atoms to freeze. */
    virtual std::vector< AtomId > on_finished_parsing( const GroundProgram& ) { return {}; }
    virtual void on_search( const SearchView& ) {}
    virtual void on_inco_choice( Literal ) {}
    /* Latest decision literal left on the trail after backjumping, if any. */
    virtual void on_conflict( std::optional< Literal > ) {}
    virtual void on_learn( std::span< const Literal > ) {}
    virtual void on_restart() {}
    virtual void on_lits_true( std::span< const Literal > lits )
    {
        for( Literal l : lits )
            on_lit_true( l );
    }
    virtual void on_lit_true( Literal ) {}
    virtual void on_unroll_lits( std::span< const Literal > lits )
    {
        for( Literal l : lits )
            on_unroll_lit( l );
    }
    virtual void on_unroll_lit( Literal ) {}
    virtual CommandBatch on_choice_required() = 0;
};

/* Decides when ChoiceRequired is answered by the default heuristic. */
class FallbackController {
public:
    /* Permanent for choices <= 0. */
    void engage( std::int64_t choices );
    /* True when the next choice belongs to the default heuristic; consumes one choice. */
    bool take_default();
    bool permanent() const { return permanent_; }
    std::int64_t remaining() const { return remaining_; }

private:
    bool permanent_ = false;
    std::int64_t remaining_ = 0;
};

/* Hands everything to the default heuristic on the first request. */
class FallbackHeuristic : public Heuristic {
public:
    CommandBatch on_choice_required() override { return { Fallback{} }; }
};

std::string describe( const Command& command );

}  // namespace dasp
