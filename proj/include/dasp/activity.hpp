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

#include "dasp/program.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dasp {

enum class Sign : std::uint8_t { Positive, Negative };

/*
 * Per-atom activities for the default decision heuristic, kept in a binary
 * max-heap. Equal activities are ordered by a random key drawn once from the
 * seed, so ties resolve differently per seed but deterministically.
 */
class ActivityTable {
public:
    static constexpr double kDecay = 0.95;
    static constexpr double kRescaleLimit = 1e100;

    ActivityTable( std::size_t atom_count, std::uint64_t seed );

    std::size_t size() const { return activity_.size(); }
    double activity( AtomId a ) const { return activity_[ a ]; }
    double amplify( AtomId a ) const { return amplify_[ a ]; }
    Sign sign( AtomId a ) const { return sign_[ a ]; }
    double increment() const { return increment_; }

    void set_activity( AtomId a, double value );
    void set_amplify( AtomId a, double factor ) { amplify_[ a ] = factor; }
    void set_sign( AtomId a, Sign s ) { sign_[ a ] = s; }

    void bump( AtomId a );
    void decay();
    /* Bumps each atom of the learned constraint once, then decays. */
    void bump_and_decay( std::span< const Literal > learned );
    /* Multiplies every activity and the increment by `factor`. */
    void scale_all( double factor );

    /* Removes an atom from consideration until it is reinserted. */
    void exclude( AtomId a );
    void insert( AtomId a );
    bool contains( AtomId a ) const { return a < position_.size() && position_[ a ] >= 0; }

    /*
     * Most active atom for which `undefined` holds, with its preferred sign.
     * Atoms popped on the way are dropped from the heap; the caller puts them
     * back when they become unassigned.
     */
    std::optional< Literal > choose( const std::function< bool( AtomId ) >& undefined );

private:
    bool before( AtomId a, AtomId b ) const
    {
        return activity_[ a ] > activity_[ b ] || ( activity_[ a ] == activity_[ b ] && tiebreak_[ a ] < tiebreak_[ b ] );
    }
    void sift_up( std::size_t i );
    void sift_down( std::size_t i );
    AtomId pop();

    std::vector< double > activity_;
    std::vector< double > amplify_;
    std::vector< Sign > sign_;
    std::vector< std::uint64_t > tiebreak_;
    std::vector< AtomId > heap_;
    std::vector< std::int64_t > position_;
    double increment_ = 1.0;
};

/* Luby restart schedule counted in conflicts. */
class LubyRestarts {
public:
    explicit LubyRestarts( std::uint64_t unit = 32 ) : unit_( unit ) {}

    /* Records a conflict; true when a restart is due, which also advances the schedule. */
    bool on_conflict();
    void reset_counter() { since_restart_ = 0; }
    std::uint64_t current_limit() const { return unit_ * luby( index_ ); }

    static std::uint64_t luby( std::uint64_t index );

private:
    std::uint64_t unit_;
    std::uint64_t index_ = 0;
    std::uint64_t since_restart_ = 0;
};

}  // namespace dasp
