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

#include "dasp/heuristic.hpp"
#include "dasp/pup.hpp"

#include <set>
#include <string_view>
#include <vector>

namespace dasp {

enum class PupVariant { QuickPup, QuickPupStar, Pred };

PupVariant parse_pup_variant( std::string_view name );

/*
 * Assigns zones and sensors to units along a breadth-first order. Units
 * without any vertex are interchangeable, so only the lowest of them is
 * ever tried for a vertex. When every unit of a vertex is refuted, the
 * current prefix of choices is blocked with a constraint.
 */
class PupHeuristic : public Heuristic {
public:
    PupHeuristic( PupInstance instance, PupVariant variant );

    std::vector< AtomId > on_finished_parsing( const GroundProgram& program ) override;
    void on_inco_choice( Literal lit ) override;
    void on_conflict( std::optional< Literal > lit ) override;
    void on_lit_true( Literal lit ) override;
    void on_unroll_lit( Literal lit ) override;
    CommandBatch on_choice_required() override;

    const std::vector< PupVertex >& order() const { return order_; }
    /* Unit of each order position as seen through the events, -1 if open. */
    std::vector< int > assigned_units() const;
    std::uint64_t blocked_prefixes() const { return blocked_; }

private:
    struct Frame {
        std::size_t pos = 0;
        std::optional< Literal > lit;
        int unit = -1;
        bool was_new = false;
        std::set< int > tried;
        bool new_tried = false;
    };

    int vertex_id( const PupVertex& v ) const { return v.zone ? v.index : zones_ + v.index; }
    bool is_true( AtomId a ) const { return values_[ a ] == Value::True; }
    bool is_false( AtomId a ) const { return values_[ a ] == Value::False; }
    int unit_of( int vertex ) const;
    std::vector< int > candidates( const Frame& frame ) const;
    void sync();
    void refute( Frame& frame );

    PupInstance instance_;
    PupVariant variant_;
    int zones_ = 0;
    std::vector< PupVertex > order_;
    /* atoms_[vertex][unit] */
    std::vector< std::vector< AtomId > > atoms_;
    /* vertex and unit of each assignment atom, -1 for other atoms */
    std::vector< std::pair< int, int > > owner_;
    std::vector< std::vector< int > > near_;
    std::vector< Value > values_;
    std::vector< int > unit_load_;
    std::vector< Frame > frames_;
    bool done_ = false;
    std::uint64_t blocked_ = 0;
};

}  // namespace dasp
