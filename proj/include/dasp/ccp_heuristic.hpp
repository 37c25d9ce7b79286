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
#include "dasp/heuristic.hpp"

#include <chrono>
#include <deque>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

namespace dasp {

enum class CcpVariant { A1A2, A2F, A2FO, A2AFO };

CcpVariant parse_ccp_variant( std::string_view name );

enum class BudgetMode { Wall, Choices };

/* How long a heuristic period lasts: wall seconds, or emitted choices in deterministic mode. */
struct CcpBudget {
    BudgetMode mode = BudgetMode::Wall;
    double seconds = 10.0;
    std::int64_t choices = 5000;
};

/*
 * Greedy matching of border elements to areas: elements in declaration
 * order, each to the candidate area holding the fewest elements so far,
 * the lowest area index on ties. Returns (vertex, area index) pairs.
 */
std::vector< std::pair< int, int > > a1_assign_borders( const CcpInstance& instance );

/* 1 for vertices with only incoming or only outgoing edges, else 0. */
std::vector< int > ccp_scores( const CcpInstance& instance );

/*
 * Vertex orders tried by a variant. Scoring variants sort by descending
 * score, keeping declaration order among equals; a2afo yields one order per
 * score-1 vertex, moved to the front.
 */
std::vector< std::vector< int > > ccp_orders( const CcpInstance& instance, CcpVariant variant );

/*
 * Colors connected regions one color at a time from a queue, placing each
 * vertex into its best-fit bin, then hands the rest to the default
 * heuristic.
 */
class CcpHeuristic : public Heuristic {
public:
    CcpHeuristic( CcpInstance instance, CcpVariant variant, CcpBudget budget = {} );

    std::vector< AtomId > on_finished_parsing( const GroundProgram& program ) override;
    void on_inco_choice( Literal lit ) override;
    void on_conflict( std::optional< Literal > lit ) override;
    void on_lit_true( Literal lit ) override;
    void on_unroll_lit( Literal lit ) override;
    CommandBatch on_choice_required() override;

    const std::vector< std::vector< int > >& orders() const { return orders_; }
    /* Orders the heuristic has started so far. */
    std::size_t orders_started() const { return order_index_ + 1; }
    std::uint64_t heuristic_choices() const { return choices_; }
    bool finished() const { return phase_ == Phase::Done; }

private:
    enum class Phase { A1, Heuristic, Default, Done };

    struct Pending {
        int vertex = -1;
        std::optional< Literal > color;
        std::optional< Literal > bin;
        int bin_index = -1;
    };

    Value value( AtomId a ) const { return values_[ a ]; }
    int color_of( int v ) const;
    int bin_of( int v ) const;
    int best_fit( int v ) const;
    bool partial_solution() const;
    bool budget_spent() const;
    void start_order( std::size_t index );
    void next_color();
    void enqueue( int v );
    void settle_refutation();
    std::optional< CommandBatch > a2_batch();
    CommandBatch leave_heuristic( bool spent );

    CcpInstance instance_;
    CcpVariant variant_;
    CcpBudget budget_;
    std::vector< int > score_;
    std::vector< std::vector< int > > adj_;
    std::vector< std::vector< int > > orders_;
    std::size_t order_index_ = 0;

    std::vector< std::vector< AtomId > > color_atoms_;
    std::vector< std::vector< AtomId > > bin_atoms_;
    std::vector< AtomId > a1_;
    std::vector< Value > values_;

    Phase phase_ = Phase::Heuristic;
    std::deque< int > queue_;
    int color_ = 0;
    bool seeded_ = false;
    std::vector< bool > considered_;
    std::vector< bool > skipped_;
    std::vector< std::set< int > > refuted_bins_;
    Pending pending_;
    bool refuted_ = false;

    bool clock_started_ = false;
    std::chrono::steady_clock::time_point period_start_;
    std::int64_t period_choices_ = 0;
    std::uint64_t choices_ = 0;
};

}  // namespace dasp
