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

#include <span>
#include <string>
#include <vector>

namespace dasp {

/*
 * Cardinality constraints expressed as normal rules with sequential
 * counters. Counter atoms are named pred(key...,i,j) so that callers can
 * keep them unique by choosing the predicate and key arguments.
 */
struct CounterName {
    std::string predicate;
    std::vector< std::string > key;
};

/* At most `bound` of `inputs` are true. */
void add_at_most( GroundProgram& program, std::span< const AtomId > inputs, int bound, const CounterName& name );

/* The weighted sum of true inputs does not exceed `bound`. Weights are positive. */
void add_weighted_at_most( GroundProgram& program, std::span< const AtomId > inputs, std::span< const int > weights, int bound, const CounterName& name );

/* At least one input is true; a single constraint with a negative body. */
void add_at_least_one( GroundProgram& program, std::span< const AtomId > inputs );

/* Exactly one input is true. Pairwise exclusion for short lists, a counter otherwise. */
void add_exactly_one( GroundProgram& program, std::span< const AtomId > inputs, const CounterName& name );

}  // namespace dasp
