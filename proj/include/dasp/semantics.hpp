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

#include <vector>

namespace dasp {

/* Sorted list of the true atoms of an answer set. */
using AnswerSet = std::vector< AtomId >;

bool body_true( const Rule& rule, const Interpretation& interpretation );
bool is_model( const GroundProgram& program, const Interpretation& interpretation );

/* Positive program obtained by deleting rules blocked by I and all negative literals. */
GroundProgram reduct( const GroundProgram& program, const Interpretation& interpretation );

/*
 * Least model of the positive part of a program: heads derived from the
 * non-constraint rules, ignoring negative bodies. Indexed by atom id.
 */
std::vector< bool > least_model( const GroundProgram& program );

bool is_answer_set( const GroundProgram& program, const Interpretation& interpretation );

class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * Enumerates every total interpretation and keeps the answer sets. Atoms
 * that are facts are held true since no model can make them false; the
 * remaining atoms count against the limit.
 */
std::vector< AnswerSet > brute_force_answer_sets( const GroundProgram& program, std::size_t limit = 22 );

/*
 * Enumerates guesses over the atoms occurring negatively and checks each
 * candidate least model for stability. Exact; the number of negatively
 * occurring atoms counts against the limit.
 */
std::vector< AnswerSet > guess_answer_sets( const GroundProgram& program, std::size_t limit = 22 );

}  // namespace dasp
