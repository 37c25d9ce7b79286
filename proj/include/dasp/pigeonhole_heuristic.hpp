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

#include <map>

namespace dasp {

/*
 * Puts pigeon i into hole i. When pigeons outnumber holes the search is
 * stopped at once with an empty constraint.
 */
class PigeonholeHeuristic : public Heuristic {
public:
    std::vector< AtomId > on_finished_parsing( const GroundProgram& program ) override;
    void on_lit_true( Literal lit ) override;
    void on_unroll_lit( Literal lit ) override;
    CommandBatch on_choice_required() override;

    int pigeons() const { return static_cast< int >( pigeons_.size() ); }
    int holes() const { return static_cast< int >( holes_.size() ); }

private:
    std::map< std::string, AtomId > pigeons_;
    std::map< std::string, AtomId > holes_;
    std::vector< AtomId > diagonal_;
    std::vector< Value > values_;
};

}  // namespace dasp
