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
#include <vector>

namespace dasp {

struct SimplifyResult {
    /* Same atom table as the input; only rules that still matter. */
    GroundProgram program;
    /* Truth values fixed by the simplification, indexed by atom id. */
    std::vector< Value > fixed;
    bool incoherent = false;
};

/*
 * Fixes facts, unsupported atoms and unit constraints, and removes rules
 * and literals decided by them. Frozen atoms are never fixed.
 */
SimplifyResult simplify( const GroundProgram& program, std::span< const AtomId > frozen = {} );

}  // namespace dasp
