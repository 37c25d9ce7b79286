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

namespace dasp {

/*
 * Pigeons 1..n into holes 1..m. Atoms: pigeon(p), hole(h), inHole(p,h),
 * outHole(p,h), inSomeHole(p). Every pigeon needs a hole and no hole takes
 * two pigeons.
 */
GroundProgram encode_pigeonhole( int pigeons, int holes );

}  // namespace dasp
