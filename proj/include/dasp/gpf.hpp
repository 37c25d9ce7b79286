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

#include <iosfwd>
#include <string>
#include <string_view>

namespace dasp {

class ParseError : public std::runtime_error {
public:
    ParseError( std::size_t line, const std::string& message );
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/*
 * Line-oriented ground program format:
 *
 *   p gpf 1                                  optional header
 *   a <id> [<name>]                          atom declaration
 *   r <head> <npos> <pos...> <nneg> <neg...> rule, head 0 for constraints
 *   # ...                                    comment
 */
GroundProgram parse_program( std::string_view text );
GroundProgram read_program( std::istream& in );
std::string serialize_program( const GroundProgram& program );

}  // namespace dasp
