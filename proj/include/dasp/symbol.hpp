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

#include <string>
#include <string_view>
#include <vector>

namespace dasp {

/* An atom name of the form pred or pred(a1,...,ak) over [A-Za-z0-9_]+ tokens. */
struct Symbol {
    std::string predicate;
    std::vector< std::string > args;

    bool operator==( const Symbol& ) const = default;
};

bool is_valid_symbol( std::string_view text );
/* Throws ProgramError on malformed input. */
Symbol parse_symbol( std::string_view text );
std::string format_symbol( const Symbol& symbol );
std::string format_symbol( std::string_view predicate, std::initializer_list< std::string_view > args );

}  // namespace dasp
