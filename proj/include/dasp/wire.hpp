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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/*
 * Line protocol between the solver and an external heuristic: one JSON
 * object per line in each direction, every message answered by exactly one
 * line. Literals are signed atom ids; 0 stands for no literal.
 */
namespace dasp::wire {

class WireError : public ProtocolError {
public:
    using ProtocolError::ProtocolError;
};

std::string atom_event( AtomId id, const std::string& name );
std::string parsing_done_event();
std::string search_event();
/* kind is one of lit_true, unroll_lit, learn */
std::string lits_event( std::string_view kind, std::span< const Literal > lits );
/* kind is one of conflict, inco_choice */
std::string lit_event( std::string_view kind, std::optional< Literal > lit );
std::string restart_event();
std::string choice_required_event();

struct Event {
    std::string kind;
    AtomId id = 0;
    std::string name;
    std::vector< Literal > lits;
    std::optional< Literal > lit;
};

Event parse_event( std::string_view line );

std::string ack();
std::string frozen_response( std::span< const AtomId > frozen );
/* A lone Choose becomes {"choose":N}; anything else an array of command objects. */
std::string command_response( const CommandBatch& batch );

/* Throws WireError unless the line is {"ack":true}. */
void parse_ack( std::string_view line );
std::vector< AtomId > parse_frozen( std::string_view line );

/*
 * Answer to choice_required. A literal list ({"choose":[...]}, or a bare
 * array) fills `queue`, to be spent one choice per request; every other
 * form fills `batch`.
 */
struct ChoiceResponse {
    std::vector< Literal > queue;
    CommandBatch batch;
};

ChoiceResponse parse_choice_response( std::string_view line );

}  // namespace dasp::wire
