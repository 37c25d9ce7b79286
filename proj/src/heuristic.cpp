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

#include "dasp/heuristic.hpp"

#include <sstream>

namespace dasp {

void FallbackController::engage( std::int64_t choices )
{
    if( choices <= 0 ) {
        permanent_ = true;
        remaining_ = 0;
    }
    else {
        remaining_ = choices;
    }
}

bool FallbackController::take_default()
{
    if( permanent_ )
        return true;
    if( remaining_ > 0 ) {
        --remaining_;
        return true;
    }
    return false;
}

std::string describe( const Command& command )
{
    std::ostringstream out;
    if( auto c = std::get_if< Choose >( &command ) )
        out << "Choose(" << c->lit.to_signed() << ")";
    else if( auto u = std::get_if< Unroll >( &command ) )
        out << "Unroll(" << ( u->lit ? u->lit->to_signed() : 0 ) << ")";
    else if( auto f = std::get_if< Fallback >( &command ) )
        out << "Fallback(" << f->choices << "," << f->activity.size() << "," << f->factor.size() << "," << f->sign.size() << ")";
    else if( auto a = std::get_if< AddConstraint >( &command ) ) {
        out << "AddConstraint(";
        for( std::size_t i = 0; i < a->body.size(); ++i )
            out << ( i ? "," : "" ) << a->body[ i ].to_signed();
        out << ")";
    }
    return out.str();
}

}  // namespace dasp
