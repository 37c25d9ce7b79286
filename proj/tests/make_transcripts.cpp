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

// Regenerates the golden plugin transcripts in tests/data/transcripts from
// the in-process peers. Usage: make_transcripts <data dir>

#include "sessions.hpp"

#include <iostream>

using namespace dasp;
using namespace dasp::testing;

namespace {

void write( const std::string& path, const std::string& text )
{
    std::ofstream out( path );
    out << text;
    if( !out )
        throw std::runtime_error( "cannot write " + path );
    std::cout << path << "\n";
}

}  // namespace

int main( int argc, char** argv )
{
    if( argc != 2 ) {
        std::cerr << "usage: make_transcripts <data dir>\n";
        return 2;
    }
    std::string data = argv[ 1 ];
    std::string dir = data + "/transcripts";
    for( const Session& s : golden_sessions( data ) ) {
        Recorded r = record( s );
        write( dir + "/" + s.file, header( s, r.answer ) + r.log );
    }

    return 0;
}
