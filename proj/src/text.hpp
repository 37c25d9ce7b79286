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

#include "dasp/gpf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

/* Line-oriented helpers shared by the instance parsers. */
namespace dasp::text {

inline std::vector< std::string > split_words( std::string_view line )
{
    std::vector< std::string > words;
    std::istringstream in{ std::string( line ) };
    std::string w;
    while( in >> w )
        words.push_back( w );
    return words;
}

/* Calls f( line_number, words ) for each nonblank line that is not a # comment. */
template< typename F >
void for_each_line( std::string_view text, F&& f )
{
    std::size_t number = 0, start = 0;
    while( start < text.size() ) {
        auto end = text.find( '\n', start );
        if( end == std::string_view::npos )
            end = text.size();
        ++number;
        auto words = split_words( text.substr( start, end - start ) );
        start = end + 1;
        if( words.empty() || words[ 0 ][ 0 ] == '#' )
            continue;
        f( number, words );
    }
}

inline int parse_int( std::size_t line, const std::string& word, const char* what )
{
    try {
        std::size_t used = 0;
        int v = std::stoi( word, &used );
        if( used != word.size() )
            throw std::invalid_argument( word );
        return v;
    } catch( const std::logic_error& ) {
        throw ParseError( line, std::string( "expected an integer for " ) + what + ", got '" + word + "'" );
    }
}

inline bool valid_id( const std::string& id )
{
    return !id.empty() && std::all_of( id.begin(), id.end(), []( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_'; } );
}

inline std::map< std::string, int > index_of( const std::vector< std::string >& ids )
{
    std::map< std::string, int > m;
    for( std::size_t i = 0; i < ids.size(); ++i )
        m[ ids[ i ] ] = static_cast< int >( i );
    return m;
}

}  // namespace dasp::text
