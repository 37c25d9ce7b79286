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

#include "dasp/symbol.hpp"

#include "dasp/program.hpp"

namespace dasp {

namespace {

bool is_token_char( char c )
{
    return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) || c == '_';
}

bool is_token( std::string_view t )
{
    if( t.empty() )
        return false;
    for( char c : t )
        if( !is_token_char( c ) )
            return false;
    return true;
}

bool split( std::string_view text, Symbol* out )
{
    auto open = text.find( '(' );
    if( open == std::string_view::npos ) {
        if( !is_token( text ) )
            return false;
        if( out )
            out->predicate = std::string( text );
        return true;
    }
    if( text.back() != ')' || !is_token( text.substr( 0, open ) ) )
        return false;
    std::string_view inner = text.substr( open + 1, text.size() - open - 2 );
    std::vector< std::string > args;
    std::size_t start = 0;
    while( true ) {
        auto comma = inner.find( ',', start );
        std::string_view arg = inner.substr( start, comma == std::string_view::npos ? std::string_view::npos : comma - start );
        if( !is_token( arg ) )
            return false;
        args.emplace_back( arg );
        if( comma == std::string_view::npos )
            break;
        start = comma + 1;
    }
    if( out ) {
        out->predicate = std::string( text.substr( 0, open ) );
        out->args = std::move( args );
    }
    return true;
}

}  // namespace

bool is_valid_symbol( std::string_view text )
{
    return split( text, nullptr );
}

Symbol parse_symbol( std::string_view text )
{
    Symbol s;
    if( !split( text, &s ) )
        throw ProgramError( "malformed symbol '" + std::string( text ) + "'" );
    return s;
}

std::string format_symbol( const Symbol& symbol )
{
    std::string out = symbol.predicate;
    if( symbol.args.empty() )
        return out;
    out += '(';
    for( std::size_t i = 0; i < symbol.args.size(); ++i ) {
        if( i )
            out += ',';
        out += symbol.args[ i ];
    }
    out += ')';
    return out;
}

std::string format_symbol( std::string_view predicate, std::initializer_list< std::string_view > args )
{
    Symbol s{ std::string( predicate ), {} };
    for( auto a : args )
        s.args.emplace_back( a );
    return format_symbol( s );
}

}  // namespace dasp
