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

#include "dasp/gpf.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

namespace dasp {

ParseError::ParseError( std::size_t line, const std::string& message )
    : std::runtime_error( "line " + std::to_string( line ) + ": " + message ), line_( line ) {}

namespace {

class LineReader {
public:
    LineReader( std::string_view line, std::size_t number ) : line_( line ), number_( number ) {}

    std::string_view token()
    {
        while( pos_ < line_.size() && ( line_[ pos_ ] == ' ' || line_[ pos_ ] == '\t' || line_[ pos_ ] == '\r' ) )
            ++pos_;
        std::size_t start = pos_;
        while( pos_ < line_.size() && line_[ pos_ ] != ' ' && line_[ pos_ ] != '\t' && line_[ pos_ ] != '\r' )
            ++pos_;
        return line_.substr( start, pos_ - start );
    }

    std::uint64_t number( const char* what )
    {
        auto t = token();
        if( t.empty() )
            throw ParseError( number_, std::string( "missing " ) + what );
        std::uint64_t value = 0;
        auto [ ptr, ec ] = std::from_chars( t.data(), t.data() + t.size(), value );
        if( ec != std::errc() || ptr != t.data() + t.size() )
            throw ParseError( number_, std::string( "expected a non-negative integer for " ) + what + ", got '" + std::string( t ) + "'" );
        return value;
    }

    AtomId atom( const char* what )
    {
        auto v = number( what );
        if( v > 0xFFFFFFFull )
            throw ParseError( number_, "atom id out of range" );
        return static_cast< AtomId >( v );
    }

    void finish()
    {
        auto t = token();
        if( !t.empty() )
            throw ParseError( number_, "trailing input '" + std::string( t ) + "'" );
    }

private:
    std::string_view line_;
    std::size_t number_;
    std::size_t pos_ = 0;
};

}  // namespace

GroundProgram parse_program( std::string_view text )
{
    GroundProgram program;
    std::size_t number = 0;
    bool seen_content = false;
    std::size_t start = 0;
    while( start <= text.size() ) {
        auto end = text.find( '\n', start );
        std::string_view line = text.substr( start, end == std::string_view::npos ? std::string_view::npos : end - start );
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++number;

        LineReader reader( line, number );
        auto kind = reader.token();
        if( kind.empty() || kind.front() == '#' )
            continue;
        if( kind == "p" ) {
            if( seen_content )
                throw ParseError( number, "header must precede atoms and rules" );
            if( reader.token() != "gpf" )
                throw ParseError( number, "unknown format in header" );
            if( reader.number( "format version" ) != 1 )
                throw ParseError( number, "unsupported format version" );
            reader.finish();
            seen_content = true;
        }
        else if( kind == "a" ) {
            AtomId id = reader.atom( "atom id" );
            if( id == kBottom )
                throw ParseError( number, "atom 0 is reserved" );
            auto name = reader.token();
            reader.finish();
            program.ensure_atom( id );
            if( !name.empty() ) {
                if( program.has_name( id ) && program.name( id ) != name )
                    throw ParseError( number, "atom " + std::to_string( id ) + " declared twice with different names" );
                try {
                    program.set_name( id, std::string( name ) );
                }
                catch( const ProgramError& e ) {
                    throw ParseError( number, e.what() );
                }
            }
            seen_content = true;
        }
        else if( kind == "r" ) {
            Rule rule;
            rule.head = reader.atom( "rule head" );
            auto npos = reader.number( "positive body size" );
            for( std::uint64_t i = 0; i < npos; ++i )
                rule.pos.push_back( reader.atom( "positive body atom" ) );
            auto nneg = reader.number( "negative body size" );
            for( std::uint64_t i = 0; i < nneg; ++i )
                rule.neg.push_back( reader.atom( "negative body atom" ) );
            reader.finish();
            try {
                program.add_rule( std::move( rule ) );
            }
            catch( const ProgramError& e ) {
                throw ParseError( number, e.what() );
            }
            seen_content = true;
        }
        else {
            throw ParseError( number, "unknown line kind '" + std::string( kind ) + "'" );
        }
    }
    return program;
}

GroundProgram read_program( std::istream& in )
{
    std::string text( ( std::istreambuf_iterator< char >( in ) ), std::istreambuf_iterator< char >() );
    return parse_program( text );
}

std::string serialize_program( const GroundProgram& program )
{
    std::ostringstream out;
    out << "p gpf 1\n";
    for( AtomId a = 1; a < program.atom_count(); ++a ) {
        out << "a " << a;
        if( program.has_name( a ) )
            out << ' ' << program.name( a );
        out << '\n';
    }
    for( const Rule& r : program.rules() ) {
        out << "r " << r.head << ' ' << r.pos.size();
        for( AtomId a : r.pos )
            out << ' ' << a;
        out << ' ' << r.neg.size();
        for( AtomId a : r.neg )
            out << ' ' << a;
        out << '\n';
    }
    return out.str();
}

}  // namespace dasp
