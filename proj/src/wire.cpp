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

#include "dasp/wire.hpp"

#include <json.hpp>

#include <algorithm>

namespace dasp::wire {

using Json = nlohmann::ordered_json;

namespace {

Json lit_array( std::span< const Literal > lits )
{
    Json a = Json::array();
    for( Literal l : lits )
        a.push_back( l.to_signed() );
    return a;
}

std::string show( std::string_view line )
{
    constexpr std::size_t limit = 200;
    if( line.size() <= limit )
        return std::string( line );
    return std::string( line.substr( 0, limit ) ) + "...";
}

Json parse_line( std::string_view line )
{
    try {
        return Json::parse( line );
    } catch( const Json::parse_error& ) {
        throw WireError( "malformed JSON: " + show( line ) );
    }
}

std::int64_t integer( const Json& j, const char* what )
{
    if( !j.is_number_integer() )
        throw WireError( std::string( "expected an integer for " ) + what + ", got " + show( j.dump() ) );
    return j.get< std::int64_t >();
}

Literal literal( const Json& j, const char* what, bool allow_zero = false )
{
    std::int64_t v = integer( j, what );
    if( v == 0 && !allow_zero )
        throw WireError( std::string( "literal 0 is not allowed in " ) + what );
    return Literal::from_signed( v );
}

std::vector< Literal > literals( const Json& j, const char* what )
{
    if( !j.is_array() )
        throw WireError( std::string( "expected a list of literals for " ) + what );
    std::vector< Literal > out;
    for( const Json& x : j )
        out.push_back( literal( x, what ) );
    return out;
}

AtomId atom_id( const Json& j, const char* what )
{
    std::int64_t v = integer( j, what );
    if( v <= 0 || v > std::int64_t( UINT32_MAX / 2 ) )
        throw WireError( std::string( "atom id out of range in " ) + what + ": " + std::to_string( v ) );
    return static_cast< AtomId >( v );
}

/* [[atom, value], ...] */
template< typename F >
void pairs( const Json& j, const char* what, F&& f )
{
    if( !j.is_array() )
        throw WireError( std::string( "expected a list of [atom, value] pairs for " ) + what );
    for( const Json& p : j ) {
        if( !p.is_array() || p.size() != 2 )
            throw WireError( std::string( "expected a list of [atom, value] pairs for " ) + what );
        f( atom_id( p[ 0 ], what ), integer( p[ 1 ], what ) );
    }
}

Fallback parse_fallback( const Json& j )
{
    if( !j.is_object() )
        throw WireError( "fallback expects an object" );
    Fallback f;
    for( auto& [ key, value ] : j.items() ) {
        if( key == "n" )
            f.choices = integer( value, "fallback.n" );
        else if( key == "init" )
            pairs( value, "fallback.init", [ & ]( AtomId a, std::int64_t v ) { f.activity[ a ] = v; } );
        else if( key == "factor" )
            pairs( value, "fallback.factor", [ & ]( AtomId a, std::int64_t v ) { f.factor[ a ] = v; } );
        else if( key == "sign" )
            pairs( value, "fallback.sign", [ & ]( AtomId a, std::int64_t v ) {
                if( v != 1 && v != -1 )
                    throw WireError( "fallback.sign values are 1 or -1" );
                f.sign[ a ] = v > 0 ? Sign::Positive : Sign::Negative;
            } );
        else
            throw WireError( "unknown fallback field '" + key + "'" );
    }
    return f;
}

/* One command object; a choose list expands to several Choose commands. */
void append_command( const Json& j, CommandBatch& batch )
{
    if( !j.is_object() || j.size() != 1 )
        throw WireError( "expected a command object with one key, got " + show( j.dump() ) );
    auto it = j.begin();
    const std::string& key = it.key();
    const Json& value = it.value();
    if( key == "choose" ) {
        if( value.is_array() )
            for( Literal l : literals( value, "choose" ) )
                batch.push_back( Choose{ l } );
        else
            batch.push_back( Choose{ literal( value, "choose" ) } );
    }
    else if( key == "stop" ) {
        if( value != true )
            throw WireError( "stop expects true" );
        batch.push_back( AddConstraint{} );
    }
    else if( key == "unroll" ) {
        Literal l = literal( value, "unroll", true );
        batch.push_back( Unroll{ l.atom() == kBottom ? std::nullopt : std::optional< Literal >( l ) } );
    }
    else if( key == "fallback" )
        batch.push_back( parse_fallback( value ) );
    else if( key == "add_constraint" )
        batch.push_back( AddConstraint{ literals( value, "add_constraint" ) } );
    else
        throw WireError( "unknown command '" + key + "'" );
}

Json command_object( const Command& c )
{
    Json j = Json::object();
    if( auto x = std::get_if< Choose >( &c ) )
        j[ "choose" ] = x->lit.to_signed();
    else if( auto u = std::get_if< Unroll >( &c ) )
        j[ "unroll" ] = u->lit ? u->lit->to_signed() : 0;
    else if( auto f = std::get_if< Fallback >( &c ) ) {
        Json o = Json::object();
        o[ "n" ] = f->choices;
        auto put = [ & ]( const char* key, const auto& m, auto value ) {
            if( m.empty() )
                return;
            Json a = Json::array();
            for( auto& [ atom, v ] : m )
                a.push_back( Json::array( { atom, value( v ) } ) );
            o[ key ] = a;
        };
        put( "init", f->activity, []( std::int64_t v ) { return v; } );
        put( "factor", f->factor, []( std::int64_t v ) { return v; } );
        put( "sign", f->sign, []( Sign s ) { return s == Sign::Positive ? 1 : -1; } );
        j[ "fallback" ] = o;
    }
    else if( auto a = std::get_if< AddConstraint >( &c ) )
        j[ "add_constraint" ] = lit_array( a->body );
    return j;
}

}  // namespace

std::string atom_event( AtomId id, const std::string& name )
{
    Json j{ { "e", "atom" }, { "id", id }, { "name", name } };
    return j.dump();
}

std::string parsing_done_event() { return R"({"e":"parsing_done"})"; }
std::string search_event() { return R"({"e":"search"})"; }
std::string restart_event() { return R"({"e":"restart"})"; }
std::string choice_required_event() { return R"({"e":"choice_required"})"; }

std::string lits_event( std::string_view kind, std::span< const Literal > lits )
{
    Json j{ { "e", kind }, { "lits", lit_array( lits ) } };
    return j.dump();
}

std::string lit_event( std::string_view kind, std::optional< Literal > lit )
{
    Json j{ { "e", kind }, { "lit", lit ? lit->to_signed() : 0 } };
    return j.dump();
}

Event parse_event( std::string_view line )
{
    Json j = parse_line( line );
    if( !j.is_object() || !j.contains( "e" ) || !j[ "e" ].is_string() )
        throw WireError( "event without an \"e\" field: " + show( line ) );
    Event ev;
    ev.kind = j[ "e" ].get< std::string >();
    if( ev.kind == "atom" ) {
        ev.id = atom_id( j.value( "id", Json() ), "atom.id" );
        if( !j.contains( "name" ) || !j[ "name" ].is_string() )
            throw WireError( "atom event without a name" );
        ev.name = j[ "name" ].get< std::string >();
    }
    else if( ev.kind == "lit_true" || ev.kind == "unroll_lit" || ev.kind == "learn" )
        ev.lits = literals( j.value( "lits", Json() ), ev.kind.c_str() );
    else if( ev.kind == "conflict" || ev.kind == "inco_choice" ) {
        Literal l = literal( j.value( "lit", Json() ), ev.kind.c_str(), true );
        if( l.atom() != kBottom )
            ev.lit = l;
    }
    else if( ev.kind != "parsing_done" && ev.kind != "search" && ev.kind != "restart" && ev.kind != "choice_required" )
        throw WireError( "unknown event '" + ev.kind + "'" );
    return ev;
}

std::string ack() { return R"({"ack":true})"; }

std::string frozen_response( std::span< const AtomId > frozen )
{
    Json a = Json::array();
    for( AtomId x : frozen )
        a.push_back( x );
    Json j{ { "frozen", a } };
    return j.dump();
}

std::string command_response( const CommandBatch& batch )
{
    if( batch.size() == 1 && std::holds_alternative< Choose >( batch[ 0 ] ) )
        return command_object( batch[ 0 ] ).dump();
    Json a = Json::array();
    for( const Command& c : batch )
        a.push_back( command_object( c ) );
    return a.dump();
}

void parse_ack( std::string_view line )
{
    Json j = parse_line( line );
    if( !( j.is_object() && j.size() == 1 && j.contains( "ack" ) && j[ "ack" ] == true ) )
        throw WireError( "expected {\"ack\":true}, got " + show( line ) );
}

std::vector< AtomId > parse_frozen( std::string_view line )
{
    Json j = parse_line( line );
    if( !j.is_object() || j.size() != 1 || !j.contains( "frozen" ) || !j[ "frozen" ].is_array() )
        throw WireError( "expected {\"frozen\":[...]}, got " + show( line ) );
    std::vector< AtomId > out;
    for( const Json& x : j[ "frozen" ] )
        out.push_back( atom_id( x, "frozen" ) );
    return out;
}

ChoiceResponse parse_choice_response( std::string_view line )
{
    Json j = parse_line( line );
    ChoiceResponse r;
    if( j.is_number_integer() )
        r.batch.push_back( Choose{ literal( j, "choose" ) } );
    else if( j.is_array() && std::all_of( j.begin(), j.end(), []( const Json& x ) { return x.is_number_integer(); } ) )
        r.queue = literals( j, "choose" );
    else if( j.is_array() )
        for( const Json& c : j )
            append_command( c, r.batch );
    else if( j.is_object() && j.size() == 1 && j.contains( "choose" ) && j[ "choose" ].is_array() )
        r.queue = literals( j[ "choose" ], "choose" );
    else
        append_command( j, r.batch );
    if( r.queue.empty() && r.batch.empty() )
        throw WireError( "empty answer to choice_required: " + show( line ) );
    return r;
}

}  // namespace dasp::wire
