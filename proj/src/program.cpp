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

#include "dasp/program.hpp"

#include "dasp/symbol.hpp"

#include <algorithm>

namespace dasp {

Literal Literal::from_signed( std::int64_t value )
{
    if( value < 0 )
        return Literal( static_cast< AtomId >( -value ), true );
    return Literal( static_cast< AtomId >( value ), false );
}

bool Rule::is_vacuous() const
{
    for( AtomId a : pos )
        if( std::find( neg.begin(), neg.end(), a ) != neg.end() )
            return true;
    return false;
}

GroundProgram::GroundProgram() : names_( 1 ) {}

AtomId GroundProgram::add_atom( std::string name )
{
    AtomId id = static_cast< AtomId >( names_.size() );
    names_.emplace_back();
    if( !name.empty() )
        set_name( id, std::move( name ) );
    return id;
}

AtomId GroundProgram::atom( std::string_view name )
{
    if( auto found = find( name ) )
        return *found;
    return add_atom( std::string( name ) );
}

std::optional< AtomId > GroundProgram::find( std::string_view name ) const
{
    auto it = by_name_.find( std::string( name ) );
    if( it == by_name_.end() )
        return std::nullopt;
    return it->second;
}

void GroundProgram::ensure_atom( AtomId id )
{
    if( id >= names_.size() )
        names_.resize( std::size_t( id ) + 1 );
}

void GroundProgram::set_name( AtomId id, std::string name )
{
    if( id == kBottom )
        throw ProgramError( "the falsum atom cannot be named" );
    if( !is_valid_symbol( name ) )
        throw ProgramError( "invalid atom name '" + name + "'" );
    ensure_atom( id );
    if( names_[ id ] == name )
        return;
    auto it = by_name_.find( name );
    if( it != by_name_.end() )
        throw ProgramError( "duplicate atom name '" + name + "'" );
    if( !names_[ id ].empty() )
        by_name_.erase( names_[ id ] );
    by_name_.emplace( name, id );
    names_[ id ] = std::move( name );
}

void GroundProgram::add_rule( Rule rule )
{
    for( AtomId a : rule.pos )
        if( a == kBottom )
            throw ProgramError( "the falsum atom cannot occur in a rule body" );
    for( AtomId a : rule.neg )
        if( a == kBottom )
            throw ProgramError( "the falsum atom cannot occur in a rule body" );
    ensure_atom( rule.head );
    for( AtomId a : rule.pos )
        ensure_atom( a );
    for( AtomId a : rule.neg )
        ensure_atom( a );
    rules_.push_back( std::move( rule ) );
}

void GroundProgram::add_rule( AtomId head, std::vector< AtomId > pos, std::vector< AtomId > neg )
{
    add_rule( Rule{ head, std::move( pos ), std::move( neg ) } );
}

Interpretation::Interpretation( std::size_t atom_count ) : values_( std::max< std::size_t >( atom_count, 1 ), Value::Undefined )
{
    values_[ kBottom ] = Value::False;
}

Interpretation Interpretation::from_true_atoms( std::size_t atom_count, std::span< const AtomId > true_atoms )
{
    Interpretation result( atom_count );
    for( AtomId a = 1; a < result.size(); ++a )
        result.values_[ a ] = Value::False;
    for( AtomId a : true_atoms )
        result.set( a, Value::True );
    return result;
}

void Interpretation::set( AtomId id, Value v )
{
    if( id == kBottom && v == Value::True )
        throw ProgramError( "the falsum atom cannot be true" );
    if( id >= values_.size() )
        throw ProgramError( "atom " + std::to_string( id ) + " is outside the interpretation" );
    values_[ id ] = v;
}

bool Interpretation::is_total() const
{
    return std::none_of( values_.begin(), values_.end(), []( Value v ) { return v == Value::Undefined; } );
}

std::vector< AtomId > Interpretation::true_atoms() const
{
    std::vector< AtomId > out;
    for( AtomId a = 1; a < values_.size(); ++a )
        if( values_[ a ] == Value::True )
            out.push_back( a );
    return out;
}

}  // namespace dasp
