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

#include "dasp/pup.hpp"

#include "dasp/cardinality.hpp"
#include "dasp/gpf.hpp"
#include "dasp/symbol.hpp"
#include "text.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace dasp {

using namespace text;

namespace {

int unit_index( const PupInstance& instance, const std::string& name )
{
    if( name.size() < 2 || name[ 0 ] != 'u' )
        return -1;
    try {
        std::size_t used = 0;
        int k = std::stoi( name.substr( 1 ), &used );
        if( used != name.size() - 1 || k < 1 || k > instance.units )
            return -1;
        return k - 1;
    } catch( const std::logic_error& ) {
        return -1;
    }
}

}  // namespace

PupInstance parse_pup( std::string_view text )
{
    PupInstance inst;
    bool header = false;
    std::map< std::string, int > zones, sensors;
    for_each_line( text, [ & ]( std::size_t line, const std::vector< std::string >& w ) {
        const std::string& kind = w[ 0 ];
        auto arity = [ & ]( std::size_t n ) {
            if( w.size() != n + 1 )
                throw ParseError( line, "'" + kind + "' takes " + std::to_string( n ) + " fields" );
        };
        if( kind == "pup" ) {
            arity( 3 );
            if( header )
                throw ParseError( line, "duplicate header" );
            header = true;
            inst.ucap = parse_int( line, w[ 1 ], "UCAP" );
            inst.iucap = parse_int( line, w[ 2 ], "IUCAP" );
            inst.units = parse_int( line, w[ 3 ], "unit count" );
            if( inst.ucap <= 0 || inst.iucap <= 0 || inst.units <= 0 )
                throw ParseError( line, "capacities and unit count must be positive" );
            return;
        }
        if( !header )
            throw ParseError( line, "missing 'pup' header" );
        if( kind == "z" || kind == "s" ) {
            arity( 1 );
            if( !valid_id( w[ 1 ] ) )
                throw ParseError( line, "invalid id '" + w[ 1 ] + "'" );
            auto& ids = kind == "z" ? zones : sensors;
            auto& list = kind == "z" ? inst.zones : inst.sensors;
            if( !ids.emplace( w[ 1 ], static_cast< int >( list.size() ) ).second )
                throw ParseError( line, "duplicate id '" + w[ 1 ] + "'" );
            list.push_back( w[ 1 ] );
        }
        else if( kind == "e" ) {
            arity( 2 );
            auto s = sensors.find( w[ 1 ] );
            auto z = zones.find( w[ 2 ] );
            if( s == sensors.end() )
                throw ParseError( line, "edge names unknown sensor '" + w[ 1 ] + "'" );
            if( z == zones.end() )
                throw ParseError( line, "edge names unknown zone '" + w[ 2 ] + "'" );
            std::pair< int, int > e{ s->second, z->second };
            if( std::find( inst.edges.begin(), inst.edges.end(), e ) != inst.edges.end() )
                throw ParseError( line, "duplicate edge" );
            inst.edges.push_back( e );
        }
        else {
            throw ParseError( line, "unknown statement '" + kind + "'" );
        }
    } );
    if( !header )
        throw ParseError( 1, "missing 'pup' header" );
    return inst;
}

std::string serialize_pup( const PupInstance& instance )
{
    std::ostringstream out;
    out << "pup " << instance.ucap << ' ' << instance.iucap << ' ' << instance.units << '\n';
    for( auto& z : instance.zones )
        out << "z " << z << '\n';
    for( auto& s : instance.sensors )
        out << "s " << s << '\n';
    for( auto [ s, z ] : instance.edges )
        out << "e " << instance.sensors[ s ] << ' ' << instance.zones[ z ] << '\n';
    return out.str();
}

std::string unit_name( int unit ) { return "u" + std::to_string( unit + 1 ); }
std::string zone_atom( int unit, const std::string& zone ) { return format_symbol( "unit2zone", { unit_name( unit ), zone } ); }
std::string sensor_atom( int unit, const std::string& sensor ) { return format_symbol( "unit2sensor", { unit_name( unit ), sensor } ); }

GroundProgram encode_pup( const PupInstance& inst )
{
    GroundProgram p;
    const int nu = inst.units;
    std::vector< std::string > units;
    for( int u = 0; u < nu; ++u ) {
        units.push_back( unit_name( u ) );
        p.add_fact( p.atom( format_symbol( "unit", { units[ u ] } ) ) );
    }
    for( auto& z : inst.zones )
        p.add_fact( p.atom( format_symbol( "zone", { z } ) ) );
    for( auto& s : inst.sensors )
        p.add_fact( p.atom( format_symbol( "sensor", { s } ) ) );
    for( auto [ s, z ] : inst.edges )
        p.add_fact( p.atom( format_symbol( "zone2sensor", { inst.zones[ z ], inst.sensors[ s ] } ) ) );

    auto guess = [ & ]( const std::string& pred, const std::string& unit, const std::string& vertex ) {
        AtomId a = p.atom( format_symbol( pred, { unit, vertex } ) );
        AtomId na = p.atom( format_symbol( "n" + pred, { unit, vertex } ) );
        p.add_rule( a, {}, { na } );
        p.add_rule( na, {}, { a } );
        return a;
    };
    std::vector< std::vector< AtomId > > uz( nu ), us( nu );
    for( int u = 0; u < nu; ++u ) {
        for( auto& z : inst.zones )
            uz[ u ].push_back( guess( "unit2zone", units[ u ], z ) );
        for( auto& s : inst.sensors )
            us[ u ].push_back( guess( "unit2sensor", units[ u ], s ) );
    }

    // every zone and sensor sits on exactly one unit
    for( std::size_t z = 0; z < inst.zones.size(); ++z ) {
        std::vector< AtomId > in;
        for( int u = 0; u < nu; ++u )
            in.push_back( uz[ u ][ z ] );
        add_exactly_one( p, in, { "zoneone", { inst.zones[ z ] } } );
    }
    for( std::size_t s = 0; s < inst.sensors.size(); ++s ) {
        std::vector< AtomId > in;
        for( int u = 0; u < nu; ++u )
            in.push_back( us[ u ][ s ] );
        add_exactly_one( p, in, { "sensorone", { inst.sensors[ s ] } } );
    }
    for( int u = 0; u < nu; ++u ) {
        add_at_most( p, uz[ u ], inst.ucap, { "zonecap", { units[ u ] } } );
        add_at_most( p, us[ u ], inst.ucap, { "sensorcap", { units[ u ] } } );
    }

    // near(v,z): unit v holds a sensor of zone z
    std::vector< std::vector< AtomId > > near( nu, std::vector< AtomId >( inst.zones.size(), kBottom ) );
    for( int v = 0; v < nu; ++v )
        for( auto [ s, z ] : inst.edges ) {
            AtomId& a = near[ v ][ z ];
            if( a == kBottom )
                a = p.atom( format_symbol( "near", { units[ v ], inst.zones[ z ] } ) );
            p.add_rule( a, { us[ v ][ s ] } );
        }
    // partner(u,v) for u < v, derived from a zone on one side and one of its sensors on the other
    std::vector< std::vector< AtomId > > partner( nu, std::vector< AtomId >( nu, kBottom ) );
    for( int u = 0; u < nu; ++u )
        for( int v = u + 1; v < nu; ++v ) {
            AtomId a = p.atom( format_symbol( "partner", { units[ u ], units[ v ] } ) );
            partner[ u ][ v ] = partner[ v ][ u ] = a;
            for( std::size_t z = 0; z < inst.zones.size(); ++z ) {
                if( near[ v ][ z ] != kBottom )
                    p.add_rule( a, { uz[ u ][ z ], near[ v ][ z ] } );
                if( near[ u ][ z ] != kBottom )
                    p.add_rule( a, { uz[ v ][ z ], near[ u ][ z ] } );
            }
        }
    for( int u = 0; u < nu; ++u ) {
        std::vector< AtomId > in;
        for( int v = 0; v < nu; ++v )
            if( v != u )
                in.push_back( partner[ u ][ v ] );
        add_at_most( p, in, inst.iucap, { "partnercap", { units[ u ] } } );
    }
    return p;
}

std::vector< std::string > verify_pup( const PupInstance& inst, const PupSolution& sol )
{
    std::vector< std::string > out;
    auto in_range = [ & ]( int u ) { return u >= 0 && u < inst.units; };
    std::vector< int > zones( inst.units, 0 ), sensors( inst.units, 0 ), degree( inst.units, 0 );
    for( std::size_t z = 0; z < inst.zones.size(); ++z ) {
        int u = z < sol.zone_unit.size() ? sol.zone_unit[ z ] : -1;
        if( !in_range( u ) )
            out.push_back( "zone " + inst.zones[ z ] + " is not assigned to a unit" );
        else
            ++zones[ u ];
    }
    for( std::size_t s = 0; s < inst.sensors.size(); ++s ) {
        int u = s < sol.sensor_unit.size() ? sol.sensor_unit[ s ] : -1;
        if( !in_range( u ) )
            out.push_back( "sensor " + inst.sensors[ s ] + " is not assigned to a unit" );
        else
            ++sensors[ u ];
    }
    for( auto [ u, v ] : sol.partners ) {
        if( !in_range( u ) || !in_range( v ) || u >= v ) {
            out.push_back( "malformed partner pair (" + std::to_string( u ) + "," + std::to_string( v ) + ")" );
            continue;
        }
        ++degree[ u ];
        ++degree[ v ];
    }
    for( int u = 0; u < inst.units; ++u ) {
        if( zones[ u ] > inst.ucap )
            out.push_back( unit_name( u ) + " holds " + std::to_string( zones[ u ] ) + " zones, more than " + std::to_string( inst.ucap ) );
        if( sensors[ u ] > inst.ucap )
            out.push_back( unit_name( u ) + " holds " + std::to_string( sensors[ u ] ) + " sensors, more than " + std::to_string( inst.ucap ) );
        if( degree[ u ] > inst.iucap )
            out.push_back( unit_name( u ) + " has " + std::to_string( degree[ u ] ) + " partners, more than " + std::to_string( inst.iucap ) );
    }
    for( auto [ s, z ] : inst.edges ) {
        int us = s < int( sol.sensor_unit.size() ) ? sol.sensor_unit[ s ] : -1;
        int uz = z < int( sol.zone_unit.size() ) ? sol.zone_unit[ z ] : -1;
        if( !in_range( us ) || !in_range( uz ) || us == uz )
            continue;
        if( !sol.partners.count( { std::min( us, uz ), std::max( us, uz ) } ) )
            out.push_back( "sensor " + inst.sensors[ s ] + " on " + unit_name( us ) + " is not connected to zone " + inst.zones[ z ] + " on " + unit_name( uz ) );
    }
    return out;
}

PupSolution extract_pup( const PupInstance& inst, const std::vector< std::string >& true_atoms )
{
    PupSolution sol;
    sol.zone_unit.assign( inst.zones.size(), -1 );
    sol.sensor_unit.assign( inst.sensors.size(), -1 );
    auto zones = index_of( inst.zones ), sensors = index_of( inst.sensors );
    for( const std::string& name : true_atoms ) {
        if( !is_valid_symbol( name ) )
            continue;
        Symbol s = parse_symbol( name );
        if( s.args.size() != 2 )
            continue;
        int u = unit_index( inst, s.args[ 0 ] );
        if( u < 0 )
            continue;
        if( s.predicate == "unit2zone" && zones.count( s.args[ 1 ] ) ) {
            int& slot = sol.zone_unit[ zones[ s.args[ 1 ] ] ];
            if( slot >= 0 && slot != u )
                throw std::runtime_error( "zone " + s.args[ 1 ] + " is assigned twice" );
            slot = u;
        }
        else if( s.predicate == "unit2sensor" && sensors.count( s.args[ 1 ] ) ) {
            int& slot = sol.sensor_unit[ sensors[ s.args[ 1 ] ] ];
            if( slot >= 0 && slot != u )
                throw std::runtime_error( "sensor " + s.args[ 1 ] + " is assigned twice" );
            slot = u;
        }
        else if( s.predicate == "partner" ) {
            int v = unit_index( inst, s.args[ 1 ] );
            if( v >= 0 && v != u )
                sol.partners.insert( { std::min( u, v ), std::max( u, v ) } );
        }
    }
    for( std::size_t z = 0; z < inst.zones.size(); ++z )
        if( sol.zone_unit[ z ] < 0 )
            throw std::runtime_error( "witness assigns no unit to zone " + inst.zones[ z ] );
    for( std::size_t s = 0; s < inst.sensors.size(); ++s )
        if( sol.sensor_unit[ s ] < 0 )
            throw std::runtime_error( "witness assigns no unit to sensor " + inst.sensors[ s ] );
    return sol;
}

PupSolution extract_pup( const PupInstance& instance, const GroundProgram& program, const std::vector< AtomId >& witness )
{
    std::vector< std::string > names;
    for( AtomId a : witness )
        if( program.has_name( a ) )
            names.push_back( program.name( a ) );
    return extract_pup( instance, names );
}

std::string serialize_pup_solution( const PupInstance& inst, const PupSolution& sol )
{
    std::ostringstream out;
    for( std::size_t z = 0; z < inst.zones.size(); ++z )
        out << "zone " << inst.zones[ z ] << ' ' << unit_name( sol.zone_unit[ z ] ) << '\n';
    for( std::size_t s = 0; s < inst.sensors.size(); ++s )
        out << "sensor " << inst.sensors[ s ] << ' ' << unit_name( sol.sensor_unit[ s ] ) << '\n';
    for( auto [ u, v ] : sol.partners )
        out << "partner " << unit_name( u ) << ' ' << unit_name( v ) << '\n';
    return out.str();
}

PupSolution parse_pup_solution( const PupInstance& inst, std::string_view text )
{
    PupSolution sol;
    sol.zone_unit.assign( inst.zones.size(), -1 );
    sol.sensor_unit.assign( inst.sensors.size(), -1 );
    auto zones = index_of( inst.zones ), sensors = index_of( inst.sensors );
    for_each_line( text, [ & ]( std::size_t line, const std::vector< std::string >& w ) {
        if( w.size() != 3 )
            throw ParseError( line, "expected three fields" );
        if( w[ 0 ] == "partner" ) {
            int u = unit_index( inst, w[ 1 ] ), v = unit_index( inst, w[ 2 ] );
            if( u < 0 || v < 0 )
                throw ParseError( line, "unknown unit" );
            sol.partners.insert( { std::min( u, v ), std::max( u, v ) } );
            return;
        }
        int u = unit_index( inst, w[ 2 ] );
        if( u < 0 )
            throw ParseError( line, "unknown unit '" + w[ 2 ] + "'" );
        auto& ids = w[ 0 ] == "zone" ? zones : sensors;
        auto& slots = w[ 0 ] == "zone" ? sol.zone_unit : sol.sensor_unit;
        if( w[ 0 ] != "zone" && w[ 0 ] != "sensor" )
            throw ParseError( line, "unknown statement '" + w[ 0 ] + "'" );
        auto it = ids.find( w[ 1 ] );
        if( it == ids.end() )
            throw ParseError( line, "unknown " + w[ 0 ] + " '" + w[ 1 ] + "'" );
        slots[ it->second ] = u;
    } );
    return sol;
}

int pup_start_zone( const PupInstance& inst )
{
    std::vector< int > degree( inst.zones.size(), 0 );
    for( auto [ s, z ] : inst.edges )
        ++degree[ z ];
    int best = -1;
    for( std::size_t z = 0; z < degree.size(); ++z )
        if( best < 0 || degree[ z ] > degree[ best ] )
            best = static_cast< int >( z );
    return best;
}

std::vector< PupVertex > bfs_order( const PupInstance& inst, int start_zone )
{
    const int nz = static_cast< int >( inst.zones.size() );
    const int n = nz + static_cast< int >( inst.sensors.size() );
    std::vector< std::vector< int > > adj( n );
    for( auto [ s, z ] : inst.edges ) {
        adj[ z ].push_back( nz + s );
        adj[ nz + s ].push_back( z );
    }
    for( auto& list : adj )
        std::sort( list.begin(), list.end() );

    std::vector< bool > seen( n, false );
    std::vector< int > order;
    auto visit = [ & ]( int root ) {
        std::deque< int > queue{ root };
        seen[ root ] = true;
        while( !queue.empty() ) {
            int v = queue.front();
            queue.pop_front();
            order.push_back( v );
            for( int w : adj[ v ] )
                if( !seen[ w ] ) {
                    seen[ w ] = true;
                    queue.push_back( w );
                }
        }
    };
    if( start_zone >= 0 && start_zone < nz )
        visit( start_zone );
    for( int v = 0; v < n; ++v )
        if( !seen[ v ] ) {
            seen[ v ] = true;
            order.push_back( v );
        }

    std::vector< PupVertex > out;
    for( int v : order )
        out.push_back( v < nz ? PupVertex{ true, v } : PupVertex{ false, v - nz } );
    return out;
}

PupTopology parse_pup_topology( std::string_view name )
{
    if( name == "double" )
        return PupTopology::Double;
    if( name == "doublev" )
        return PupTopology::DoubleVariant;
    if( name == "triple" )
        return PupTopology::Triple;
    if( name == "grid" )
        return PupTopology::Grid;
    throw std::invalid_argument( "unknown topology '" + std::string( name ) + "'" );
}

PupInstance gen_pup( PupTopology topology, int a, int b, int ucap, int iucap )
{
    if( a < 1 || b < 1 )
        throw std::invalid_argument( "topology sizes must be at least 1" );
    if( ucap < 1 || iucap < 1 )
        throw std::invalid_argument( "capacities must be positive" );
    PupInstance inst;
    inst.ucap = ucap;
    inst.iucap = iucap;
    auto zone = [ & ]( std::string id ) {
        inst.zones.push_back( std::move( id ) );
        return static_cast< int >( inst.zones.size() ) - 1;
    };
    auto sensor = [ & ]( std::string id ) {
        inst.sensors.push_back( std::move( id ) );
        return static_cast< int >( inst.sensors.size() ) - 1;
    };
    switch( topology ) {
    case PupTopology::Double:
    case PupTopology::DoubleVariant: {
        // chain z1 - s1 - z2 - s2 - ... - z2k; the variant adds a zone at each end
        bool variant = topology == PupTopology::DoubleVariant;
        int first = variant ? 0 : 1, last = variant ? 2 * a + 1 : 2 * a;
        std::map< int, int > z;
        for( int i = first; i <= last; ++i )
            z[ i ] = zone( "z" + std::to_string( i ) );
        for( int i = 1; i <= 2 * a - 1; ++i ) {
            int s = sensor( "s" + std::to_string( i ) );
            inst.edges.push_back( { s, z[ i ] } );
            inst.edges.push_back( { s, z[ i + 1 ] } );
            if( variant && i == 1 )
                inst.edges.push_back( { s, z[ 0 ] } );
            if( variant && i == 2 * a - 1 )
                inst.edges.push_back( { s, z[ 2 * a + 1 ] } );
        }
        break;
    }
    case PupTopology::Triple: {
        for( int i = 1; i <= a + 2; ++i )
            zone( "z" + std::to_string( i ) );
        for( int i = 1; i <= a; ++i ) {
            int s = sensor( "s" + std::to_string( i ) );
            for( int j = 0; j < 3; ++j )
                inst.edges.push_back( { s, i - 1 + j } );
        }
        break;
    }
    case PupTopology::Grid: {
        // cells are zones; a sensor sits on every cell border
        const int w = a, h = b;
        auto cell = [ & ]( int r, int c ) { return r * w + c; };
        for( int r = 0; r < h; ++r )
            for( int c = 0; c < w; ++c )
                zone( "z" + std::to_string( r ) + "_" + std::to_string( c ) );
        for( int r = 0; r <= h; ++r )
            for( int c = 0; c < w; ++c ) {
                int s = sensor( "sh" + std::to_string( r ) + "_" + std::to_string( c ) );
                if( r > 0 )
                    inst.edges.push_back( { s, cell( r - 1, c ) } );
                if( r < h )
                    inst.edges.push_back( { s, cell( r, c ) } );
            }
        for( int r = 0; r < h; ++r )
            for( int c = 0; c <= w; ++c ) {
                int s = sensor( "sv" + std::to_string( r ) + "_" + std::to_string( c ) );
                if( c > 0 )
                    inst.edges.push_back( { s, cell( r, c - 1 ) } );
                if( c < w )
                    inst.edges.push_back( { s, cell( r, c ) } );
            }
        break;
    }
    }
    std::size_t most = std::max( inst.zones.size(), inst.sensors.size() );
    inst.units = std::max< int >( 1, static_cast< int >( ( most + ucap - 1 ) / ucap ) );
    return inst;
}

}  // namespace dasp
