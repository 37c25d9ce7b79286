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

#include "dasp/ccp.hpp"

#include "dasp/cardinality.hpp"
#include "dasp/gpf.hpp"
#include "dasp/symbol.hpp"
#include "text.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace dasp {

using namespace text;

namespace {

/* Parses "<prefix><n>" with 1 <= n <= limit into n - 1, else -1. */
int numbered( const std::string& name, char prefix, int limit )
{
    if( name.size() < 2 || name[ 0 ] != prefix )
        return -1;
    try {
        std::size_t used = 0;
        int k = std::stoi( name.substr( 1 ), &used );
        if( used != name.size() - 1 || k < 1 || k > limit )
            return -1;
        return k - 1;
    } catch( const std::logic_error& ) {
        return -1;
    }
}

int area_by_label( const CcpInstance& inst, int label )
{
    for( std::size_t i = 0; i < inst.areas.size(); ++i )
        if( inst.areas[ i ].label == label )
            return static_cast< int >( i );
    return -1;
}

/* Vertices left on a cycle after repeatedly removing sources; empty for a DAG. */
std::set< int > cyclic_rest( const CcpInstance& inst )
{
    std::vector< int > indegree( inst.size(), 0 );
    std::vector< std::vector< int > > out( inst.size() );
    for( auto [ u, v ] : inst.edges ) {
        ++indegree[ v ];
        out[ u ].push_back( v );
    }
    std::deque< int > ready;
    for( std::size_t v = 0; v < inst.size(); ++v )
        if( indegree[ v ] == 0 )
            ready.push_back( static_cast< int >( v ) );
    std::set< int > rest;
    for( std::size_t v = 0; v < inst.size(); ++v )
        rest.insert( static_cast< int >( v ) );
    while( !ready.empty() ) {
        int u = ready.front();
        ready.pop_front();
        rest.erase( u );
        for( int v : out[ u ] )
            if( --indegree[ v ] == 0 )
                ready.push_back( v );
    }
    return rest;
}

}  // namespace

std::vector< int > CcpInstance::path_vertices( int which ) const
{
    std::set< int > s;
    for( auto [ u, v ] : which == 1 ? path1 : path2 ) {
        s.insert( u );
        s.insert( v );
    }
    return { s.begin(), s.end() };
}

std::vector< std::vector< int > > CcpInstance::neighbours() const
{
    std::vector< std::set< int > > adj( size() );
    for( auto [ u, v ] : edges ) {
        adj[ u ].insert( v );
        adj[ v ].insert( u );
    }
    std::vector< std::vector< int > > out;
    for( auto& s : adj )
        out.emplace_back( s.begin(), s.end() );
    return out;
}

std::vector< int > CcpInstance::border_areas( int v ) const
{
    std::vector< int > out;
    for( std::size_t a = 0; a < areas.size(); ++a )
        if( std::find( areas[ a ].border.begin(), areas[ a ].border.end(), v ) != areas[ a ].border.end() )
            out.push_back( static_cast< int >( a ) );
    return out;
}

CcpInstance parse_ccp( std::string_view text )
{
    CcpInstance inst;
    bool header = false;
    std::size_t last_line = 0;
    std::map< std::string, int > ids;
    std::map< std::pair< int, int >, std::size_t > edge_line;
    std::vector< std::pair< std::pair< int, int >, std::size_t > > path_lines;
    std::map< int, std::size_t > border_line;

    for_each_line( text, [ & ]( std::size_t line, const std::vector< std::string >& w ) {
        last_line = line;
        const std::string& kind = w[ 0 ];
        auto arity = [ & ]( std::size_t n ) {
            if( w.size() != n + 1 )
                throw ParseError( line, "'" + kind + "' takes " + std::to_string( n ) + " fields" );
        };
        auto vertex = [ & ]( const std::string& id ) {
            auto it = ids.find( id );
            if( it == ids.end() )
                throw ParseError( line, "unknown vertex '" + id + "'" );
            return it->second;
        };
        if( kind == "ccp" ) {
            arity( 4 );
            if( header )
                throw ParseError( line, "duplicate header" );
            header = true;
            inst.max_border = parse_int( line, w[ 1 ], "M" );
            inst.colors = parse_int( line, w[ 2 ], "C" );
            inst.bins = parse_int( line, w[ 3 ], "B" );
            inst.capacity = parse_int( line, w[ 4 ], "K" );
            if( inst.max_border < 0 || inst.colors <= 0 || inst.bins <= 0 || inst.capacity <= 0 )
                throw ParseError( line, "C, B and K must be positive and M nonnegative" );
            return;
        }
        if( !header )
            throw ParseError( line, "missing 'ccp' header" );
        if( kind == "v" ) {
            arity( 3 );
            if( !valid_id( w[ 1 ] ) || !valid_id( w[ 2 ] ) )
                throw ParseError( line, "invalid id '" + w[ 1 ] + "' or type '" + w[ 2 ] + "'" );
            if( !ids.emplace( w[ 1 ], static_cast< int >( inst.size() ) ).second )
                throw ParseError( line, "duplicate vertex '" + w[ 1 ] + "'" );
            int size = parse_int( line, w[ 3 ], "size" );
            if( size <= 0 )
                throw ParseError( line, "vertex sizes must be positive" );
            if( size > inst.capacity )
                throw ParseError( line, "vertex " + w[ 1 ] + " does not fit into a bin" );
            inst.ids.push_back( w[ 1 ] );
            inst.types.push_back( w[ 2 ] );
            inst.sizes.push_back( size );
        }
        else if( kind == "e" ) {
            arity( 2 );
            std::pair< int, int > e{ vertex( w[ 1 ] ), vertex( w[ 2 ] ) };
            if( !edge_line.emplace( e, line ).second )
                throw ParseError( line, "duplicate edge" );
            inst.edges.push_back( e );
        }
        else if( kind == "p1" || kind == "p2" ) {
            arity( 2 );
            std::pair< int, int > e{ vertex( w[ 1 ] ), vertex( w[ 2 ] ) };
            auto& path = kind == "p1" ? inst.path1 : inst.path2;
            if( std::find( path.begin(), path.end(), e ) != path.end() )
                throw ParseError( line, "duplicate path edge" );
            path.push_back( e );
            path_lines.push_back( { e, line } );
        }
        else if( kind == "area" || kind == "border" ) {
            if( w.size() < 2 )
                throw ParseError( line, "'" + kind + "' needs an index" );
            int label = parse_int( line, w[ 1 ], "area index" );
            int a = area_by_label( inst, label );
            if( a < 0 ) {
                inst.areas.push_back( CcpArea{ .label = label, .members = {}, .border = {} } );
                a = static_cast< int >( inst.areas.size() ) - 1;
            }
            auto& list = kind == "area" ? inst.areas[ a ].members : inst.areas[ a ].border;
            for( std::size_t i = 2; i < w.size(); ++i ) {
                int v = vertex( w[ i ] );
                if( std::find( list.begin(), list.end(), v ) != list.end() )
                    throw ParseError( line, "vertex " + w[ i ] + " listed twice" );
                list.push_back( v );
            }
            if( kind == "border" && !border_line.count( a ) )
                border_line[ a ] = line;
        }
        else {
            throw ParseError( line, "unknown statement '" + kind + "'" );
        }
    } );
    if( !header )
        throw ParseError( 1, "missing 'ccp' header" );

    for( auto& [ e, line ] : path_lines )
        if( !edge_line.count( e ) )
            throw ParseError( line, "path edge " + inst.ids[ e.first ] + " -> " + inst.ids[ e.second ] + " is not an edge of the graph" );
    for( auto& [ e, line ] : path_lines ) {
        auto& other = std::find( inst.path1.begin(), inst.path1.end(), e ) != inst.path1.end() ? inst.path2 : inst.path1;
        if( std::find( other.begin(), other.end(), e ) != other.end() )
            throw ParseError( line, "the two paths share an edge" );
    }
    for( auto& [ a, line ] : border_line )
        for( int v : inst.areas[ a ].border )
            if( std::find( inst.areas[ a ].members.begin(), inst.areas[ a ].members.end(), v ) == inst.areas[ a ].members.end() )
                throw ParseError( line, "border element " + inst.ids[ v ] + " is not in area " + std::to_string( inst.areas[ a ].label ) );
    auto rest = cyclic_rest( inst );
    if( !rest.empty() ) {
        std::size_t line = last_line;
        for( auto& [ e, l ] : edge_line )
            if( rest.count( e.first ) && rest.count( e.second ) )
                line = std::min( line, l );
        throw ParseError( line, "the graph has a cycle through " + inst.ids[ *rest.begin() ] );
    }
    return inst;
}

std::string serialize_ccp( const CcpInstance& inst )
{
    std::ostringstream out;
    out << "ccp " << inst.max_border << ' ' << inst.colors << ' ' << inst.bins << ' ' << inst.capacity << '\n';
    for( std::size_t v = 0; v < inst.size(); ++v )
        out << "v " << inst.ids[ v ] << ' ' << inst.types[ v ] << ' ' << inst.sizes[ v ] << '\n';
    for( auto [ u, v ] : inst.edges )
        out << "e " << inst.ids[ u ] << ' ' << inst.ids[ v ] << '\n';
    for( auto [ u, v ] : inst.path1 )
        out << "p1 " << inst.ids[ u ] << ' ' << inst.ids[ v ] << '\n';
    for( auto [ u, v ] : inst.path2 )
        out << "p2 " << inst.ids[ u ] << ' ' << inst.ids[ v ] << '\n';
    for( const CcpArea& a : inst.areas ) {
        out << "area " << a.label;
        for( int v : a.members )
            out << ' ' << inst.ids[ v ];
        out << '\n';
    }
    for( const CcpArea& a : inst.areas ) {
        if( a.border.empty() )
            continue;
        out << "border " << a.label;
        for( int v : a.border )
            out << ' ' << inst.ids[ v ];
        out << '\n';
    }
    return out.str();
}

std::string color_name( int color ) { return "c" + std::to_string( color + 1 ); }
std::string bin_name( int bin ) { return "b" + std::to_string( bin + 1 ); }
std::string area_name( const CcpArea& area ) { return "a" + std::to_string( area.label ); }

std::string color_atom( const CcpInstance& inst, int v, int color ) { return format_symbol( "color", { inst.ids[ v ], color_name( color ) } ); }
std::string bin_atom( const CcpInstance& inst, int v, int bin ) { return format_symbol( "bin", { inst.ids[ v ], bin_name( bin ) } ); }
std::string area_atom( const CcpInstance& inst, int v, int area ) { return format_symbol( "be2area", { inst.ids[ v ], area_name( inst.areas[ area ] ) } ); }

GroundProgram encode_ccp( const CcpInstance& inst )
{
    GroundProgram p;
    const int n = static_cast< int >( inst.size() ), nc = inst.colors, nb = inst.bins;
    auto guess = [ & ]( const std::string& name ) {
        AtomId a = p.atom( name );
        AtomId na = p.atom( "n" + name );
        p.add_rule( a, {}, { na } );
        p.add_rule( na, {}, { a } );
        return a;
    };

    // coloring
    std::vector< std::vector< AtomId > > color( n ), bin( n );
    for( int v = 0; v < n; ++v ) {
        for( int c = 0; c < nc; ++c )
            color[ v ].push_back( guess( color_atom( inst, v, c ) ) );
        add_exactly_one( p, color[ v ], { "colorone", { inst.ids[ v ] } } );
    }

    // bin packing, with separate bins per color
    for( int v = 0; v < n; ++v ) {
        for( int b = 0; b < nb; ++b )
            bin[ v ].push_back( guess( bin_atom( inst, v, b ) ) );
        add_exactly_one( p, bin[ v ], { "binone", { inst.ids[ v ] } } );
    }
    for( int c = 0; c < nc; ++c )
        for( int b = 0; b < nb; ++b ) {
            std::vector< AtomId > in;
            for( int v = 0; v < n; ++v ) {
                AtomId a = p.atom( format_symbol( "inbin", { inst.ids[ v ], color_name( c ), bin_name( b ) } ) );
                p.add_rule( a, { color[ v ][ c ], bin[ v ][ b ] } );
                in.push_back( a );
            }
            add_weighted_at_most( p, in, inst.sizes, inst.capacity, { "binload", { color_name( c ), bin_name( b ) } } );
        }

    // the two paths get different colors
    for( int u : inst.path_vertices( 1 ) )
        for( int v : inst.path_vertices( 2 ) )
            for( int c = 0; c < nc; ++c )
                p.add_constraint( { color[ u ][ c ], color[ v ][ c ] } );

    // matching of border elements to areas
    std::vector< std::vector< AtomId > > members( inst.areas.size() );
    for( int v = 0; v < n; ++v ) {
        std::vector< AtomId > in;
        for( int a : inst.border_areas( v ) ) {
            AtomId x = guess( area_atom( inst, v, a ) );
            in.push_back( x );
            members[ a ].push_back( x );
            for( int c = 0; c < nc; ++c ) {
                AtomId ac = p.atom( format_symbol( "areacolor", { area_name( inst.areas[ a ] ), color_name( c ) } ) );
                p.add_rule( ac, { x, color[ v ][ c ] } );
            }
        }
        if( !in.empty() )
            add_exactly_one( p, in, { "areaone", { inst.ids[ v ] } } );
    }
    for( std::size_t a = 0; a < inst.areas.size(); ++a ) {
        if( members[ a ].empty() )
            continue;
        const std::string name = area_name( inst.areas[ a ] );
        for( int c = 0; c < nc; ++c )
            for( int d = c + 1; d < nc; ++d )
                p.add_constraint( { p.atom( format_symbol( "areacolor", { name, color_name( c ) } ) ), p.atom( format_symbol( "areacolor", { name, color_name( d ) } ) ) } );
        add_at_most( p, members[ a ], inst.max_border, { "areacap", { name } } );
    }

    // connectedness: the first vertex of each color reaches all others of that color
    auto adj = inst.neighbours();
    for( int c = 0; c < nc; ++c ) {
        const std::string cn = color_name( c );
        std::vector< AtomId > before( n ), reach( n );
        for( int v = 0; v < n; ++v ) {
            before[ v ] = p.atom( format_symbol( "before", { inst.ids[ v ], cn } ) );
            reach[ v ] = p.atom( format_symbol( "reach", { inst.ids[ v ], cn } ) );
        }
        for( int v = 1; v < n; ++v ) {
            p.add_rule( before[ v ], { color[ v - 1 ][ c ] } );
            p.add_rule( before[ v ], { before[ v - 1 ] } );
        }
        for( int v = 0; v < n; ++v ) {
            AtomId root = p.atom( format_symbol( "root", { inst.ids[ v ], cn } ) );
            p.add_rule( root, { color[ v ][ c ] }, { before[ v ] } );
            p.add_rule( reach[ v ], { root } );
            for( int u : adj[ v ] )
                p.add_rule( reach[ v ], { reach[ u ], color[ v ][ c ] } );
            p.add_constraint( { color[ v ][ c ] }, { reach[ v ] } );
        }
    }
    return p;
}

std::vector< std::string > verify_ccp( const CcpInstance& inst, const CcpSolution& sol )
{
    std::vector< std::string > out;
    const int n = static_cast< int >( inst.size() );
    auto color = [ & ]( int v ) { return v < int( sol.color.size() ) && sol.color[ v ] >= 0 && sol.color[ v ] < inst.colors ? sol.color[ v ] : -1; };
    auto bin = [ & ]( int v ) { return v < int( sol.bin.size() ) && sol.bin[ v ] >= 0 && sol.bin[ v ] < inst.bins ? sol.bin[ v ] : -1; };
    auto area = [ & ]( int v ) { return v < int( sol.area.size() ) ? sol.area[ v ] : -1; };

    std::map< std::pair< int, int >, int > load;
    for( int v = 0; v < n; ++v ) {
        if( color( v ) < 0 )
            out.push_back( "vertex " + inst.ids[ v ] + " has no valid color" );
        if( bin( v ) < 0 )
            out.push_back( "vertex " + inst.ids[ v ] + " has no valid bin" );
        if( color( v ) >= 0 && bin( v ) >= 0 )
            load[ { color( v ), bin( v ) } ] += inst.sizes[ v ];
    }
    for( auto [ key, l ] : load )
        if( l > inst.capacity )
            out.push_back( "bin " + bin_name( key.second ) + " of color " + color_name( key.first ) + " holds " + std::to_string( l ) + ", more than " + std::to_string( inst.capacity ) );

    for( int u : inst.path_vertices( 1 ) )
        for( int v : inst.path_vertices( 2 ) )
            if( color( u ) >= 0 && color( u ) == color( v ) )
                out.push_back( "path vertices " + inst.ids[ u ] + " and " + inst.ids[ v ] + " share color " + color_name( color( u ) ) );

    std::vector< int > count( inst.areas.size(), 0 );
    std::vector< std::set< int > > colors( inst.areas.size() );
    for( int v = 0; v < n; ++v ) {
        auto candidates = inst.border_areas( v );
        int a = area( v );
        if( candidates.empty() ) {
            if( a >= 0 )
                out.push_back( "vertex " + inst.ids[ v ] + " is not a border element but is assigned to an area" );
            continue;
        }
        if( a < 0 || std::find( candidates.begin(), candidates.end(), a ) == candidates.end() ) {
            out.push_back( "border element " + inst.ids[ v ] + " is not assigned to one of its areas" );
            continue;
        }
        ++count[ a ];
        if( color( v ) >= 0 )
            colors[ a ].insert( color( v ) );
    }
    for( std::size_t a = 0; a < inst.areas.size(); ++a ) {
        const std::string name = "A" + std::to_string( inst.areas[ a ].label );
        if( colors[ a ].size() > 1 )
            out.push_back( "area " + name + " has border elements of different colors" );
        if( count[ a ] > inst.max_border )
            out.push_back( "area " + name + " has " + std::to_string( count[ a ] ) + " border elements, more than " + std::to_string( inst.max_border ) );
    }

    auto adj = inst.neighbours();
    for( int c = 0; c < inst.colors; ++c ) {
        int root = -1, size = 0;
        for( int v = 0; v < n; ++v )
            if( color( v ) == c ) {
                ++size;
                if( root < 0 )
                    root = v;
            }
        if( root < 0 )
            continue;
        std::vector< bool > seen( n, false );
        std::deque< int > queue{ root };
        seen[ root ] = true;
        int reached = 0;
        while( !queue.empty() ) {
            int v = queue.front();
            queue.pop_front();
            ++reached;
            for( int w : adj[ v ] )
                if( !seen[ w ] && color( w ) == c ) {
                    seen[ w ] = true;
                    queue.push_back( w );
                }
        }
        if( reached != size )
            out.push_back( "color " + color_name( c ) + " is not connected" );
    }
    return out;
}

CcpSolution extract_ccp( const CcpInstance& inst, const std::vector< std::string >& true_atoms )
{
    CcpSolution sol;
    sol.color.assign( inst.size(), -1 );
    sol.bin.assign( inst.size(), -1 );
    sol.area.assign( inst.size(), -1 );
    auto ids = index_of( inst.ids );
    auto set = [ & ]( int& slot, int value, const std::string& what, const std::string& id ) {
        if( slot >= 0 && slot != value )
            throw std::runtime_error( "vertex " + id + " has two " + what + "s" );
        slot = value;
    };
    for( const std::string& name : true_atoms ) {
        if( !is_valid_symbol( name ) )
            continue;
        Symbol s = parse_symbol( name );
        if( s.args.size() != 2 || !ids.count( s.args[ 0 ] ) )
            continue;
        int v = ids[ s.args[ 0 ] ];
        if( s.predicate == "color" ) {
            int c = numbered( s.args[ 1 ], 'c', inst.colors );
            if( c >= 0 )
                set( sol.color[ v ], c, "color", s.args[ 0 ] );
        }
        else if( s.predicate == "bin" ) {
            int b = numbered( s.args[ 1 ], 'b', inst.bins );
            if( b >= 0 )
                set( sol.bin[ v ], b, "bin", s.args[ 0 ] );
        }
        else if( s.predicate == "be2area" ) {
            for( std::size_t a = 0; a < inst.areas.size(); ++a )
                if( area_name( inst.areas[ a ] ) == s.args[ 1 ] )
                    set( sol.area[ v ], static_cast< int >( a ), "area", s.args[ 0 ] );
        }
    }
    for( std::size_t v = 0; v < inst.size(); ++v )
        if( sol.color[ v ] < 0 || sol.bin[ v ] < 0 )
            throw std::runtime_error( "witness lacks a color or bin for vertex " + inst.ids[ v ] );
    return sol;
}

CcpSolution extract_ccp( const CcpInstance& instance, const GroundProgram& program, const std::vector< AtomId >& witness )
{
    std::vector< std::string > names;
    for( AtomId a : witness )
        if( program.has_name( a ) )
            names.push_back( program.name( a ) );
    return extract_ccp( instance, names );
}

std::string serialize_ccp_solution( const CcpInstance& inst, const CcpSolution& sol )
{
    std::ostringstream out;
    for( std::size_t v = 0; v < inst.size(); ++v )
        out << "color " << inst.ids[ v ] << ' ' << sol.color[ v ] + 1 << '\n';
    for( std::size_t v = 0; v < inst.size(); ++v )
        out << "bin " << inst.ids[ v ] << ' ' << sol.bin[ v ] + 1 << '\n';
    for( std::size_t v = 0; v < inst.size(); ++v )
        if( sol.area[ v ] >= 0 )
            out << "area " << inst.ids[ v ] << ' ' << inst.areas[ sol.area[ v ] ].label << '\n';
    return out.str();
}

CcpSolution parse_ccp_solution( const CcpInstance& inst, std::string_view text )
{
    CcpSolution sol;
    sol.color.assign( inst.size(), -1 );
    sol.bin.assign( inst.size(), -1 );
    sol.area.assign( inst.size(), -1 );
    auto ids = index_of( inst.ids );
    for_each_line( text, [ & ]( std::size_t line, const std::vector< std::string >& w ) {
        if( w.size() != 3 )
            throw ParseError( line, "expected three fields" );
        auto it = ids.find( w[ 1 ] );
        if( it == ids.end() )
            throw ParseError( line, "unknown vertex '" + w[ 1 ] + "'" );
        int value = parse_int( line, w[ 2 ], "number" );
        if( w[ 0 ] == "color" )
            sol.color[ it->second ] = value - 1;
        else if( w[ 0 ] == "bin" )
            sol.bin[ it->second ] = value - 1;
        else if( w[ 0 ] == "area" ) {
            int a = area_by_label( inst, value );
            if( a < 0 )
                throw ParseError( line, "unknown area " + w[ 2 ] );
            sol.area[ it->second ] = a;
        }
        else
            throw ParseError( line, "unknown statement '" + w[ 0 ] + "'" );
    } );
    return sol;
}

bool ccp_solvable( const CcpInstance& inst, std::size_t max_vertices )
{
    if( inst.size() > max_vertices )
        throw std::length_error( "exhaustive search is limited to " + std::to_string( max_vertices ) + " vertices" );
    const int n = static_cast< int >( inst.size() );
    std::vector< std::vector< int > > candidates( n );
    for( int v = 0; v < n; ++v )
        candidates[ v ] = inst.border_areas( v );
    // one digit per color, bin and area choice
    std::vector< int > radix, digit;
    for( int v = 0; v < n; ++v ) {
        radix.push_back( inst.colors );
        radix.push_back( inst.bins );
        radix.push_back( std::max< int >( 1, static_cast< int >( candidates[ v ].size() ) ) );
    }
    digit.assign( radix.size(), 0 );
    CcpSolution sol;
    sol.color.resize( n );
    sol.bin.resize( n );
    sol.area.resize( n );
    while( true ) {
        for( int v = 0; v < n; ++v ) {
            sol.color[ v ] = digit[ 3 * v ];
            sol.bin[ v ] = digit[ 3 * v + 1 ];
            sol.area[ v ] = candidates[ v ].empty() ? -1 : candidates[ v ][ digit[ 3 * v + 2 ] ];
        }
        if( verify_ccp( inst, sol ).empty() )
            return true;
        std::size_t i = 0;
        while( i < digit.size() && ++digit[ i ] == radix[ i ] )
            digit[ i++ ] = 0;
        if( i == digit.size() )
            return false;
    }
}

CcpInstance gen_ccp_grid( int w, int h, const CcpGridParams& params )
{
    if( w < 1 || h < 1 )
        throw std::invalid_argument( "grid sides must be at least 1" );
    if( h == 1 && params.paths )
        throw std::invalid_argument( "a grid of height 1 cannot hold two disjoint paths" );
    if( params.colors < 1 || params.bins < 1 || params.capacity < 1 || params.max_border < 0 )
        throw std::invalid_argument( "C, B and K must be positive and M nonnegative" );
    if( params.size_a < 1 || params.size_b < 1 || std::max( params.size_a, params.size_b ) > params.capacity )
        throw std::invalid_argument( "vertex sizes must be positive and fit into a bin" );
    CcpInstance inst;
    inst.max_border = params.max_border;
    inst.colors = params.colors;
    inst.bins = params.bins;
    inst.capacity = params.capacity;
    auto cell = [ & ]( int r, int c ) { return r * w + c; };
    for( int r = 0; r < h; ++r )
        for( int c = 0; c < w; ++c ) {
            bool odd = ( r + c ) % 2;
            inst.ids.push_back( "v" + std::to_string( r ) + "_" + std::to_string( c ) );
            inst.types.push_back( odd ? "b" : "a" );
            inst.sizes.push_back( odd ? params.size_b : params.size_a );
        }
    for( int r = 0; r < h; ++r )
        for( int c = 0; c < w; ++c ) {
            if( c + 1 < w )
                inst.edges.push_back( { cell( r, c ), cell( r, c + 1 ) } );
            if( r + 1 < h )
                inst.edges.push_back( { cell( r, c ), cell( r + 1, c ) } );
        }
    if( params.paths )
        for( int c = 0; c + 1 < w; ++c ) {
            inst.path1.push_back( { cell( 0, c ), cell( 0, c + 1 ) } );
            inst.path2.push_back( { cell( h - 1, c ), cell( h - 1, c + 1 ) } );
        }
    for( int r = 0; r < h; ++r ) {
        CcpArea a;
        a.label = r + 1;
        for( int c = 0; c < w; ++c )
            a.members.push_back( cell( r, c ) );
        a.border.push_back( cell( r, 0 ) );
        if( w > 1 )
            a.border.push_back( cell( r, w - 1 ) );
        inst.areas.push_back( std::move( a ) );
    }
    return inst;
}

}  // namespace dasp
