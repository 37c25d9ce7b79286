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

#include "dasp/pup_heuristic.hpp"

#include "dasp/symbol.hpp"

#include <algorithm>
#include <map>

namespace dasp {

PupVariant parse_pup_variant( std::string_view name )
{
    if( name == "quickpup" )
        return PupVariant::QuickPup;
    if( name == "quickpup-star" || name == "quickpup_star" )
        return PupVariant::QuickPupStar;
    if( name == "pred" )
        return PupVariant::Pred;
    throw std::invalid_argument( "unknown PUP heuristic '" + std::string( name ) + "'" );
}

PupHeuristic::PupHeuristic( PupInstance instance, PupVariant variant )
    : instance_( std::move( instance ) ), variant_( variant )
{
    zones_ = static_cast< int >( instance_.zones.size() );
    order_ = bfs_order( instance_, pup_start_zone( instance_ ) );

    // vertices within two edges
    const int n = zones_ + static_cast< int >( instance_.sensors.size() );
    std::vector< std::vector< int > > adj( n );
    for( auto [ s, z ] : instance_.edges ) {
        adj[ z ].push_back( zones_ + s );
        adj[ zones_ + s ].push_back( z );
    }
    near_.resize( n );
    for( int v = 0; v < n; ++v ) {
        std::set< int > reach;
        for( int w : adj[ v ] ) {
            reach.insert( w );
            for( int x : adj[ w ] )
                reach.insert( x );
        }
        reach.erase( v );
        near_[ v ].assign( reach.begin(), reach.end() );
    }
}

std::vector< AtomId > PupHeuristic::on_finished_parsing( const GroundProgram& program )
{
    const int n = zones_ + static_cast< int >( instance_.sensors.size() );
    atoms_.assign( n, std::vector< AtomId >( instance_.units, kBottom ) );
    owner_.assign( program.atom_count(), { -1, -1 } );
    std::vector< AtomId > frozen;
    for( int v = 0; v < n; ++v )
        for( int u = 0; u < instance_.units; ++u ) {
            std::string name = v < zones_ ? zone_atom( u, instance_.zones[ v ] ) : sensor_atom( u, instance_.sensors[ v - zones_ ] );
            auto a = program.find( name );
            if( !a )
                throw std::runtime_error( "program lacks the assignment atom " + name );
            atoms_[ v ][ u ] = *a;
            owner_[ *a ] = { v, u };
            frozen.push_back( *a );
        }
    values_.assign( program.atom_count(), Value::Undefined );
    unit_load_.assign( instance_.units, 0 );
    return frozen;
}

void PupHeuristic::on_lit_true( Literal lit )
{
    values_[ lit.atom() ] = lit.negative() ? Value::False : Value::True;
    auto [ v, u ] = owner_[ lit.atom() ];
    if( u >= 0 && lit.positive() )
        ++unit_load_[ u ];
}

void PupHeuristic::on_unroll_lit( Literal lit )
{
    values_[ lit.atom() ] = Value::Undefined;
    auto [ v, u ] = owner_[ lit.atom() ];
    if( u >= 0 && lit.positive() )
        --unit_load_[ u ];
}

int PupHeuristic::unit_of( int vertex ) const
{
    for( int u = 0; u < instance_.units; ++u )
        if( is_true( atoms_[ vertex ][ u ] ) )
            return u;
    return -1;
}

std::vector< int > PupHeuristic::assigned_units() const
{
    std::vector< int > out;
    for( const PupVertex& v : order_ )
        out.push_back( unit_of( vertex_id( v ) ) );
    return out;
}

void PupHeuristic::refute( Frame& frame )
{
    frame.tried.insert( frame.unit );
    if( frame.was_new )
        frame.new_tried = true;
    frame.lit.reset();
}

void PupHeuristic::on_conflict( std::optional< Literal > )
{
    // only our choices are decisions, so the latest one failed under the earlier ones
    if( !frames_.empty() && frames_.back().lit )
        refute( frames_.back() );
}

void PupHeuristic::on_inco_choice( Literal lit )
{
    if( !frames_.empty() && frames_.back().lit == lit )
        refute( frames_.back() );
}

void PupHeuristic::sync()
{
    for( std::size_t j = 0; j < frames_.size(); ++j )
        if( !frames_[ j ].lit || !is_true( frames_[ j ].lit->atom() ) ) {
            frames_.resize( j + 1 );
            frames_[ j ].lit.reset();
            return;
        }
}

std::vector< int > PupHeuristic::candidates( const Frame& frame ) const
{
    const int v = vertex_id( order_[ frame.pos ] );
    std::vector< int > used, out;
    int fresh = -1;
    for( int u = 0; u < instance_.units; ++u ) {
        if( unit_load_[ u ] > 0 )
            used.push_back( u );
        else if( fresh < 0 )
            fresh = u;
    }
    auto push = [ & ]( int u ) {
        if( u < 0 || frame.tried.count( u ) || is_false( atoms_[ v ][ u ] ) )
            return;
        if( std::find( out.begin(), out.end(), u ) == out.end() )
            out.push_back( u );
    };
    if( frame.new_tried )
        fresh = -1;
    switch( variant_ ) {
    case PupVariant::QuickPup:
        push( fresh );
        for( int u : used )
            push( u );
        break;
    case PupVariant::QuickPupStar:
        for( int u : used )
            push( u );
        push( fresh );
        break;
    case PupVariant::Pred: {
        std::set< int > pred;
        for( int w : near_[ v ] ) {
            int u = unit_of( w );
            if( u >= 0 )
                pred.insert( u );
        }
        for( int u : pred )
            push( u );
        push( fresh );
        for( int u : used )
            push( u );
        break;
    }
    }
    return out;
}

CommandBatch PupHeuristic::on_choice_required()
{
    if( done_ )
        return { Fallback{} };
    sync();
    std::size_t p = 0;
    while( p < order_.size() && unit_of( vertex_id( order_[ p ] ) ) >= 0 )
        ++p;
    if( p == order_.size() ) {
        done_ = true;
        return { Fallback{} };
    }
    if( !frames_.empty() && !frames_.back().lit && frames_.back().pos != p )
        frames_.pop_back();
    if( frames_.empty() || frames_.back().lit ) {
        frames_.emplace_back();
        frames_.back().pos = p;
    }

    Frame& top = frames_.back();
    auto cands = candidates( top );
    if( !cands.empty() ) {
        int u = cands.front();
        top.unit = u;
        top.was_new = unit_load_[ u ] == 0;
        top.lit = Literal::pos( atoms_[ vertex_id( order_[ p ] ) ][ u ] );
        return { Choose{ *top.lit } };
    }

    // every unit is refuted for this vertex: no solution extends the earlier choices
    ++blocked_;
    frames_.pop_back();
    if( frames_.empty() )
        return { Unroll{}, AddConstraint{} };
    std::vector< Literal > prefix;
    for( const Frame& f : frames_ )
        prefix.push_back( *f.lit );
    Literal last = prefix.back();
    refute( frames_.back() );
    return { Unroll{ last }, AddConstraint{ prefix } };
}

}  // namespace dasp
