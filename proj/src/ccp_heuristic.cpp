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

#include "dasp/ccp_heuristic.hpp"

#include <algorithm>
#include <stdexcept>

namespace dasp {

CcpVariant parse_ccp_variant( std::string_view name )
{
    if( name == "a1a2" )
        return CcpVariant::A1A2;
    if( name == "a2f" )
        return CcpVariant::A2F;
    if( name == "a2fo" )
        return CcpVariant::A2FO;
    if( name == "a2afo" )
        return CcpVariant::A2AFO;
    throw std::invalid_argument( "unknown CCP heuristic '" + std::string( name ) + "'" );
}

std::vector< std::pair< int, int > > a1_assign_borders( const CcpInstance& inst )
{
    std::vector< std::pair< int, int > > out;
    std::vector< int > count( inst.areas.size(), 0 );
    for( int v = 0; v < static_cast< int >( inst.size() ); ++v ) {
        int best = -1;
        for( int a : inst.border_areas( v ) )
            if( best < 0 || count[ a ] < count[ best ] )
                best = a;
        if( best < 0 )
            continue;
        ++count[ best ];
        out.push_back( { v, best } );
    }
    return out;
}

std::vector< int > ccp_scores( const CcpInstance& inst )
{
    std::vector< int > in( inst.size(), 0 ), out( inst.size(), 0 ), score( inst.size(), 0 );
    for( auto [ u, v ] : inst.edges ) {
        ++out[ u ];
        ++in[ v ];
    }
    for( std::size_t v = 0; v < inst.size(); ++v )
        score[ v ] = ( in[ v ] == 0 ) != ( out[ v ] == 0 ) ? 1 : 0;
    return score;
}

std::vector< std::vector< int > > ccp_orders( const CcpInstance& inst, CcpVariant variant )
{
    std::vector< int > base( inst.size() );
    for( std::size_t v = 0; v < inst.size(); ++v )
        base[ v ] = static_cast< int >( v );
    if( variant == CcpVariant::A1A2 || variant == CcpVariant::A2F )
        return { base };
    auto score = ccp_scores( inst );
    std::stable_sort( base.begin(), base.end(), [ & ]( int a, int b ) { return score[ a ] > score[ b ]; } );
    if( variant == CcpVariant::A2FO )
        return { base };
    std::vector< std::vector< int > > orders;
    for( int start : base ) {
        if( score[ start ] != 1 )
            break;
        std::vector< int > order{ start };
        for( int v : base )
            if( v != start )
                order.push_back( v );
        orders.push_back( std::move( order ) );
    }
    if( orders.empty() )
        orders.push_back( base );
    return orders;
}

CcpHeuristic::CcpHeuristic( CcpInstance instance, CcpVariant variant, CcpBudget budget )
    : instance_( std::move( instance ) ), variant_( variant ), budget_( budget )
{
    adj_ = instance_.neighbours();
    orders_ = ccp_orders( instance_, variant_ );
    if( variant_ == CcpVariant::A2FO || variant_ == CcpVariant::A2AFO )
        score_ = ccp_scores( instance_ );
    else
        score_.assign( instance_.size(), 0 );
    if( variant_ == CcpVariant::A1A2 )
        phase_ = Phase::A1;
    start_order( 0 );
}

std::vector< AtomId > CcpHeuristic::on_finished_parsing( const GroundProgram& program )
{
    std::vector< AtomId > frozen;
    auto need = [ & ]( const std::string& name ) {
        auto a = program.find( name );
        if( !a )
            throw std::runtime_error( "program lacks the atom " + name );
        frozen.push_back( *a );
        return *a;
    };
    const int n = static_cast< int >( instance_.size() );
    color_atoms_.assign( n, {} );
    bin_atoms_.assign( n, {} );
    for( int v = 0; v < n; ++v ) {
        for( int c = 0; c < instance_.colors; ++c )
            color_atoms_[ v ].push_back( need( color_atom( instance_, v, c ) ) );
        for( int b = 0; b < instance_.bins; ++b )
            bin_atoms_[ v ].push_back( need( bin_atom( instance_, v, b ) ) );
        for( int a : instance_.border_areas( v ) )
            need( area_atom( instance_, v, a ) );
    }
    a1_.clear();
    if( variant_ == CcpVariant::A1A2 )
        for( auto [ v, a ] : a1_assign_borders( instance_ ) )
            a1_.push_back( *program.find( area_atom( instance_, v, a ) ) );
    values_.assign( program.atom_count(), Value::Undefined );
    return frozen;
}

void CcpHeuristic::on_lit_true( Literal lit ) { values_[ lit.atom() ] = lit.negative() ? Value::False : Value::True; }
void CcpHeuristic::on_unroll_lit( Literal lit ) { values_[ lit.atom() ] = Value::Undefined; }

void CcpHeuristic::on_inco_choice( Literal ) { refuted_ = pending_.vertex >= 0; }
void CcpHeuristic::on_conflict( std::optional< Literal > ) { refuted_ = pending_.vertex >= 0; }

int CcpHeuristic::color_of( int v ) const
{
    for( int c = 0; c < instance_.colors; ++c )
        if( value( color_atoms_[ v ][ c ] ) == Value::True )
            return c;
    return -1;
}

int CcpHeuristic::bin_of( int v ) const
{
    for( int b = 0; b < instance_.bins; ++b )
        if( value( bin_atoms_[ v ][ b ] ) == Value::True )
            return b;
    return -1;
}

int CcpHeuristic::best_fit( int v ) const
{
    std::vector< int > load( instance_.bins, 0 );
    for( int w = 0; w < static_cast< int >( instance_.size() ); ++w ) {
        if( w == v || color_of( w ) != color_ )
            continue;
        int b = bin_of( w );
        if( b >= 0 )
            load[ b ] += instance_.sizes[ w ];
    }
    int best = -1, residual = 0;
    for( int b = 0; b < instance_.bins; ++b ) {
        if( refuted_bins_[ v ].count( b ) || value( bin_atoms_[ v ][ b ] ) == Value::False )
            continue;
        int r = instance_.capacity - load[ b ] - instance_.sizes[ v ];
        if( r >= 0 && ( best < 0 || r < residual ) ) {
            best = b;
            residual = r;
        }
    }
    return best;
}

bool CcpHeuristic::partial_solution() const
{
    for( int v = 0; v < static_cast< int >( instance_.size() ); ++v )
        if( color_of( v ) < 0 || bin_of( v ) < 0 )
            return false;
    return true;
}

bool CcpHeuristic::budget_spent() const
{
    if( budget_.mode == BudgetMode::Choices )
        return period_choices_ >= budget_.choices;
    double elapsed = std::chrono::duration< double >( std::chrono::steady_clock::now() - period_start_ ).count();
    return elapsed >= budget_.seconds;
}

void CcpHeuristic::start_order( std::size_t index )
{
    order_index_ = index;
    const std::size_t n = instance_.size();
    queue_.clear();
    color_ = 0;
    seeded_ = false;
    considered_.assign( n, false );
    skipped_.assign( n, false );
    refuted_bins_.assign( n, {} );
    pending_ = {};
    refuted_ = false;
    period_start_ = std::chrono::steady_clock::now();
    period_choices_ = 0;
}

void CcpHeuristic::next_color()
{
    ++color_;
    seeded_ = false;
    queue_.clear();
    skipped_.assign( instance_.size(), false );
    refuted_bins_.assign( instance_.size(), {} );
}

void CcpHeuristic::enqueue( int v )
{
    if( std::find( queue_.begin(), queue_.end(), v ) != queue_.end() )
        return;
    // keep the queue sorted by descending score, first come first served among equals
    auto at = std::find_if( queue_.begin(), queue_.end(), [ & ]( int w ) { return score_[ w ] < score_[ v ]; } );
    queue_.insert( at, v );
}

void CcpHeuristic::settle_refutation()
{
    if( !refuted_ || pending_.vertex < 0 ) {
        refuted_ = false;
        return;
    }
    const int v = pending_.vertex;
    if( pending_.color && value( pending_.color->atom() ) != Value::True ) {
        skipped_[ v ] = true;
        if( !queue_.empty() && queue_.front() == v )
            queue_.pop_front();
    }
    else if( pending_.bin_index >= 0 ) {
        refuted_bins_[ v ].insert( pending_.bin_index );
    }
    pending_ = {};
    refuted_ = false;
}

std::optional< CommandBatch > CcpHeuristic::a2_batch()
{
    const std::vector< int >& order = orders_[ order_index_ ];
    while( true ) {
        if( queue_.empty() ) {
            if( seeded_ ) {
                next_color();
                if( color_ >= instance_.colors )
                    return std::nullopt;
            }
            int seed = -1;
            for( int v : order ) {
                int c = color_of( v );
                if( !considered_[ v ] && !skipped_[ v ] && ( c < 0 || c == color_ ) ) {
                    seed = v;
                    break;
                }
            }
            if( seed < 0 ) {
                next_color();
                if( color_ >= instance_.colors )
                    return std::nullopt;
                continue;
            }
            queue_.push_back( seed );
            seeded_ = true;
        }

        const int v = queue_.front();
        const int c = color_of( v );
        if( considered_[ v ] || skipped_[ v ] || ( c >= 0 && c != color_ ) ) {
            queue_.pop_front();
            continue;
        }
        if( c < 0 ) {
            Literal color = Literal::pos( color_atoms_[ v ][ color_ ] );
            int b = best_fit( v );
            if( value( color.atom() ) == Value::False || b < 0 ) {
                skipped_[ v ] = true;
                queue_.pop_front();
                continue;
            }
            Literal bin = Literal::pos( bin_atoms_[ v ][ b ] );
            pending_ = Pending{ .vertex = v, .color = color, .bin = bin, .bin_index = b };
            return CommandBatch{ Choose{ color }, Choose{ bin } };
        }
        if( bin_of( v ) >= 0 ) {
            queue_.pop_front();
            considered_[ v ] = true;
            for( int w : adj_[ v ] )
                if( !considered_[ w ] && !skipped_[ w ] && color_of( w ) < 0 )
                    enqueue( w );
            continue;
        }
        int b = best_fit( v );
        if( b < 0 ) {
            // colored but no room left in this color
            queue_.pop_front();
            considered_[ v ] = true;
            continue;
        }
        Literal bin = Literal::pos( bin_atoms_[ v ][ b ] );
        pending_ = Pending{ .vertex = v, .color = std::nullopt, .bin = bin, .bin_index = b };
        return CommandBatch{ Choose{ bin } };
    }
}

CommandBatch CcpHeuristic::leave_heuristic( bool spent )
{
    pending_ = {};
    refuted_ = false;
    if( variant_ != CcpVariant::A2AFO ) {
        phase_ = Phase::Done;
        return { Fallback{} };
    }
    // the default heuristic continues from the current assignment for one period
    phase_ = Phase::Default;
    period_start_ = std::chrono::steady_clock::now();
    period_choices_ = 1;
    if( spent )
        return { Unroll{}, Fallback{ .choices = 1, .activity = {}, .factor = {}, .sign = {} } };
    return { Fallback{ .choices = 1, .activity = {}, .factor = {}, .sign = {} } };
}

CommandBatch CcpHeuristic::on_choice_required()
{
    if( !clock_started_ ) {
        clock_started_ = true;
        period_start_ = std::chrono::steady_clock::now();
    }
    switch( phase_ ) {
    case Phase::Done:
        return { Fallback{} };
    case Phase::Default:
        if( budget_spent() ) {
            if( order_index_ + 1 >= orders_.size() ) {
                phase_ = Phase::Done;
                return { Fallback{} };
            }
            start_order( order_index_ + 1 );
            phase_ = Phase::Heuristic;
            return { Unroll{} };
        }
        ++period_choices_;
        return { Fallback{ .choices = 1, .activity = {}, .factor = {}, .sign = {} } };
    case Phase::A1:
        phase_ = Phase::Heuristic;
        if( !a1_.empty() ) {
            CommandBatch batch;
            for( AtomId a : a1_ )
                batch.push_back( Choose{ Literal::pos( a ) } );
            choices_ += a1_.size();
            return batch;
        }
        break;
    case Phase::Heuristic:
        break;
    }

    settle_refutation();
    const bool budgeted = variant_ != CcpVariant::A1A2;
    if( budgeted && budget_spent() )
        return leave_heuristic( true );
    if( budgeted && partial_solution() )
        return leave_heuristic( false );
    auto batch = a2_batch();
    if( !batch )
        return leave_heuristic( false );
    choices_ += batch->size();
    period_choices_ += static_cast< std::int64_t >( batch->size() );
    return *batch;
}

}  // namespace dasp
