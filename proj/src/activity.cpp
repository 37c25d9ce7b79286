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

#include "dasp/activity.hpp"

#include <random>

namespace dasp {

ActivityTable::ActivityTable( std::size_t atom_count, std::uint64_t seed )
    : activity_( atom_count, 0.0 ),
      amplify_( atom_count, 1.0 ),
      sign_( atom_count, Sign::Negative ),
      tiebreak_( atom_count, 0 ),
      position_( atom_count, -1 )
{
    std::mt19937_64 rng( seed );
    for( auto& key : tiebreak_ )
        key = rng();
    for( AtomId a = 1; a < atom_count; ++a )
        insert( a );
}

void ActivityTable::set_activity( AtomId a, double value )
{
    activity_[ a ] = value;
    if( contains( a ) ) {
        sift_up( position_[ a ] );
        sift_down( position_[ a ] );
    }
}

void ActivityTable::bump( AtomId a )
{
    activity_[ a ] += increment_ * amplify_[ a ];
    if( contains( a ) )
        sift_up( position_[ a ] );
    if( activity_[ a ] > kRescaleLimit )
        scale_all( 1.0 / kRescaleLimit );
}

void ActivityTable::decay()
{
    increment_ *= 1.0 / kDecay;
    if( increment_ > kRescaleLimit )
        scale_all( 1.0 / kRescaleLimit );
}

void ActivityTable::bump_and_decay( std::span< const Literal > learned )
{
    for( Literal l : learned )
        if( l.atom() != kBottom && l.atom() < activity_.size() )
            bump( l.atom() );
    decay();
}

void ActivityTable::scale_all( double factor )
{
    for( double& a : activity_ )
        a *= factor;
    increment_ *= factor;
}

void ActivityTable::exclude( AtomId a )
{
    if( !contains( a ) )
        return;
    std::size_t i = position_[ a ];
    AtomId last = heap_.back();
    heap_.pop_back();
    position_[ a ] = -1;
    if( last != a ) {
        heap_[ i ] = last;
        position_[ last ] = i;
        sift_up( i );
        sift_down( position_[ last ] );
    }
}

void ActivityTable::insert( AtomId a )
{
    if( a == kBottom || a >= activity_.size() || contains( a ) )
        return;
    position_[ a ] = heap_.size();
    heap_.push_back( a );
    sift_up( heap_.size() - 1 );
}

std::optional< Literal > ActivityTable::choose( const std::function< bool( AtomId ) >& undefined )
{
    while( !heap_.empty() ) {
        AtomId a = heap_.front();
        if( undefined( a ) )
            return Literal( a, sign_[ a ] == Sign::Negative );
        pop();
    }
    return std::nullopt;
}

void ActivityTable::sift_up( std::size_t i )
{
    AtomId a = heap_[ i ];
    while( i > 0 ) {
        std::size_t parent = ( i - 1 ) / 2;
        if( !before( a, heap_[ parent ] ) )
            break;
        heap_[ i ] = heap_[ parent ];
        position_[ heap_[ i ] ] = i;
        i = parent;
    }
    heap_[ i ] = a;
    position_[ a ] = i;
}

void ActivityTable::sift_down( std::size_t i )
{
    AtomId a = heap_[ i ];
    while( true ) {
        std::size_t child = 2 * i + 1;
        if( child >= heap_.size() )
            break;
        if( child + 1 < heap_.size() && before( heap_[ child + 1 ], heap_[ child ] ) )
            ++child;
        if( !before( heap_[ child ], a ) )
            break;
        heap_[ i ] = heap_[ child ];
        position_[ heap_[ i ] ] = i;
        i = child;
    }
    heap_[ i ] = a;
    position_[ a ] = i;
}

AtomId ActivityTable::pop()
{
    AtomId top = heap_.front();
    exclude( top );
    return top;
}

bool LubyRestarts::on_conflict()
{
    if( ++since_restart_ < current_limit() )
        return false;
    since_restart_ = 0;
    ++index_;
    return true;
}

std::uint64_t LubyRestarts::luby( std::uint64_t index )
{
    std::uint64_t size = 1;
    std::uint64_t seq = 0;
    while( size < index + 1 ) {
        ++seq;
        size = 2 * size + 1;
    }
    std::uint64_t x = index;
    while( size - 1 != x ) {
        size = ( size - 1 ) >> 1;
        --seq;
        x = x % size;
    }
    return std::uint64_t( 1 ) << seq;
}

}  // namespace dasp
