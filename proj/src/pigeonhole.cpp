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

#include "dasp/pigeonhole.hpp"

#include "dasp/symbol.hpp"

#include <string>
#include <vector>

namespace dasp {

GroundProgram encode_pigeonhole( int pigeons, int holes )
{
    if( pigeons < 0 || holes < 0 )
        throw ProgramError( "pigeon and hole counts must be non-negative" );
    GroundProgram p;
    auto num = []( int i ) { return std::to_string( i ); };
    for( int i = 1; i <= pigeons; ++i )
        p.add_fact( p.atom( format_symbol( "pigeon", { num( i ) } ) ) );
    for( int h = 1; h <= holes; ++h )
        p.add_fact( p.atom( format_symbol( "hole", { num( h ) } ) ) );

    std::vector< std::vector< AtomId > > in( pigeons + 1, std::vector< AtomId >( holes + 1 ) );
    for( int i = 1; i <= pigeons; ++i ) {
        for( int h = 1; h <= holes; ++h ) {
            AtomId inh = p.atom( format_symbol( "inHole", { num( i ), num( h ) } ) );
            AtomId outh = p.atom( format_symbol( "outHole", { num( i ), num( h ) } ) );
            in[ i ][ h ] = inh;
            p.add_rule( inh, {}, { outh } );
            p.add_rule( outh, {}, { inh } );
        }
    }
    for( int h = 1; h <= holes; ++h )
        for( int i = 1; i <= pigeons; ++i )
            for( int j = i + 1; j <= pigeons; ++j )
                p.add_constraint( { in[ i ][ h ], in[ j ][ h ] } );
    for( int i = 1; i <= pigeons; ++i )
        for( int h = 1; h <= holes; ++h )
            for( int k = h + 1; k <= holes; ++k )
                p.add_constraint( { in[ i ][ h ], in[ i ][ k ] } );
    for( int i = 1; i <= pigeons; ++i ) {
        AtomId some = p.atom( format_symbol( "inSomeHole", { num( i ) } ) );
        for( int h = 1; h <= holes; ++h )
            p.add_rule( some, { in[ i ][ h ] } );
        p.add_constraint( {}, { some } );
    }
    return p;
}

}  // namespace dasp
