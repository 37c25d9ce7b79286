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

#pragma once

#include "dasp/program.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dasp {

/* A safety area: its vertices and the border elements among them. */
struct CcpArea {
    int label = 0;
    std::vector< int > members;
    std::vector< int > border;

    bool operator==( const CcpArea& ) const = default;
};

/*
 * Combined configuration instance: a directed acyclic graph of typed,
 * sized vertices, two paths given as edge lists, safety areas, and the
 * limits M (border elements per area), C (colors), B (bins per color)
 * and K (bin capacity).
 */
struct CcpInstance {
    int max_border = 1;
    int colors = 1;
    int bins = 1;
    int capacity = 1;
    std::vector< std::string > ids;
    std::vector< std::string > types;
    std::vector< int > sizes;
    /* (from, to) vertex indices */
    std::vector< std::pair< int, int > > edges;
    std::vector< std::pair< int, int > > path1;
    std::vector< std::pair< int, int > > path2;
    std::vector< CcpArea > areas;

    bool operator==( const CcpInstance& ) const = default;

    std::size_t size() const { return ids.size(); }
    /* Vertices touched by the path edges, sorted. */
    std::vector< int > path_vertices( int which ) const;
    /* Undirected adjacency, neighbours sorted by index. */
    std::vector< std::vector< int > > neighbours() const;
    /* Indices into `areas` whose border contains vertex v. */
    std::vector< int > border_areas( int v ) const;
    bool is_border( int v ) const { return !border_areas( v ).empty(); }
};

/* Colors and bins are 0-based; area holds an index into `areas`, -1 for none. */
struct CcpSolution {
    std::vector< int > color;
    std::vector< int > bin;
    std::vector< int > area;

    bool operator==( const CcpSolution& ) const = default;
};

/* Throws ParseError on malformed text, cycles, foreign path edges, or borders outside their area. */
CcpInstance parse_ccp( std::string_view text );
std::string serialize_ccp( const CcpInstance& instance );

std::string color_name( int color );
std::string bin_name( int bin );
std::string area_name( const CcpArea& area );
std::string color_atom( const CcpInstance& instance, int v, int color );
std::string bin_atom( const CcpInstance& instance, int v, int bin );
std::string area_atom( const CcpInstance& instance, int v, int area );

GroundProgram encode_ccp( const CcpInstance& instance );

std::vector< std::string > verify_ccp( const CcpInstance& instance, const CcpSolution& solution );

/* Reads color/bin/be2area atoms; throws when a vertex lacks a color or bin. */
CcpSolution extract_ccp( const CcpInstance& instance, const std::vector< std::string >& true_atoms );
CcpSolution extract_ccp( const CcpInstance& instance, const GroundProgram& program, const std::vector< AtomId >& witness );

/* Solution file: "color <id> <n>", "bin <id> <n>" and "area <id> <label>" lines, 1-based numbers. */
std::string serialize_ccp_solution( const CcpInstance& instance, const CcpSolution& solution );
CcpSolution parse_ccp_solution( const CcpInstance& instance, std::string_view text );

/*
 * Searches every color, bin and area assignment for one the verifier
 * accepts. Throws std::length_error above `max_vertices` vertices.
 */
bool ccp_solvable( const CcpInstance& instance, std::size_t max_vertices = 6 );

struct CcpGridParams {
    int colors = 2;
    int bins = 2;
    int capacity = 6;
    int max_border = 2;
    /* Sizes alternate between the two types by cell parity. */
    int size_a = 1;
    int size_b = 2;
    bool paths = true;
};

/* w x h grid with right and down edges; paths on the top and bottom rows, one area per row. */
CcpInstance gen_ccp_grid( int w, int h, const CcpGridParams& params = {} );

}  // namespace dasp
