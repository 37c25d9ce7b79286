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

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dasp {

/*
 * Partner units instance: a bipartite graph of sensors and zones, a number
 * of units and the two capacities. Ids must be valid symbol arguments.
 */
struct PupInstance {
    int ucap = 1;
    int iucap = 1;
    int units = 1;
    std::vector< std::string > zones;
    std::vector< std::string > sensors;
    /* (sensor index, zone index) */
    std::vector< std::pair< int, int > > edges;

    bool operator==( const PupInstance& ) const = default;
};

/* Unit indices are 0-based; -1 marks an unassigned vertex. */
struct PupSolution {
    std::vector< int > zone_unit;
    std::vector< int > sensor_unit;
    /* Unordered pairs stored as (low, high). */
    std::set< std::pair< int, int > > partners;
};

/* Zones come first, then sensors: zone i is vertex i, sensor j is vertex zones.size() + j. */
struct PupVertex {
    bool zone = true;
    int index = 0;
    bool operator==( const PupVertex& ) const = default;
};

PupInstance parse_pup( std::string_view text );
std::string serialize_pup( const PupInstance& instance );

std::string unit_name( int unit );
std::string zone_atom( int unit, const std::string& zone );
std::string sensor_atom( int unit, const std::string& sensor );

/* Guess pairs over unit assignments, exactly-one per vertex, counters for both capacities. */
GroundProgram encode_pup( const PupInstance& instance );

std::vector< std::string > verify_pup( const PupInstance& instance, const PupSolution& solution );

/* Reads unit2zone/unit2sensor/partner atoms; throws when a vertex has no unit. */
PupSolution extract_pup( const PupInstance& instance, const std::vector< std::string >& true_atoms );
PupSolution extract_pup( const PupInstance& instance, const GroundProgram& program, const std::vector< AtomId >& witness );

/* Solution file: one "zone <id> <unit>", "sensor <id> <unit>" or "partner <unit> <unit>" per line. */
std::string serialize_pup_solution( const PupInstance& instance, const PupSolution& solution );
PupSolution parse_pup_solution( const PupInstance& instance, std::string_view text );

/* Zone of maximum degree, earliest declared on ties; -1 without zones. */
int pup_start_zone( const PupInstance& instance );

/*
 * Breadth-first order over zones and sensors from `start_zone`. Neighbours
 * are visited in declaration order; unreachable vertices follow in
 * declaration order.
 */
std::vector< PupVertex > bfs_order( const PupInstance& instance, int start_zone );

enum class PupTopology { Double, DoubleVariant, Triple, Grid };

PupTopology parse_pup_topology( std::string_view name );

/* `b` is only used by the grid (its height). */
PupInstance gen_pup( PupTopology topology, int a, int b = 1, int ucap = 2, int iucap = 2 );

}  // namespace dasp
