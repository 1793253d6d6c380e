#pragma once

#include "cubictsp/connectivity.hpp"
#include "cubictsp/graph.hpp"
#include "cubictsp/reductions.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace cubictsp::testing {

// Edge classes of H under "equal, or removing both disconnects H", closed
// transitively. Computed by brute force over all edge pairs.
std::set<std::set<EdgeId>> naive_circuit_partition(const Instance& inst, const UComponent& component);
std::set<std::set<EdgeId>> partition_of(const std::vector<Circuit>& circuits);

bool has_triangle(const Instance& inst);
bool has_parallel_edges(const Instance& inst);
bool has_degree_two_vertex(const Instance& inst);

// k unforced 4-cycles whose 4k corners are paired by random forced edges;
// some forced edges are subdivided by a finished degree-2 vertex.
Instance random_four_cycle_instance(int k, std::uint64_t seed);

// Reduced, still-open nodes: roots of random cubic instances (some with
// forced edges) and the reduced children of their first branching.
std::vector<FixpointResult> reduced_corpus(int count, std::uint64_t seed);

// Build from 0-based (u, v, weight, forced) tuples.
struct E {
  int u;
  int v;
  long weight = 1;
  bool forced = false;
};
Instance build(int n, const std::vector<E>& edges);

}  // namespace cubictsp::testing
