#pragma once

#include "cubictsp/graph.hpp"
#include "cubictsp/search.hpp"

namespace cubictsp {

inline constexpr int kHeldKarpLimit = 24;
inline constexpr int kExhaustiveLimit = 12;

// Subset DP over (visited set, last vertex). Requires F = {} and
// n <= kHeldKarpLimit; throws std::invalid_argument otherwise.
TourResult held_karp(const Instance& inst);

// Enumerates Hamiltonian cycles edge by edge (parallel edges are distinct)
// and keeps the cheapest containing every forced edge. n <= kExhaustiveLimit.
TourResult exhaustive_forced(const Instance& inst);

}  // namespace cubictsp
