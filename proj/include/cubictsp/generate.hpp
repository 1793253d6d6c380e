#pragma once

#include "cubictsp/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace cubictsp {

enum class GeneratorKind { random_cubic, cycle, named };
enum class WeightMode { unit, random };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::random_cubic;
  int n = 10;
  std::uint64_t seed = 1;
  WeightMode weights = WeightMode::random;
  std::string name;  // petersen, k4, k33, prism, moebius_kantor
  bool allow_parallel = false;
};

// Deterministic for a fixed spec. Throws std::invalid_argument for an
// impossible spec (odd or too small n for random_cubic, unknown name).
Instance generate(const GeneratorSpec& spec);

Instance random_cubic(int n, std::uint64_t seed, WeightMode weights = WeightMode::random, bool allow_parallel = false);
Instance cycle_graph(int n, WeightMode weights = WeightMode::unit, std::uint64_t seed = 1);
Instance named_graph(std::string_view name, WeightMode weights = WeightMode::unit, std::uint64_t seed = 1);

// Forces up to `count` random edges while keeping d_F <= 2 everywhere.
void inject_forced(Instance& inst, int count, std::uint64_t seed);

// Seed from CUBIC_TSP_SEED when set, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback);

}  // namespace cubictsp
