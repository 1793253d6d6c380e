#include "cubictsp/generate.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cubictsp {
namespace {

Rational draw_weight(std::mt19937_64& rng, WeightMode mode) {
  if (mode == WeightMode::unit) return 1;
  std::uniform_int_distribution<int> num(1, 40);
  std::uniform_int_distribution<int> den(1, 8);
  Rational w(num(rng), den(rng));
  w.canonicalize();
  return w;
}

Instance from_edges(int n, const std::vector<std::pair<int, int>>& edges, WeightMode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst(n);
  for (const auto& [u, v] : edges) inst.add_edge(u, v, draw_weight(rng, mode));
  return inst;
}

bool connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int parts = n;
  for (const auto& [u, v] : edges) {
    const int a = find(u);
    const int b = find(v);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --parts;
    }
  }
  return parts == 1;
}

std::vector<std::pair<int, int>> generalized_petersen(int n, int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i, (i + 1) % n);
    edges.emplace_back(i, n + i);
    edges.emplace_back(n + i, n + (i + k) % n);
  }
  return edges;
}

}  // namespace

Instance random_cubic(int n, std::uint64_t seed, WeightMode weights, bool allow_parallel) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("random cubic graphs need an even n >= 4");
  std::mt19937_64 rng(seed);
  std::vector<int> points(static_cast<std::size_t>(3 * n));
  for (;;) {
    std::iota(points.begin(), points.end(), 0);
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      int u = points[i] / 3;
      int v = points[i + 1] / 3;
      if (u == v) ok = false;
      if (u > v) std::swap(u, v);
      if (!allow_parallel && std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end()) ok = false;
      edges.emplace_back(u, v);
    }
    if (!ok || !connected(n, edges)) continue;
    std::sort(edges.begin(), edges.end());
    return from_edges(n, edges, weights, rng());
  }
}

Instance cycle_graph(int n, WeightMode weights, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return from_edges(n, edges, weights, seed);
}

Instance named_graph(std::string_view name, WeightMode weights, std::uint64_t seed) {
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  if (name == "petersen") {
    n = 10;
    edges = generalized_petersen(5, 2);
  } else if (name == "moebius_kantor") {
    n = 16;
    edges = generalized_petersen(8, 3);
  } else if (name == "prism") {
    n = 6;
    edges = generalized_petersen(3, 1);
  } else if (name == "k4") {
    n = 4;
    edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  } else if (name == "k33") {
    n = 6;
    for (int a = 0; a < 3; ++a) {
      for (int b = 3; b < 6; ++b) edges.emplace_back(a, b);
    }
  } else {
    throw std::invalid_argument("unknown named graph '" + std::string(name) + "'");
  }
  return from_edges(n, edges, weights, seed);
}

Instance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::random_cubic: return random_cubic(spec.n, spec.seed, spec.weights, spec.allow_parallel);
    case GeneratorKind::cycle: return cycle_graph(spec.n, spec.weights, spec.seed);
    case GeneratorKind::named: return named_graph(spec.name, spec.weights, spec.seed);
  }
  throw std::invalid_argument("unknown generator kind");
}

void inject_forced(Instance& inst, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto edges = inst.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  int done = 0;
  for (EdgeId e : edges) {
    if (done >= count) break;
    const auto& ed = inst.edge(e);
    if (ed.forced || inst.degrees(ed.u).forced >= 2 || inst.degrees(ed.v).forced >= 2) continue;
    inst.force_edge(e);
    ++done;
  }
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("CUBIC_TSP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("CUBIC_TSP_SEED is not an unsigned integer");
    }
  }
  return fallback;
}

}  // namespace cubictsp
