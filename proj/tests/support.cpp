#include "support.hpp"

#include "cubictsp/generate.hpp"
#include "cubictsp/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace cubictsp::testing {
namespace {

// Connected over the edges of H minus `skip_a` and `skip_b`.
bool connected_without(const Instance& inst, const UComponent& h, EdgeId skip_a, EdgeId skip_b) {
  std::map<VertexId, VertexId> parent;
  for (VertexId v : h.vertices) parent[v] = v;
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  int parts = static_cast<int>(h.vertices.size());
  for (EdgeId e : h.edges) {
    if (e == skip_a || e == skip_b) continue;
    const VertexId a = find(inst.edge(e).u);
    const VertexId b = find(inst.edge(e).v);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts == 1;
}

}  // namespace

std::set<std::set<EdgeId>> naive_circuit_partition(const Instance& inst, const UComponent& component) {
  const auto& edges = component.edges;
  const std::size_t m = edges.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!connected_without(inst, component, edges[i], edges[j])) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::set<EdgeId>> classes;
  for (std::size_t i = 0; i < m; ++i) classes[find(i)].insert(edges[i]);
  std::set<std::set<EdgeId>> out;
  for (auto& [root, set] : classes) out.insert(set);
  return out;
}

std::set<std::set<EdgeId>> partition_of(const std::vector<Circuit>& circuits) {
  std::set<std::set<EdgeId>> out;
  for (const Circuit& c : circuits) out.insert(std::set<EdgeId>(c.edges.begin(), c.edges.end()));
  return out;
}

bool has_triangle(const Instance& inst) {
  for (VertexId v : inst.vertices()) {
    std::set<VertexId> nb;
    for (EdgeId e : inst.incident(v)) nb.insert(inst.edge(e).other(v));
    for (VertexId a : nb) {
      for (EdgeId e : inst.incident(a)) {
        const VertexId b = inst.edge(e).other(a);
        if (b != v && nb.count(b)) return true;
      }
    }
  }
  return false;
}

bool has_parallel_edges(const Instance& inst) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (EdgeId e : inst.edges()) {
    const Edge& ed = inst.edge(e);
    if (!seen.insert({std::min(ed.u, ed.v), std::max(ed.u, ed.v)}).second) return true;
  }
  return false;
}

bool has_degree_two_vertex(const Instance& inst) {
  for (VertexId v : inst.vertices()) {
    if (inst.degrees(v).total == 2) return true;
  }
  return false;
}

Instance random_four_cycle_instance(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 30);
  std::bernoulli_distribution subdivide(0.2);
  Instance inst(4 * k);
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < 4; ++i) inst.add_edge(4 * c + i, 4 * c + (i + 1) % 4, weight(rng));
  }
  auto link = [&](VertexId a, VertexId b) {
    if (subdivide(rng)) {
      const VertexId mid = inst.add_vertex();
      inst.add_edge(a, mid, weight(rng), true);
      inst.add_edge(mid, b, weight(rng), true);
    } else {
      inst.add_edge(a, b, weight(rng), true);
    }
  };
  // Chain the cycles in random order first so the instance is connected,
  // then pair the remaining corners at random.
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<VertexId>> free(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < 4; ++i) free[static_cast<std::size_t>(c)].push_back(4 * c + i);
    std::shuffle(free[static_cast<std::size_t>(c)].begin(), free[static_cast<std::size_t>(c)].end(), rng);
  }
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    auto& from = free[static_cast<std::size_t>(order[i])];
    auto& to = free[static_cast<std::size_t>(order[i + 1])];
    const VertexId a = from.back();
    from.pop_back();
    const VertexId b = to.back();
    to.pop_back();
    link(a, b);
  }
  std::vector<VertexId> rest;
  for (const auto& f : free) rest.insert(rest.end(), f.begin(), f.end());
  std::shuffle(rest.begin(), rest.end(), rng);
  for (std::size_t i = 0; i + 1 < rest.size(); i += 2) link(rest[i], rest[i + 1]);
  return inst;
}

std::vector<FixpointResult> reduced_corpus(int count, std::uint64_t seed) {
  std::vector<FixpointResult> out;
  auto open = [](const FixpointResult& r) { return !r.feasibility.infeasible() && !r.solved_tour; };
  for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    const int n = 10 + 2 * static_cast<int>(i % 8);
    Instance g = random_cubic(n, seed + i);
    if (i % 3 == 1) inject_forced(g, 1 + static_cast<int>(i % 5), seed + i);
    FixpointResult root = reduce_to_fixpoint(g);
    if (!open(root)) continue;
    if (const auto choice = select_branch_circuit(root.instance)) {
      for (EdgeDecision action : {EdgeDecision::include, EdgeDecision::remove}) {
        Instance c = root.instance;
        if (circuit_procedure(c, choice->circuit, Decision{choice->pivot, action}) == StepStatus::infeasible) continue;
        FixpointResult child = reduce_to_fixpoint(c);
        if (open(child) && static_cast<int>(out.size()) + 1 < count) out.push_back(std::move(child));
      }
    }
    out.push_back(std::move(root));
  }
  return out;
}

Instance build(int n, const std::vector<E>& edges) {
  Instance inst(n);
  for (const E& e : edges) inst.add_edge(e.u, e.v, Rational(e.weight), e.forced);
  return inst;
}

}  // namespace cubictsp::testing
