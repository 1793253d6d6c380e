#include "cubictsp/search.hpp"

#include <algorithm>
#include <numeric>

namespace cubictsp {

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::full ? "full" : "simple";
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

bool eligible(const Instance& inst, const UComponent& h) { return !h.trivial() && !is_proper_four_cycle(inst, h); }

bool has_kind(const Circuit& c, BlockKind kind) {
  return std::any_of(c.blocks.begin(), c.blocks.end(), [kind](const Block& b) { return b.kind == kind; });
}

BranchChoice single_edge(const UComponent& h, std::size_t index) {
  BranchChoice choice;
  choice.circuit.edges = {h.edges.front()};
  choice.circuit.host = static_cast<int>(index);
  choice.pivot = h.edges.front();
  choice.component = index;
  return choice;
}

// One 4-cycle U-component, split into its two perfect matchings.
struct FourCycle {
  std::array<std::array<EdgeId, 2>, 2> matching;
  std::array<Rational, 2> cost;
};

std::vector<FourCycle> base_case_cycles(const Instance& inst) {
  std::vector<FourCycle> cycles;
  for (const auto& h : u_components(inst)) {
    if (h.trivial()) {
      if (inst.degrees(h.vertices.front()).forced != 2) throw InvalidState("base case: unfinished trivial vertex");
      continue;
    }
    if (!is_proper_four_cycle(inst, h)) throw InvalidState("base case: U-component is not a proper 4-cycle");
    const EdgeId e0 = h.edges.front();
    const auto& a = inst.edge(e0);
    EdgeId opposite = kNoEdge;
    std::vector<EdgeId> rest;
    for (std::size_t i = 1; i < h.edges.size(); ++i) {
      const auto& b = inst.edge(h.edges[i]);
      if (b.u != a.u && b.u != a.v && b.v != a.u && b.v != a.v) {
        opposite = h.edges[i];
      } else {
        rest.push_back(h.edges[i]);
      }
    }
    if (opposite == kNoEdge || rest.size() != 2) throw InvalidState("base case: malformed 4-cycle");
    FourCycle q;
    q.matching[0] = {e0, opposite};
    q.matching[1] = {rest[0], rest[1]};
    for (int m = 0; m < 2; ++m) q.cost[m] = inst.edge(q.matching[m][0]).weight + inst.edge(q.matching[m][1]).weight;
    cycles.push_back(q);
  }
  return cycles;
}

std::vector<EdgeId> assemble(const Instance& inst, const std::vector<FourCycle>& cycles, const std::vector<int>& pick) {
  std::vector<EdgeId> tour = inst.forced_edges();
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& m = cycles[i].matching[static_cast<std::size_t>(pick[i])];
    tour.insert(tour.end(), m.begin(), m.end());
  }
  std::sort(tour.begin(), tour.end());
  return tour;
}

TourResult make_tour(const Instance& inst, std::vector<EdgeId> edges) {
  TourResult t;
  t.status = TourStatus::optimal;
  t.cost = inst.cost(edges);
  t.edges = std::move(edges);
  return t;
}

}  // namespace

bool is_base_case(const Instance& inst) {
  for (const auto& h : u_components(inst)) {
    if (eligible(inst, h)) return false;
  }
  return true;
}

std::optional<BranchChoice> select_branch_circuit(const Instance& inst) {
  const auto comps = u_components(inst);
  for (std::size_t idx = 0; idx < comps.size(); ++idx) {
    const auto& h = comps[idx];
    if (!eligible(inst, h)) continue;
    auto circuits = circuit_partition(inst, h);
    for (auto& c : circuits) {
      if (c.trivial() || has_kind(c, BlockKind::normal)) continue;
      c.host = static_cast<int>(idx);
      BranchChoice choice;
      choice.pivot = c.edges.front();
      choice.circuit = std::move(c);
      choice.component = idx;
      return choice;
    }
    const bool any_normal = std::any_of(circuits.begin(), circuits.end(),
                                        [](const Circuit& c) { return has_kind(c, BlockKind::normal); });
    if (!any_normal) return single_edge(h, idx);
    auto found = find_minimal_normal_block(inst, h);
    BranchChoice choice;
    choice.pivot = found.circuit.edges[found.block_index];
    choice.target_block = found.block_index;
    choice.circuit = std::move(found.circuit);
    choice.circuit.host = static_cast<int>(idx);
    choice.component = idx;
    return choice;
  }
  return std::nullopt;
}

std::optional<BranchChoice> select_branch_circuit_simple(const Instance& inst) {
  const auto comps = u_components(inst);
  std::optional<BranchChoice> any_circuit;
  std::optional<BranchChoice> any_edge;
  for (std::size_t idx = 0; idx < comps.size(); ++idx) {
    const auto& h = comps[idx];
    if (!eligible(inst, h)) continue;
    for (auto& c : circuit_partition(inst, h)) {
      if (c.trivial()) continue;
      const bool trivial_block = has_kind(c, BlockKind::trivial);
      if (!trivial_block && any_circuit) continue;
      c.host = static_cast<int>(idx);
      BranchChoice choice;
      choice.pivot = c.edges.front();
      choice.circuit = std::move(c);
      choice.component = idx;
      if (trivial_block) return choice;
      any_circuit = std::move(choice);
    }
    if (!any_edge) any_edge = single_edge(h, idx);
  }
  return any_circuit ? any_circuit : any_edge;
}

TourResult solve_all_4cycles(const Instance& inst) {
  const auto cycles = base_case_cycles(inst);
  std::vector<int> pick(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) pick[i] = cycles[i].cost[1] < cycles[i].cost[0] ? 1 : 0;

  auto labels = [&](const std::vector<EdgeId>& edges) {
    UnionFind uf(static_cast<std::size_t>(inst.vertex_capacity()));
    for (EdgeId e : edges) uf.unite(inst.edge(e).u, inst.edge(e).v);
    return uf;
  };
  const auto factor = assemble(inst, cycles, pick);
  auto uf = labels(factor);

  struct Merge {
    Rational delta;
    std::size_t cycle;
    int a;
    int b;
  };
  std::vector<Merge> merges;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& m = cycles[i].matching[static_cast<std::size_t>(pick[i])];
    const int a = uf.find(inst.edge(m[0]).u);
    const int b = uf.find(inst.edge(m[1]).u);
    if (a == b) continue;
    merges.push_back({cycles[i].cost[static_cast<std::size_t>(1 - pick[i])] - cycles[i].cost[static_cast<std::size_t>(pick[i])], i, a, b});
  }
  std::stable_sort(merges.begin(), merges.end(), [](const Merge& x, const Merge& y) { return x.delta < y.delta; });
  UnionFind tree(static_cast<std::size_t>(inst.vertex_capacity()));
  for (const auto& m : merges) {
    if (tree.unite(m.a, m.b)) pick[m.cycle] = 1 - pick[m.cycle];
  }
  auto tour = assemble(inst, cycles, pick);
  if (!is_tour(inst, tour)) return TourResult{};
  return make_tour(inst, std::move(tour));
}

TourResult solve_all_4cycles_bruteforce(const Instance& inst) {
  const auto cycles = base_case_cycles(inst);
  if (cycles.size() > 20) throw std::invalid_argument("brute force limited to 20 four-cycles");
  TourResult best;
  std::vector<int> pick(cycles.size());
  for (unsigned long mask = 0; mask < (1UL << cycles.size()); ++mask) {
    for (std::size_t i = 0; i < cycles.size(); ++i) pick[i] = static_cast<int>((mask >> i) & 1UL);
    auto tour = assemble(inst, cycles, pick);
    if (!is_tour(inst, tour)) continue;
    const Rational cost = inst.cost(tour);
    if (!best.optimal() || cost < best.cost) best = make_tour(inst, std::move(tour));
  }
  return best;
}

bool is_tour(const Instance& inst, std::span<const EdgeId> edges) {
  const int n = inst.num_vertices();
  if (n < 2 || static_cast<int>(edges.size()) != n) return false;
  std::vector<EdgeId> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  std::vector<int> degree(static_cast<std::size_t>(inst.vertex_capacity()), 0);
  UnionFind uf(static_cast<std::size_t>(inst.vertex_capacity()));
  int merged = 0;
  for (EdgeId e : sorted) {
    if (!inst.edge_alive(e)) return false;
    const auto& ed = inst.edge(e);
    ++degree[static_cast<std::size_t>(ed.u)];
    ++degree[static_cast<std::size_t>(ed.v)];
    if (uf.unite(ed.u, ed.v)) ++merged;
  }
  for (VertexId v : inst.vertices()) {
    if (degree[static_cast<std::size_t>(v)] != 2) return false;
  }
  if (merged != n - 1) return false;
  for (EdgeId f : inst.forced_edges()) {
    if (!std::binary_search(sorted.begin(), sorted.end(), f)) return false;
  }
  return true;
}

namespace {

class Searcher {
 public:
  Searcher(const SolveOptions& options, SearchStats& stats) : options_(options), stats_(stats) {}

  FixpointResult reduce(const Instance& inst) {
    FixpointOptions fo;
    if (options_.observer) fo.observer = options_.observer->reduction_observer();
    return reduce_to_fixpoint(inst, fo);
  }

  // Tour of node.instance, in its edge ids.
  TourResult run(const FixpointResult& node, int depth) {
    ++stats_.nodes;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (node.feasibility.infeasible() || node.solved_tour || is_base_case(node.instance)) {
      ++stats_.leaves;
      if (options_.observer) options_.observer->on_leaf(node, depth);
      if (node.feasibility.infeasible()) return TourResult{};
      if (node.solved_tour) return make_tour(node.instance, *node.solved_tour);
      return options_.fourcycle_bruteforce ? solve_all_4cycles_bruteforce(node.instance)
                                           : solve_all_4cycles(node.instance);
    }
    const auto choice = options_.strategy == Strategy::full ? select_branch_circuit(node.instance)
                                                            : select_branch_circuit_simple(node.instance);
    if (!choice) throw InvalidState("no branching circuit outside the base case");
    ++stats_.branchings;

    auto child = [&](EdgeDecision action) {
      Instance c = node.instance;
      if (circuit_procedure(c, choice->circuit, Decision{choice->pivot, action}) == StepStatus::infeasible) {
        FixpointResult r;
        r.instance = std::move(c);
        r.feasibility = Feasibility::fail(InfeasibilityReason::odd_block_count);
        return r;
      }
      return reduce(c);
    };
    FixpointResult inc = child(EdgeDecision::include);
    FixpointResult rem = child(EdgeDecision::remove);
    if (options_.observer) options_.observer->on_branch(node, *choice, inc, rem, depth);

    TourResult best;
    for (FixpointResult* c : {&inc, &rem}) {
      TourResult t = run(*c, depth + 1);
      if (!t.optimal()) continue;
      t.edges = expand_solution(c->log, std::move(t.edges));
      if (!best.optimal() || t.cost < best.cost) best = std::move(t);
    }
    return best;
  }

 private:
  const SolveOptions& options_;
  SearchStats& stats_;
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& options) {
  const auto problems = validate_input(inst);
  if (!problems.empty()) throw std::invalid_argument("invalid instance: " + problems.front());
  SolveResult result;
  Searcher searcher(options, result.stats);
  const FixpointResult root = searcher.reduce(inst);
  if (options.observer) options.observer->on_root(inst, root);
  TourResult t = searcher.run(root, 0);
  if (t.optimal()) {
    t.edges = expand_solution(root.log, std::move(t.edges));
    if (!is_tour(inst, t.edges)) throw InvalidState("expanded solution is not a tour of the input");
    const Rational cost = inst.cost(t.edges);
    if (cost != t.cost) throw InvalidState("expanded tour cost differs from the reduced optimum");
  }
  result.tour = std::move(t);
  return result;
}

}  // namespace cubictsp
