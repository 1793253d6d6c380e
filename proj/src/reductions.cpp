#include "cubictsp/reductions.hpp"

#include "cubictsp/detail/bridges.hpp"
#include "cubictsp/forced_paths.hpp"
#include "cubictsp/search.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

namespace cubictsp {

std::string_view to_string(InfeasibilityReason reason) {
  switch (reason) {
    case InfeasibilityReason::none: return "none";
    case InfeasibilityReason::not_2ec: return "not_2ec";
    case InfeasibilityReason::odd_component: return "odd_component";
    case InfeasibilityReason::odd_block_count: return "odd_block_count";
    case InfeasibilityReason::forced_subcycle: return "forced_subcycle";
    case InfeasibilityReason::degree_deficit: return "degree_deficit";
  }
  return "?";
}

std::string_view to_string(ReductionRule rule) {
  switch (rule) {
    case ReductionRule::degree_cleanup: return "degree_cleanup";
    case ReductionRule::contract: return "contract";
    case ReductionRule::parallel: return "parallel";
    case ReductionRule::eliminable: return "eliminable";
    case ReductionRule::reducible_circuit: return "reducible_circuit";
    case ReductionRule::cut3: return "cut3";
    case ReductionRule::cut4: return "cut4";
    case ReductionRule::feasibility: return "feasibility";
  }
  return "?";
}

namespace {

std::vector<char> membership(const Instance& inst, std::span<const VertexId> vertex_set) {
  std::vector<char> in(static_cast<std::size_t>(inst.vertex_capacity()), 0);
  for (VertexId v : vertex_set) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

VertexId endpoint_inside(const Instance& inst, EdgeId e, const std::vector<char>& in) {
  const auto& ed = inst.edge(e);
  return in[static_cast<std::size_t>(ed.u)] ? ed.u : ed.v;
}

std::vector<EdgeId> all_cut_edges(const CutEdges& c) {
  std::vector<EdgeId> out = c.forced;
  out.insert(out.end(), c.unforced.begin(), c.unforced.end());
  std::sort(out.begin(), out.end());
  return out;
}

// True when the forced edges contain a cycle that misses some vertex.
bool has_forced_subcycle(const Instance& inst) {
  std::vector<int> parent(static_cast<std::size_t>(inst.vertex_capacity()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::vector<int> cyclic_root;
  for (EdgeId e : inst.forced_edges()) {
    const int a = find(inst.edge(e).u);
    const int b = find(inst.edge(e).v);
    if (a == b) {
      cyclic_root.push_back(a);
    } else {
      parent[static_cast<std::size_t>(a)] = b;
    }
  }
  if (cyclic_root.empty()) return false;
  for (int r : cyclic_root) {
    int size = 0;
    for (VertexId v : inst.vertices()) {
      if (find(v) == find(r)) ++size;
    }
    if (size != inst.num_vertices() || cyclic_root.size() > 1) return true;
  }
  return false;
}

class PathSearch {
 public:
  PathSearch(const Instance& inst, std::span<const VertexId> vertex_set,
             std::span<const std::pair<VertexId, VertexId>> pairs)
      : inst_(inst), vertices_(vertex_set.begin(), vertex_set.end()), pairs_(pairs.begin(), pairs.end()) {
    in_ = membership(inst, vertex_set);
    visited_.assign(in_.size(), 0);
    endpoint_.assign(in_.size(), 0);
    for (const auto& [a, b] : pairs_) {
      if (!in_[static_cast<std::size_t>(a)] || !in_[static_cast<std::size_t>(b)]) {
        throw std::invalid_argument("path terminal outside X");
      }
      endpoint_[static_cast<std::size_t>(a)] = 1;
      endpoint_[static_cast<std::size_t>(b)] = 1;
    }
  }

  std::optional<PathSolution> run() {
    current_.assign(pairs_.size(), {});
    start_pair(0, 0);
    return best_;
  }

 private:
  bool internal(EdgeId e) const {
    const auto& ed = inst_.edge(e);
    return in_[static_cast<std::size_t>(ed.u)] && in_[static_cast<std::size_t>(ed.v)];
  }

  // every forced X-edge at v is one of the path edges used at v
  bool forced_ok(VertexId v, EdgeId a, EdgeId b) const {
    for (EdgeId e : inst_.incident(v)) {
      if (inst_.edge(e).forced && internal(e) && e != a && e != b) return false;
    }
    return true;
  }

  void start_pair(std::size_t k, std::size_t covered) {
    if (k == pairs_.size()) {
      if (covered != vertices_.size()) return;
      Rational cost = 0;
      for (const auto& p : current_) cost += inst_.cost(p);
      if (!best_ || cost < best_->cost) best_ = PathSolution{cost, current_};
      return;
    }
    const auto [a, b] = pairs_[k];
    if (visited_[static_cast<std::size_t>(a)] || visited_[static_cast<std::size_t>(b)]) return;
    visited_[static_cast<std::size_t>(a)] = 1;
    if (a == b) {
      if (forced_ok(a, kNoEdge, kNoEdge)) start_pair(k + 1, covered + 1);
    } else {
      extend(k, a, kNoEdge, covered + 1);
    }
    visited_[static_cast<std::size_t>(a)] = 0;
  }

  void extend(std::size_t k, VertexId cur, EdgeId arrival, std::size_t covered) {
    const VertexId target = pairs_[k].second;
    for (EdgeId e : inst_.incident(cur)) {
      if (e == arrival || !internal(e)) continue;
      const VertexId w = inst_.edge(e).other(cur);
      if (visited_[static_cast<std::size_t>(w)]) continue;
      if (w != target && endpoint_[static_cast<std::size_t>(w)]) continue;
      if (!forced_ok(cur, arrival, e)) continue;
      visited_[static_cast<std::size_t>(w)] = 1;
      current_[k].push_back(e);
      if (w == target) {
        if (forced_ok(w, e, kNoEdge)) start_pair(k + 1, covered + 1);
      } else {
        extend(k, w, e, covered + 1);
      }
      current_[k].pop_back();
      visited_[static_cast<std::size_t>(w)] = 0;
    }
  }

  const Instance& inst_;
  std::vector<VertexId> vertices_;
  std::vector<std::pair<VertexId, VertexId>> pairs_;
  std::vector<char> in_;
  std::vector<char> visited_;
  std::vector<char> endpoint_;
  std::vector<std::vector<EdgeId>> current_;
  std::optional<PathSolution> best_;
};

void check_region(const Instance& inst, std::span<const VertexId> vertex_set) {
  if (vertex_set.empty() || vertex_set.size() > 10) throw std::invalid_argument("region must have 1..10 vertices");
  if (!std::is_sorted(vertex_set.begin(), vertex_set.end()) ||
      std::adjacent_find(vertex_set.begin(), vertex_set.end()) != vertex_set.end()) {
    throw std::invalid_argument("region must be sorted and duplicate-free");
  }
  for (VertexId v : vertex_set) {
    if (!inst.vertex_alive(v)) throw std::invalid_argument("region contains a dead vertex");
  }
}

struct FourCutSetup {
  std::array<VertexId, 4> x{};
  std::array<std::optional<PathSolution>, 3> solutions;
};

std::optional<FourCutSetup> four_cut_setup(const Instance& inst, std::span<const VertexId> vertex_set) {
  if (vertex_set.empty() || vertex_set.size() > 10 || static_cast<int>(vertex_set.size()) >= inst.num_vertices()) {
    return std::nullopt;
  }
  const auto c = cut(inst, vertex_set);
  if (!c.unforced.empty() || c.forced.size() != 4) return std::nullopt;
  const auto in = membership(inst, vertex_set);
  FourCutSetup s;
  for (std::size_t i = 0; i < 4; ++i) s.x[i] = endpoint_inside(inst, c.forced[i], in);
  std::sort(s.x.begin(), s.x.end());
  if (std::adjacent_find(s.x.begin(), s.x.end()) != s.x.end()) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    std::vector<VertexId> rest;
    for (int j = 0; j < 3; ++j) {
      if (j != i) rest.push_back(s.x[static_cast<std::size_t>(j)]);
    }
    const std::array<std::pair<VertexId, VertexId>, 2> pairs{{{s.x[static_cast<std::size_t>(i)], s.x[3]}, {rest[0], rest[1]}}};
    s.solutions[static_cast<std::size_t>(i)] = solve_internal_paths(inst, vertex_set, pairs);
  }
  return s;
}

bool is_unforced_four_cycle_region(const Instance& inst, std::span<const VertexId> vertex_set) {
  if (vertex_set.size() != 4) return false;
  const auto internal = inst.induced_edges(vertex_set);
  if (internal.size() != 4) return false;
  for (EdgeId e : internal) {
    if (inst.edge(e).forced) return false;
  }
  return true;
}

}  // namespace

Feasibility check_feasibility(const Instance& inst) {
  for (VertexId v : inst.vertices()) {
    const auto d = inst.degrees(v);
    if (d.total < 2) return Feasibility::fail(InfeasibilityReason::degree_deficit);
    if (d.forced > 2) return Feasibility::fail(InfeasibilityReason::odd_component);
  }
  if (has_forced_subcycle(inst)) return Feasibility::fail(InfeasibilityReason::forced_subcycle);
  const auto gb = graph_bridges(inst);
  if (!gb.connected || !gb.bridges.empty()) return Feasibility::fail(InfeasibilityReason::not_2ec);
  const auto comps = u_components(inst);
  for (const auto& h : comps) {
    if (h.odd()) return Feasibility::fail(InfeasibilityReason::odd_component);
  }
  for (const auto& h : comps) {
    if (h.trivial() || !is_2_edge_connected(inst, h)) continue;
    for (const auto& c : circuit_partition(inst, h)) {
      const auto odd = std::count_if(c.blocks.begin(), c.blocks.end(), [](const Block& b) { return b.odd(); });
      if (odd % 2 != 0) return Feasibility::fail(InfeasibilityReason::odd_block_count);
    }
  }
  return Feasibility::unknown();
}

EdgeDecision determine_eliminable(const Instance& inst, std::span<const VertexId> side) {
  const auto c = cut(inst, side);
  if (c.unforced.size() != 1) throw std::invalid_argument("eliminable edge needs a 1-pendent U-graph");
  return c.forced.size() % 2 != 0 ? EdgeDecision::include : EdgeDecision::remove;
}

StepResult reduce_parallel(Instance& inst, VertexId u, VertexId v, ReductionLog* log) {
  std::vector<EdgeId> bundle;
  for (EdgeId e : inst.incident(u)) {
    if (inst.edge(e).other(u) == v) bundle.push_back(e);
  }
  if (bundle.size() < 2) throw std::invalid_argument("reduce_parallel needs at least two parallel edges");
  std::vector<EdgeId> forced;
  std::vector<EdgeId> unforced;
  for (EdgeId e : bundle) (inst.edge(e).forced ? forced : unforced).push_back(e);
  auto by_weight = [&](EdgeId a, EdgeId b) {
    const auto& wa = inst.edge(a).weight;
    const auto& wb = inst.edge(b).weight;
    return wa != wb ? wa < wb : a < b;
  };
  std::sort(unforced.begin(), unforced.end(), by_weight);

  StepResult result;
  if (inst.num_vertices() == 2) {
    if (forced.size() > 2 || bundle.size() < 2 || inst.num_edges() != static_cast<int>(bundle.size())) {
      result.status = StepStatus::infeasible;
      return result;
    }
    result.tour = forced;
    for (EdgeId e : unforced) {
      if (result.tour.size() == 2) break;
      result.tour.push_back(e);
    }
    std::sort(result.tour.begin(), result.tour.end());
    result.status = StepStatus::solved;
    return result;
  }
  if (forced.size() >= 2) {
    result.status = StepStatus::infeasible;
    return result;
  }
  RewriteRecord rec;
  rec.kind = RewriteKind::parallel_prune;
  // with one forced uv edge, any unforced uv edge would close a 2-cycle
  const std::size_t keep = forced.empty() ? 1 : 0;
  for (std::size_t i = keep; i < unforced.size(); ++i) rec.removed_edges.push_back(unforced[i]);
  std::sort(rec.removed_edges.begin(), rec.removed_edges.end());
  for (EdgeId e : rec.removed_edges) inst.delete_edge(e);
  if (log) log->append(std::move(rec));
  return result;
}

StepStatus process_reducible_circuit(Instance& inst, const Circuit& circuit, EdgeId reducible, ReductionLog* log) {
  return circuit_procedure(inst, circuit, Decision{reducible, EdgeDecision::include}, log);
}

std::optional<PathSolution> solve_internal_paths(const Instance& inst, std::span<const VertexId> vertex_set,
                                                 std::span<const std::pair<VertexId, VertexId>> pairs) {
  check_region(inst, vertex_set);
  if (pairs.empty()) throw std::invalid_argument("no terminal pairs");
  return PathSearch(inst, vertex_set, pairs).run();
}

VertexId reduce_3cut(Instance& inst, std::span<const VertexId> vertex_set, ReductionLog* log) {
  check_region(inst, vertex_set);
  const auto c = cut(inst, vertex_set);
  if (c.size() != 3) throw std::invalid_argument("reduce_3cut needs |cut(X)| = 3");
  const auto in = membership(inst, vertex_set);
  const auto cut_edges = all_cut_edges(c);

  std::array<VertexId, 3> x{};
  std::array<VertexId, 3> y{};
  std::array<Rational, 3> w;
  std::array<bool, 3> sign{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& ed = inst.edge(cut_edges[i]);
    x[i] = endpoint_inside(inst, cut_edges[i], in);
    y[i] = ed.other(x[i]);
    w[i] = ed.weight;
    sign[i] = ed.forced;
  }
  std::array<std::optional<PathSolution>, 3> sol;
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::array<std::pair<VertexId, VertexId>, 1> pair{{{x[(i + 1) % 3], x[(i + 2) % 3]}}};
    sol[i] = solve_internal_paths(inst, vertex_set, pair);
    if (sol[i]) feasible.push_back(i);
  }

  std::array<Rational, 3> nw = w;
  std::array<bool, 3> ns = sign;
  auto cost_of = [&](std::size_t i) { return sol[i]->cost; };
  switch (feasible.size()) {
    case 0:
      ns = {true, true, true};
      break;
    case 1: {
      const std::size_t j1 = feasible[0];
      const std::size_t j2 = j1 == 0 ? 1 : 0;
      const std::size_t j3 = 3 - j1 - j2;
      ns[j2] = ns[j3] = true;
      nw[j2] += cost_of(j1);
      break;
    }
    case 2: {
      const std::size_t j1 = feasible[0];
      const std::size_t j2 = feasible[1];
      const std::size_t j3 = 3 - j1 - j2;
      ns[j3] = true;
      nw[j1] += cost_of(j2);
      nw[j2] += cost_of(j1);
      break;
    }
    default: {
      const Rational half = (cost_of(0) + cost_of(1) + cost_of(2)) / 2;
      for (std::size_t i = 0; i < 3; ++i) nw[i] += half - cost_of(i);
      break;
    }
  }

  RewriteRecord rec;
  rec.kind = RewriteKind::cut3;
  rec.region_size = static_cast<int>(vertex_set.size());
  rec.removed_edges = inst.induced_edges(vertex_set);
  rec.removed_edges.insert(rec.removed_edges.end(), cut_edges.begin(), cut_edges.end());
  std::sort(rec.removed_edges.begin(), rec.removed_edges.end());
  rec.removed_vertices.assign(vertex_set.begin(), vertex_set.end());
  for (EdgeId e : rec.removed_edges) inst.delete_edge(e);
  for (VertexId v : rec.removed_vertices) inst.delete_vertex(v);
  const VertexId nx = inst.add_vertex();
  rec.added_vertices.push_back(nx);
  for (std::size_t i = 0; i < 3; ++i) {
    const EdgeId id = inst.add_edge(nx, y[i], nw[i], ns[i]);
    rec.added_edges.push_back(AddedEdge{id, nx, y[i], nw[i], ns[i]});
    rec.cut3_new[i] = id;
    rec.cut3_old[i] = cut_edges[i];
    if (sol[i]) rec.cut3_paths[i] = sol[i]->paths[0];
  }
  if (log) log->append(std::move(rec));
  return nx;
}

bool is_4cut_reducible(const Instance& inst, std::span<const VertexId> vertex_set) {
  const auto s = four_cut_setup(inst, vertex_set);
  if (!s) return false;
  return std::any_of(s->solutions.begin(), s->solutions.end(), [](const auto& x) { return !x.has_value(); });
}

void reduce_4cut(Instance& inst, std::span<const VertexId> vertex_set, ReductionLog* log) {
  check_region(inst, vertex_set);
  const auto s = four_cut_setup(inst, vertex_set);
  if (!s) throw std::invalid_argument("region is not a 4-cut candidate");
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < 3; ++i) {
    if (s->solutions[i]) feasible.push_back(i);
  }
  if (feasible.size() == 3) throw std::invalid_argument("region is not 4-cut reducible");

  RewriteRecord rec;
  rec.kind = RewriteKind::cut4;
  rec.region_size = static_cast<int>(vertex_set.size());
  rec.removed_edges = inst.induced_edges(vertex_set);
  for (VertexId v : vertex_set) {
    if (std::find(s->x.begin(), s->x.end(), v) == s->x.end()) rec.removed_vertices.push_back(v);
  }
  for (EdgeId e : rec.removed_edges) inst.delete_edge(e);
  for (VertexId v : rec.removed_vertices) inst.delete_vertex(v);

  // weights of removed edges are still readable through the edge store
  auto path_cost = [&](const std::vector<EdgeId>& path) {
    Rational total = 0;
    for (EdgeId e : path) total += inst.edge(e).weight;
    return total;
  };
  auto add_edge = [&](VertexId a, VertexId b, const std::vector<EdgeId>& path, bool forced) {
    const Rational weight = path_cost(path);
    const EdgeId id = inst.add_edge(a, b, weight, forced);
    rec.added_edges.push_back(AddedEdge{id, a, b, weight, forced});
    rec.substitutions.emplace_back(id, path);
  };
  const auto& x = s->x;
  if (feasible.size() == 1) {
    const std::size_t i0 = feasible[0];
    const auto& sol = *s->solutions[i0];
    std::vector<VertexId> rest;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i0) rest.push_back(x[j]);
    }
    add_edge(x[i0], x[3], sol.paths[0], true);
    add_edge(rest[0], rest[1], sol.paths[1], true);
  } else if (feasible.size() == 2) {
    const std::size_t i1 = feasible[0];
    const std::size_t i2 = feasible[1];
    const std::size_t j = 3 - i1 - i2;
    const auto& s1 = *s->solutions[i1];
    const auto& s2 = *s->solutions[i2];
    add_edge(x[i1], x[3], s1.paths[0], false);
    add_edge(x[i2], x[j], s1.paths[1], false);
    add_edge(x[3], x[i2], s2.paths[0], false);
    add_edge(x[j], x[i1], s2.paths[1], false);
  }
  if (log) log->append(std::move(rec));
}

namespace {

class CutEnumerator {
 public:
  CutEnumerator(const Instance& inst, const CandidateOptions& options, CutKind kind)
      : inst_(inst), options_(options), kind_(kind) {
    state_.assign(static_cast<std::size_t>(inst.vertex_capacity()), kFree);
  }

  std::optional<std::vector<VertexId>> run() {
    for (VertexId s : inst_.vertices()) {
      seed_ = s;
      std::fill(state_.begin(), state_.end(), kFree);
      X_.clear();
      committed_ = 0;
      committed_unforced_ = 0;
      include(s);
      if (search()) return found_;
    }
    return std::nullopt;
  }

 private:
  static constexpr char kFree = 0;
  static constexpr char kIn = 1;
  static constexpr char kOut = 2;

  int budget() const { return kind_ == CutKind::three ? 3 : 4; }
  bool pruned() const { return committed_ > budget() || (kind_ == CutKind::four && committed_unforced_ > 0); }

  void include(VertexId v) {
    state_[static_cast<std::size_t>(v)] = kIn;
    X_.push_back(v);
    for (EdgeId e : inst_.incident(v)) {
      const VertexId w = inst_.edge(e).other(v);
      if (state_[static_cast<std::size_t>(w)] == kOut) count(e, +1);
    }
  }
  void uninclude(VertexId v) {
    for (EdgeId e : inst_.incident(v)) {
      const VertexId w = inst_.edge(e).other(v);
      if (state_[static_cast<std::size_t>(w)] == kOut) count(e, -1);
    }
    X_.pop_back();
    state_[static_cast<std::size_t>(v)] = kFree;
  }
  void exclude(VertexId v) {
    state_[static_cast<std::size_t>(v)] = kOut;
    for (EdgeId e : inst_.incident(v)) {
      if (state_[static_cast<std::size_t>(inst_.edge(e).other(v))] == kIn) count(e, +1);
    }
  }
  void unexclude(VertexId v) {
    for (EdgeId e : inst_.incident(v)) {
      if (state_[static_cast<std::size_t>(inst_.edge(e).other(v))] == kIn) count(e, -1);
    }
    state_[static_cast<std::size_t>(v)] = kFree;
  }
  void count(EdgeId e, int delta) {
    committed_ += delta;
    if (!inst_.edge(e).forced) committed_unforced_ += delta;
  }

  VertexId next_frontier() const {
    VertexId best = kNoVertex;
    for (VertexId v : X_) {
      for (EdgeId e : inst_.incident(v)) {
        const VertexId w = inst_.edge(e).other(v);
        if (state_[static_cast<std::size_t>(w)] == kFree && (best == kNoVertex || w < best)) best = w;
      }
    }
    return best;
  }

  bool search() {
    if (pruned()) return false;
    const VertexId f = next_frontier();
    if (f == kNoVertex) return check();
    if (f < seed_) {
      exclude(f);
      const bool hit = search();
      unexclude(f);
      return hit;
    }
    if (static_cast<int>(X_.size()) < options_.max_vertices) {
      include(f);
      const bool hit = search();
      uninclude(f);
      if (hit) return true;
    }
    exclude(f);
    const bool hit = search();
    unexclude(f);
    return hit;
  }

  bool check() {
    if (static_cast<int>(X_.size()) >= inst_.num_vertices()) return false;
    // both sides nontrivial, except that a triangle is always reduced
    if (kind_ == CutKind::three && inst_.num_vertices() - static_cast<int>(X_.size()) < options_.min_vertices_3cut &&
        !is_triangle()) {
      return false;
    }
    std::vector<VertexId> sorted = X_;
    std::sort(sorted.begin(), sorted.end());
    if (kind_ == CutKind::three) {
      if (committed_ != 3 || static_cast<int>(X_.size()) < options_.min_vertices_3cut) return false;
    } else {
      if (committed_ != 4 || committed_unforced_ != 0) return false;
      if (is_unforced_four_cycle_region(inst_, sorted) || !is_4cut_reducible(inst_, sorted)) return false;
    }
    found_ = std::move(sorted);
    return true;
  }

  bool is_triangle() const {
    if (X_.size() != 3) return false;
    std::vector<VertexId> sorted = X_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<EdgeId> inside = inst_.induced_edges(sorted);
    std::set<std::pair<VertexId, VertexId>> pairs;
    for (EdgeId e : inside) pairs.insert(std::minmax(inst_.edge(e).u, inst_.edge(e).v));
    return pairs.size() == 3;
  }

  const Instance& inst_;
  const CandidateOptions& options_;
  CutKind kind_;
  std::vector<char> state_;
  std::vector<VertexId> X_;
  std::vector<VertexId> found_;
  VertexId seed_ = 0;
  int committed_ = 0;
  int committed_unforced_ = 0;
};

}  // namespace

std::optional<CutCandidate> find_small_cut_candidate(const Instance& inst, const CandidateOptions& options) {
  if (options.three_cuts) {
    if (auto x = CutEnumerator(inst, options, CutKind::three).run()) return CutCandidate{CutKind::three, std::move(*x)};
  }
  if (options.four_cuts) {
    if (auto x = CutEnumerator(inst, options, CutKind::four).run()) return CutCandidate{CutKind::four, std::move(*x)};
  }
  return std::nullopt;
}

namespace {

std::optional<Circuit> circuit_of(const Instance& inst, EdgeId e) {
  for (const auto& h : u_components(inst)) {
    if (!std::binary_search(h.edges.begin(), h.edges.end(), e)) continue;
    for (auto& c : circuit_partition(inst, h)) {
      if (std::find(c.edges.begin(), c.edges.end(), e) != c.edges.end()) return std::move(c);
    }
  }
  return std::nullopt;
}

// Lowest reducible edge: first at degree-2 vertices, then in any 2-cut of G.
EdgeId find_reducible_edge(const Instance& inst) {
  for (VertexId v : inst.vertices()) {
    if (inst.degrees(v).total != 2) continue;
    for (EdgeId e : inst.incident(v)) {
      if (!inst.edge(e).forced) return e;
    }
  }
  const auto verts = inst.vertices();
  EdgeId best = kNoEdge;
  for (EdgeId f : inst.edges()) {
    const auto scan = detail::scan_bridges(inst, verts, [f](EdgeId g) { return g != f; });
    for (EdgeId g : scan.bridges) {
      for (EdgeId e : {f, g}) {
        if (!inst.edge(e).forced && (best == kNoEdge || e < best)) best = e;
      }
    }
    if (best != kNoEdge) return best;
  }
  return best;
}

std::optional<std::pair<VertexId, VertexId>> find_parallel_pair(const Instance& inst) {
  for (VertexId u : inst.vertices()) {
    const auto inc = inst.incident(u);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const VertexId v = inst.edge(inc[i]).other(u);
      if (v < u) continue;
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        if (inst.edge(inc[j]).other(u) == v) return std::make_pair(u, v);
      }
    }
  }
  return std::nullopt;
}

FixpointResult reduce_impl(const Instance& input, const FixpointOptions& options) {
  FixpointResult result;
  result.instance = input;
  Instance& g = result.instance;
  ReductionLog* log = &result.log;

  auto step = [&](ReductionRule rule, auto&& body) {
    std::optional<Instance> before;
    if (options.observer) before = g;
    int region = 0;
    StepResult r = body(region);
    if (options.observer) options.observer->on_step(*before, g, ReductionEvent{rule, region, r.status});
    return r;
  };
  auto fail = [&](InfeasibilityReason reason) {
    result.feasibility = Feasibility::fail(reason);
    return result;
  };

  for (;;) {
    for (VertexId v : g.vertices()) {
      const auto d = g.degrees(v);
      if (d.total < 2) return fail(InfeasibilityReason::degree_deficit);
      if (d.forced > 2) return fail(InfeasibilityReason::odd_component);
    }

    EdgeId dangling = kNoEdge;
    for (VertexId v : g.vertices()) {
      const auto d = g.degrees(v);
      if (d.forced == 2 && d.total == 3) {
        for (EdgeId e : g.incident(v)) {
          if (!g.edge(e).forced) dangling = e;
        }
        break;
      }
    }
    if (dangling != kNoEdge) {
      step(ReductionRule::degree_cleanup, [&](int& region) {
        region = 1;
        g.delete_edge(dangling);
        RewriteRecord rec;
        rec.kind = RewriteKind::delete_edge;
        rec.removed_edges.push_back(dangling);
        log->append(std::move(rec));
        return StepResult{};
      });
      continue;
    }

    bool has_interior = false;
    for (VertexId v : g.vertices()) {
      const auto d = g.degrees(v);
      if (d.total == 2 && d.forced == 2) {
        has_interior = true;
        break;
      }
    }
    if (has_interior) {
      const auto r = step(ReductionRule::contract, [&](int& region) {
        const std::size_t before = log->size();
        auto c = contract_forced_paths(g, log);
        for (std::size_t i = before; i < log->size(); ++i) region += log->entries()[i].region_size;
        StepResult out;
        out.status = c.status == ContractionStatus::ok         ? StepStatus::ok
                     : c.status == ContractionStatus::solved ? StepStatus::solved
                                                             : StepStatus::infeasible;
        out.tour = std::move(c.tour);
        return out;
      });
      if (r.status == StepStatus::solved) {
        result.solved_tour = r.tour;
        return result;
      }
      if (r.status == StepStatus::infeasible) return fail(InfeasibilityReason::forced_subcycle);
      continue;
    }

    if (const auto pair = find_parallel_pair(g)) {
      const auto r = step(ReductionRule::parallel, [&](int& region) {
        region = 2;
        return reduce_parallel(g, pair->first, pair->second, log);
      });
      if (r.status == StepStatus::solved) {
        result.solved_tour = r.tour;
        return result;
      }
      if (r.status == StepStatus::infeasible) return fail(InfeasibilityReason::forced_subcycle);
      continue;
    }

    const auto gb = graph_bridges(g);
    if (!gb.connected || !gb.bridges.empty()) return fail(InfeasibilityReason::not_2ec);

    const auto comps = u_components(g);
    for (const auto& h : comps) {
      if (h.odd()) return fail(InfeasibilityReason::odd_component);
    }
    const bool base_case = std::all_of(comps.begin(), comps.end(), [&](const UComponent& h) {
      return h.trivial() ? g.degrees(h.vertices.front()).forced == 2 : is_proper_four_cycle(g, h);
    });
    if (base_case) return result;

    bool eliminated = false;
    for (const auto& h : comps) {
      if (h.trivial()) continue;
      const auto ub = u_bridges(g, h);
      if (ub.empty()) continue;
      const EdgeId e = ub.front();
      std::vector<VertexId> side;
      std::vector<char> seen(static_cast<std::size_t>(g.vertex_capacity()), 0);
      std::vector<VertexId> stack{g.edge(e).u};
      seen[static_cast<std::size_t>(g.edge(e).u)] = 1;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        side.push_back(v);
        for (EdgeId f : g.incident(v)) {
          if (f == e || g.edge(f).forced) continue;
          const VertexId w = g.edge(f).other(v);
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
      }
      std::sort(side.begin(), side.end());
      const auto decision = determine_eliminable(g, side);
      step(ReductionRule::eliminable, [&](int& region) {
        region = static_cast<int>(side.size());
        RewriteRecord rec;
        if (decision == EdgeDecision::include) {
          g.force_edge(e);
          rec.kind = RewriteKind::include_edge;
          rec.forced_edges.push_back(e);
        } else {
          g.delete_edge(e);
          rec.kind = RewriteKind::delete_edge;
          rec.removed_edges.push_back(e);
        }
        log->append(std::move(rec));
        return StepResult{};
      });
      eliminated = true;
      break;
    }
    if (eliminated) continue;

    if (const EdgeId e = find_reducible_edge(g); e != kNoEdge) {
      const auto circuit = circuit_of(g, e);
      if (!circuit) throw InvalidState("reducible edge outside every circuit");
      const auto r = step(ReductionRule::reducible_circuit, [&](int& region) {
        region = static_cast<int>(circuit->edges.size());
        return StepResult{process_reducible_circuit(g, *circuit, e, log), {}};
      });
      if (r.status == StepStatus::infeasible) return fail(InfeasibilityReason::odd_block_count);
      continue;
    }

    if (options.three_cuts || options.four_cuts) {
      CandidateOptions co;
      co.three_cuts = options.three_cuts;
      co.four_cuts = options.four_cuts;
      if (const auto cand = find_small_cut_candidate(g, co)) {
        const bool three = cand->kind == CutKind::three;
        step(three ? ReductionRule::cut3 : ReductionRule::cut4, [&](int& region) {
          region = static_cast<int>(cand->vertices.size());
          if (three) {
            reduce_3cut(g, cand->vertices, log);
          } else {
            reduce_4cut(g, cand->vertices, log);
          }
          return StepResult{};
        });
        continue;
      }
    }

    result.feasibility = check_feasibility(g);
    return result;
  }
}

}  // namespace

FixpointResult reduce_to_fixpoint(const Instance& input, const FixpointOptions& options) {
  if (options.observer) options.observer->on_fixpoint_begin(input);
  FixpointResult result = reduce_impl(input, options);
  if (options.observer) options.observer->on_fixpoint_end(result);
  return result;
}

}  // namespace cubictsp
