#include "cubictsp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace cubictsp {
namespace {

TourResult optimal(const Instance& inst, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  TourResult t;
  t.status = TourStatus::optimal;
  t.cost = inst.cost(edges);
  t.edges = std::move(edges);
  return t;
}

// Two-vertex instances: the two cheapest parallel edges that keep F.
TourResult two_vertex_tour(const Instance& inst) {
  auto edges = inst.edges();
  std::vector<EdgeId> forced;
  std::vector<EdgeId> free;
  for (EdgeId e : edges) (inst.edge(e).forced ? forced : free).push_back(e);
  std::sort(free.begin(), free.end(), [&](EdgeId a, EdgeId b) {
    const auto& wa = inst.edge(a).weight;
    const auto& wb = inst.edge(b).weight;
    return wa != wb ? wa < wb : a < b;
  });
  if (forced.size() > 2 || edges.size() < 2) return TourResult{};
  for (EdgeId e : free) {
    if (forced.size() == 2) break;
    forced.push_back(e);
  }
  return optimal(inst, std::move(forced));
}

}  // namespace

TourResult held_karp(const Instance& inst) {
  if (!inst.forced_edges().empty()) throw std::invalid_argument("held_karp needs an instance without forced edges");
  const int n = inst.num_vertices();
  if (n > kHeldKarpLimit) throw std::invalid_argument("held_karp refuses n > " + std::to_string(kHeldKarpLimit));
  if (n < 2) return TourResult{};
  if (n == 2) return two_vertex_tour(inst);

  const auto verts = inst.vertices();
  std::vector<int> index(static_cast<std::size_t>(inst.vertex_capacity()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) index[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);

  // cheapest edge per vertex pair, weights scaled to integers
  mpz_class scale = 1;
  for (EdgeId e : inst.edges()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), inst.edge(e).weight.get_den_mpz_t());
  const auto un = static_cast<std::size_t>(n);
  std::vector<EdgeId> best_edge(un * un, kNoEdge);
  for (EdgeId e : inst.edges()) {
    const auto& ed = inst.edge(e);
    const auto a = static_cast<std::size_t>(index[static_cast<std::size_t>(ed.u)]);
    const auto b = static_cast<std::size_t>(index[static_cast<std::size_t>(ed.v)]);
    EdgeId& slot = best_edge[a * un + b];
    if (slot == kNoEdge || ed.weight < inst.edge(slot).weight) slot = best_edge[b * un + a] = e;
  }
  std::vector<std::int64_t> w(un * un, 0);
  mpz_class total = 0;
  for (std::size_t i = 0; i < un * un; ++i) {
    if (best_edge[i] == kNoEdge) continue;
    const Rational scaled = inst.edge(best_edge[i]).weight * scale;
    if (!scaled.get_num().fits_slong_p()) throw std::invalid_argument("held_karp: weights too large");
    w[i] = scaled.get_num().get_si();
    total += scaled.get_num();
  }
  if (total >= mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw std::invalid_argument("held_karp: weights too large");
  }

  // vertex 0 is the start; masks range over vertices 1..n-1
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  const std::size_t m = un - 1;
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<std::int64_t> dp((full + 1) * m, kInf);
  for (std::size_t v = 1; v < un; ++v) {
    if (best_edge[v] != kNoEdge) dp[(std::size_t{1} << (v - 1)) * m + (v - 1)] = w[v];
  }
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t last = 0; last < m; ++last) {
      const std::int64_t cur = dp[mask * m + last];
      if (cur == kInf || !(mask & (std::size_t{1} << last))) continue;
      for (std::size_t next = 0; next < m; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t pair = (last + 1) * un + (next + 1);
        if (best_edge[pair] == kNoEdge) continue;
        std::int64_t& slot = dp[(mask | (std::size_t{1} << next)) * m + next];
        slot = std::min(slot, cur + w[pair]);
      }
    }
  }
  std::int64_t best = kInf;
  std::size_t best_last = 0;
  for (std::size_t last = 0; last < m; ++last) {
    const std::int64_t cur = dp[full * m + last];
    if (cur == kInf || best_edge[last + 1] == kNoEdge) continue;
    if (cur + w[last + 1] < best) {
      best = cur + w[last + 1];
      best_last = last;
    }
  }
  if (best == kInf) return TourResult{};

  std::vector<EdgeId> tour{best_edge[best_last + 1]};
  std::size_t mask = full;
  std::size_t last = best_last;
  while (mask != (std::size_t{1} << last)) {
    const std::size_t prev_mask = mask & ~(std::size_t{1} << last);
    bool stepped = false;
    for (std::size_t prev = 0; prev < m && !stepped; ++prev) {
      if (!(prev_mask & (std::size_t{1} << prev))) continue;
      const std::size_t pair = (prev + 1) * un + (last + 1);
      const std::int64_t cur = dp[prev_mask * m + prev];
      if (best_edge[pair] == kNoEdge || cur == kInf || cur + w[pair] != dp[mask * m + last]) continue;
      tour.push_back(best_edge[pair]);
      mask = prev_mask;
      last = prev;
      stepped = true;
    }
    if (!stepped) throw InvalidState("held_karp: reconstruction failed");
  }
  tour.push_back(best_edge[last + 1]);
  return optimal(inst, std::move(tour));
}

namespace {

class Enumerator {
 public:
  explicit Enumerator(const Instance& inst) : inst_(inst) {
    visited_.assign(static_cast<std::size_t>(inst.vertex_capacity()), 0);
  }

  TourResult run() {
    const auto verts = inst_.vertices();
    start_ = verts.front();
    visited_[static_cast<std::size_t>(start_)] = 1;
    walk(start_, kNoEdge, 1);
    if (!best_) return TourResult{};
    return optimal(inst_, *best_);
  }

 private:
  bool forced_ok(VertexId v, EdgeId a, EdgeId b) const {
    for (EdgeId e : inst_.incident(v)) {
      if (inst_.edge(e).forced && e != a && e != b) return false;
    }
    return true;
  }

  void walk(VertexId cur, EdgeId arrival, int count) {
    const int n = inst_.num_vertices();
    for (EdgeId e : inst_.incident(cur)) {
      if (e == arrival) continue;
      const VertexId w = inst_.edge(e).other(cur);
      if (cur != start_ && !forced_ok(cur, arrival, e)) continue;
      if (w == start_) {
        if (count != n || path_.empty()) continue;
        if (!forced_ok(start_, path_.front(), e)) continue;
        path_.push_back(e);
        const Rational cost = inst_.cost(path_);
        if (!best_ || cost < best_cost_) {
          best_ = path_;
          best_cost_ = cost;
        }
        path_.pop_back();
        continue;
      }
      if (visited_[static_cast<std::size_t>(w)]) continue;
      visited_[static_cast<std::size_t>(w)] = 1;
      path_.push_back(e);
      walk(w, e, count + 1);
      path_.pop_back();
      visited_[static_cast<std::size_t>(w)] = 0;
    }
  }

  const Instance& inst_;
  VertexId start_ = kNoVertex;
  std::vector<char> visited_;
  std::vector<EdgeId> path_;
  std::optional<std::vector<EdgeId>> best_;
  Rational best_cost_;
};

}  // namespace

TourResult exhaustive_forced(const Instance& inst) {
  const int n = inst.num_vertices();
  if (n > kExhaustiveLimit) throw std::invalid_argument("exhaustive_forced refuses n > " + std::to_string(kExhaustiveLimit));
  if (n < 2) return TourResult{};
  return Enumerator(inst).run();
}

}  // namespace cubictsp
