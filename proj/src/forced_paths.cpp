#include "cubictsp/forced_paths.hpp"

#include <algorithm>
#include <numeric>

namespace cubictsp {
namespace {

bool interior(const Instance& inst, VertexId v) {
  const auto d = inst.degrees(v);
  return d.total == 2 && d.forced == 2;
}

EdgeId other_incident(const Instance& inst, VertexId v, EdgeId via) {
  for (EdgeId e : inst.incident(v)) {
    if (e != via) return e;
  }
  return kNoEdge;
}

// Walks from `start` through `first` while the current vertex is an interior
// path vertex. Returns the stopping vertex; edges and interior vertices seen
// are appended.
VertexId walk(const Instance& inst, VertexId start, EdgeId first, std::vector<EdgeId>& edges,
              std::vector<VertexId>& inner) {
  EdgeId via = first;
  VertexId cur = inst.edge(first).other(start);
  edges.push_back(first);
  while (cur != start && interior(inst, cur)) {
    inner.push_back(cur);
    via = other_incident(inst, cur, via);
    edges.push_back(via);
    cur = inst.edge(via).other(cur);
  }
  return cur;
}

enum class ForcedCycle { none, spanning, short_cycle };

// Cycles among the forced edges, wherever their vertices sit. With d_F <= 2
// a forced cycle is a tour exactly when it is the only forced component and
// the forced edges number n.
ForcedCycle forced_cycle(const Instance& inst) {
  std::vector<VertexId> parent(static_cast<std::size_t>(inst.vertex_capacity()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  const auto forced = inst.forced_edges();
  int parts = inst.num_vertices();
  bool cycle = false;
  for (EdgeId e : forced) {
    const VertexId a = find(inst.edge(e).u);
    const VertexId b = find(inst.edge(e).v);
    if (a == b) {
      cycle = true;
    } else {
      parent[static_cast<std::size_t>(a)] = b;
      --parts;
    }
  }
  if (!cycle) return ForcedCycle::none;
  return parts == 1 && static_cast<int>(forced.size()) == inst.num_vertices() ? ForcedCycle::spanning
                                                                               : ForcedCycle::short_cycle;
}

}  // namespace

ContractionResult contract_forced_paths(Instance& inst, ReductionLog* log) {
  ContractionResult result;
  if (const ForcedCycle c = forced_cycle(inst); c != ForcedCycle::none) {
    result.status = c == ForcedCycle::spanning ? ContractionStatus::solved : ContractionStatus::infeasible;
    if (c == ForcedCycle::spanning) result.tour = inst.forced_edges();
    return result;
  }
  for (VertexId v = 0; v < inst.vertex_capacity(); ++v) {
    if (!inst.vertex_alive(v) || !interior(inst, v)) continue;
    const auto inc = inst.incident(v);
    const EdgeId a = inc[0];
    const EdgeId b = inc[1];

    std::vector<EdgeId> left_edges;
    std::vector<VertexId> left_inner;
    const VertexId left_end = walk(inst, v, a, left_edges, left_inner);
    if (left_end == v) {
      // closed forced cycle made only of interior vertices
      if (static_cast<int>(left_inner.size()) + 1 == inst.num_vertices()) {
        result.status = ContractionStatus::solved;
        result.tour = left_edges;
        std::sort(result.tour.begin(), result.tour.end());
      } else {
        result.status = ContractionStatus::infeasible;
      }
      return result;
    }
    std::vector<EdgeId> right_edges;
    std::vector<VertexId> right_inner;
    const VertexId right_end = walk(inst, v, b, right_edges, right_inner);

    if (left_end == right_end) {
      // a forced cycle through one non-interior vertex
      const int cycle_size = static_cast<int>(left_inner.size() + right_inner.size()) + 2;
      if (cycle_size == inst.num_vertices() && inst.degrees(left_end).total == 2) {
        result.status = ContractionStatus::solved;
        result.tour = left_edges;
        result.tour.insert(result.tour.end(), right_edges.begin(), right_edges.end());
        std::sort(result.tour.begin(), result.tour.end());
      } else {
        result.status = ContractionStatus::infeasible;
      }
      return result;
    }

    std::vector<EdgeId> path(left_edges.rbegin(), left_edges.rend());
    path.insert(path.end(), right_edges.begin(), right_edges.end());
    std::vector<VertexId> inner(left_inner.rbegin(), left_inner.rend());
    inner.push_back(v);
    inner.insert(inner.end(), right_inner.begin(), right_inner.end());

    RewriteRecord rec;
    rec.kind = RewriteKind::contract_path;
    rec.region_size = static_cast<int>(inner.size());
    Rational total = inst.cost(path);
    rec.removed_edges = path;
    std::sort(rec.removed_edges.begin(), rec.removed_edges.end());
    rec.removed_vertices = inner;
    std::sort(rec.removed_vertices.begin(), rec.removed_vertices.end());
    for (EdgeId e : rec.removed_edges) inst.delete_edge(e);
    for (VertexId x : rec.removed_vertices) inst.delete_vertex(x);
    const EdgeId merged = inst.add_edge(left_end, right_end, total, true);
    rec.added_edges.push_back(AddedEdge{merged, left_end, right_end, total, true});
    rec.substitutions.emplace_back(merged, path);
    if (log) log->append(std::move(rec));
  }
  return result;
}

}  // namespace cubictsp
