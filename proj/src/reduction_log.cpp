#include "cubictsp/reduction_log.hpp"

#include <algorithm>
#include <set>

namespace cubictsp {

std::string_view to_string(RewriteKind kind) {
  switch (kind) {
    case RewriteKind::include_edge: return "include";
    case RewriteKind::delete_edge: return "delete";
    case RewriteKind::contract_path: return "contract";
    case RewriteKind::parallel_prune: return "parallel";
    case RewriteKind::cut3: return "cut3";
    case RewriteKind::cut4: return "cut4";
    case RewriteKind::solved_direct: return "solved";
    case RewriteKind::infeasible: return "infeasible";
  }
  return "?";
}

Instance replay(const Instance& original, const ReductionLog& log) {
  Instance inst = original;
  for (const auto& rec : log.entries()) {
    for (EdgeId e : rec.removed_edges) inst.delete_edge(e);
    for (VertexId v : rec.removed_vertices) inst.delete_vertex(v);
    for (VertexId v : rec.added_vertices) {
      if (inst.add_vertex() != v) throw InvalidState("replay: vertex id mismatch");
    }
    for (const auto& ae : rec.added_edges) {
      if (inst.add_edge(ae.u, ae.v, ae.weight, ae.forced) != ae.id) throw InvalidState("replay: edge id mismatch");
    }
    for (EdgeId e : rec.forced_edges) inst.force_edge(e);
  }
  return inst;
}

std::vector<EdgeId> expand_solution(const ReductionLog& log, std::vector<EdgeId> tour) {
  std::set<EdgeId> current(tour.begin(), tour.end());
  const auto& entries = log.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const auto& rec = *it;
    for (const auto& [created, replaced] : rec.substitutions) {
      if (current.erase(created) == 0) continue;
      current.insert(replaced.begin(), replaced.end());
    }
    if (rec.kind == RewriteKind::cut3 && rec.cut3_new[0] != kNoEdge) {
      int used = 0;
      int missing = -1;
      for (int i = 0; i < 3; ++i) {
        if (current.count(rec.cut3_new[static_cast<std::size_t>(i)])) {
          ++used;
        } else {
          missing = i;
        }
      }
      if (used != 2) throw InvalidState("expand_solution: tour uses " + std::to_string(used) + " edges of a 3-cut gadget");
      const auto& path = rec.cut3_paths[static_cast<std::size_t>(missing)];
      if (!path) throw InvalidState("expand_solution: tour selects an infeasible 3-cut pairing");
      for (int i = 0; i < 3; ++i) {
        if (i == missing) continue;
        current.erase(rec.cut3_new[static_cast<std::size_t>(i)]);
        current.insert(rec.cut3_old[static_cast<std::size_t>(i)]);
      }
      current.insert(path->begin(), path->end());
    }
    for (const auto& ae : rec.added_edges) {
      if (current.count(ae.id)) throw InvalidState("expand_solution: tour uses an unexpanded gadget edge");
    }
  }
  return {current.begin(), current.end()};
}

}  // namespace cubictsp
