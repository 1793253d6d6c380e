#pragma once

#include "cubictsp/graph.hpp"

#include <span>
#include <vector>

namespace cubictsp::detail {

struct BridgeScan {
  std::vector<EdgeId> bridges;
  int components = 0;
};

// Bridges of the subgraph spanned by `vertices` and the alive edges accepted
// by `keep`. Parallel edges are distinguished by id, so a doubled edge is
// never a bridge. Iterative Tarjan lowpoint.
template <class EdgeFilter>
BridgeScan scan_bridges(const Instance& inst, std::span<const VertexId> vertices, EdgeFilter&& keep) {
  BridgeScan out;
  const auto cap = static_cast<std::size_t>(inst.vertex_capacity());
  std::vector<int> disc(cap, -1);
  std::vector<int> low(cap, 0);
  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  for (VertexId root : vertices) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    ++out.components;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    stack.push_back({root, kNoEdge, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto inc = inst.incident(f.v);
      if (f.next < inc.size()) {
        const EdgeId e = inc[f.next++];
        if (e == f.parent_edge || !keep(e)) continue;
        const VertexId w = inst.edge(e).other(f.v);
        const auto wi = static_cast<std::size_t>(w);
        if (disc[wi] < 0) {
          disc[wi] = low[wi] = timer++;
          stack.push_back({w, e, 0});
        } else {
          auto& lv = low[static_cast<std::size_t>(f.v)];
          if (disc[wi] < lv) lv = disc[wi];
        }
      } else {
        const VertexId v = f.v;
        const EdgeId pe = f.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          const VertexId p = stack.back().v;
          auto& lp = low[static_cast<std::size_t>(p)];
          const int lv = low[static_cast<std::size_t>(v)];
          if (lv < lp) lp = lv;
          if (lv > disc[static_cast<std::size_t>(p)]) out.bridges.push_back(pe);
        }
      }
    }
  }
  return out;
}

}  // namespace cubictsp::detail
