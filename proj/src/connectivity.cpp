#include "cubictsp/connectivity.hpp"

#include "cubictsp/detail/bridges.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cubictsp {

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::trivial: return "trivial";
    case BlockKind::reducible: return "reducible";
    case BlockKind::two_pendent_critical: return "critical";
    case BlockKind::normal: return "normal";
  }
  return "?";
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// Labels the vertices of H by connected component of H minus `removed`.
// Returns the number of pieces; labels of vertices outside H stay -1.
int label_pieces(const Instance& inst, const UComponent& comp, const std::vector<char>& removed,
                 std::vector<int>& label) {
  label.assign(static_cast<std::size_t>(inst.vertex_capacity()), -1);
  int pieces = 0;
  std::vector<VertexId> stack;
  for (VertexId s : comp.vertices) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = pieces;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : inst.incident(v)) {
        const auto& ed = inst.edge(e);
        if (ed.forced || removed[static_cast<std::size_t>(e)]) continue;
        const VertexId w = ed.other(v);
        if (label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = pieces;
          stack.push_back(w);
        }
      }
    }
    ++pieces;
  }
  return pieces;
}

int forced_boundary_of(const Instance& inst, std::span<const VertexId> vertex_set) {
  int count = 0;
  for (VertexId v : vertex_set) {
    for (EdgeId e : inst.incident(v)) {
      const auto& ed = inst.edge(e);
      if (ed.forced && !std::binary_search(vertex_set.begin(), vertex_set.end(), ed.other(v))) ++count;
    }
  }
  return count;
}

// Puts a 2-cut class of edges into circuit order (see Circuit). The first
// edge is the smallest id; the direction goes toward the smaller second edge.
std::vector<EdgeId> order_circuit(const Instance& inst, const UComponent& comp, std::vector<EdgeId> edge_class) {
  std::sort(edge_class.begin(), edge_class.end());
  std::vector<char> removed(static_cast<std::size_t>(inst.edge_capacity()), 0);
  for (EdgeId e : edge_class) removed[static_cast<std::size_t>(e)] = 1;
  std::vector<int> label;
  const int pieces = label_pieces(inst, comp, removed, label);
  std::vector<std::vector<EdgeId>> piece_edges(static_cast<std::size_t>(pieces));
  std::vector<VertexId> piece_min(static_cast<std::size_t>(pieces), kNoVertex);
  for (VertexId v : comp.vertices) {
    auto& m = piece_min[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])];
    if (m == kNoVertex) m = v;  // vertices are ascending
  }
  for (EdgeId e : edge_class) {
    const auto& ed = inst.edge(e);
    const int a = label[static_cast<std::size_t>(ed.u)];
    const int b = label[static_cast<std::size_t>(ed.v)];
    if (a == b) throw InvalidState("circuit edge inside one block");
    piece_edges[static_cast<std::size_t>(a)].push_back(e);
    piece_edges[static_cast<std::size_t>(b)].push_back(e);
  }
  for (const auto& pe : piece_edges) {
    if (pe.size() != 2) throw InvalidState("circuit block does not have exactly two circuit edges");
  }
  auto other_edge = [&](int piece, EdgeId e) {
    const auto& pe = piece_edges[static_cast<std::size_t>(piece)];
    return pe[0] == e ? pe[1] : pe[0];
  };
  auto other_piece = [&](EdgeId e, int piece) {
    const auto& ed = inst.edge(e);
    const int a = label[static_cast<std::size_t>(ed.u)];
    return a == piece ? label[static_cast<std::size_t>(ed.v)] : a;
  };

  const EdgeId first = edge_class.front();
  const int a = label[static_cast<std::size_t>(inst.edge(first).u)];
  const int b = label[static_cast<std::size_t>(inst.edge(first).v)];
  const EdgeId next_a = other_edge(a, first);
  const EdgeId next_b = other_edge(b, first);
  int piece;
  if (next_a == next_b) {
    piece = piece_min[static_cast<std::size_t>(a)] < piece_min[static_cast<std::size_t>(b)] ? a : b;
  } else {
    piece = next_a < next_b ? a : b;
  }
  std::vector<EdgeId> ordered{first};
  EdgeId cur = first;
  for (;;) {
    const EdgeId next = other_edge(piece, cur);
    if (next == first) break;
    ordered.push_back(next);
    piece = other_piece(next, piece);
    cur = next;
  }
  if (ordered.size() != edge_class.size()) throw InvalidState("2-cut class is not a single circuit");
  return ordered;
}

VertexId endpoint_in(const Instance& inst, EdgeId e, const std::vector<int>& label, int piece) {
  const auto& ed = inst.edge(e);
  return label[static_cast<std::size_t>(ed.u)] == piece ? ed.u : ed.v;
}

}  // namespace

GraphBridges graph_bridges(const Instance& inst) {
  const auto verts = inst.vertices();
  auto scan = detail::scan_bridges(inst, verts, [](EdgeId) { return true; });
  GraphBridges out;
  out.connected = scan.components <= 1;
  out.bridges = std::move(scan.bridges);
  std::sort(out.bridges.begin(), out.bridges.end());
  return out;
}

std::vector<EdgeId> u_bridges(const Instance& inst, const UComponent& component) {
  auto scan = detail::scan_bridges(inst, component.vertices, [&](EdgeId e) { return !inst.edge(e).forced; });
  std::sort(scan.bridges.begin(), scan.bridges.end());
  return std::move(scan.bridges);
}

bool is_2_edge_connected(const Instance& inst, const UComponent& component) {
  if (component.trivial()) return true;
  auto scan = detail::scan_bridges(inst, component.vertices, [&](EdgeId e) { return !inst.edge(e).forced; });
  return scan.components == 1 && scan.bridges.empty();
}

std::vector<Block> blocks_along(const Instance& inst, const UComponent& component, const Circuit& circuit) {
  if (circuit.edges.size() < 2) throw std::invalid_argument("blocks_along needs a nontrivial circuit");
  std::vector<char> removed(static_cast<std::size_t>(inst.edge_capacity()), 0);
  for (EdgeId e : circuit.edges) removed[static_cast<std::size_t>(e)] = 1;
  std::vector<int> label;
  const int pieces = label_pieces(inst, component, removed, label);
  const std::size_t p = circuit.edges.size();
  if (static_cast<std::size_t>(pieces) != p) throw InvalidState("circuit does not split its host into p blocks");

  // piece shared by consecutive edges e_i, e_{i+1}
  auto shared_piece = [&](EdgeId e, EdgeId f) {
    const auto& x = inst.edge(e);
    const auto& y = inst.edge(f);
    for (VertexId a : {x.u, x.v}) {
      for (VertexId b : {y.u, y.v}) {
        if (label[static_cast<std::size_t>(a)] == label[static_cast<std::size_t>(b)]) {
          return label[static_cast<std::size_t>(a)];
        }
      }
    }
    throw InvalidState("consecutive circuit edges do not share a block");
  };

  std::vector<std::vector<VertexId>> members(static_cast<std::size_t>(pieces));
  for (VertexId v : component.vertices) members[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<Block> blocks;
  blocks.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    const EdgeId in_edge = circuit.edges[i];
    const EdgeId out_edge = circuit.edges[(i + 1) % p];
    int piece = shared_piece(in_edge, out_edge);
    if (p == 2) {
      // both pieces touch both edges; keep the order fixed by order_circuit
      std::vector<int> both{label[static_cast<std::size_t>(inst.edge(in_edge).u)],
                            label[static_cast<std::size_t>(inst.edge(in_edge).v)]};
      auto min_of = [&](int pc) { return members[static_cast<std::size_t>(pc)].front(); };
      piece = (min_of(both[0]) < min_of(both[1])) == (i == 0) ? both[0] : both[1];
    }
    Block b;
    b.vertices = members[static_cast<std::size_t>(piece)];
    b.entry = endpoint_in(inst, in_edge, label, piece);
    b.exit = endpoint_in(inst, out_edge, label, piece);
    b.forced_boundary = forced_boundary_of(inst, b.vertices);
    b.kind = classify_block(inst, b);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::vector<Circuit> circuit_partition(const Instance& inst, const UComponent& component) {
  if (component.trivial()) throw InvalidState("circuit_partition on a trivial U-component");
  if (!is_2_edge_connected(inst, component)) throw InvalidState("circuit_partition needs a 2-edge-connected U-component");
  const auto& edges = component.edges;
  std::vector<int> index(static_cast<std::size_t>(inst.edge_capacity()), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) index[static_cast<std::size_t>(edges[i])] = static_cast<int>(i);

  DisjointSets sets(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeId skip = edges[i];
    auto scan = detail::scan_bridges(inst, component.vertices,
                                     [&](EdgeId f) { return f != skip && !inst.edge(f).forced; });
    for (EdgeId f : scan.bridges) sets.unite(static_cast<int>(i), index[static_cast<std::size_t>(f)]);
  }
  std::vector<std::vector<EdgeId>> classes(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) classes[static_cast<std::size_t>(sets.find(static_cast<int>(i)))].push_back(edges[i]);

  std::vector<Circuit> circuits;
  for (auto& cls : classes) {
    if (cls.empty()) continue;
    Circuit c;
    if (cls.size() == 1) {
      c.edges = cls;
    } else {
      c.edges = order_circuit(inst, component, std::move(cls));
      c.blocks = blocks_along(inst, component, c);
    }
    circuits.push_back(std::move(c));
  }
  std::sort(circuits.begin(), circuits.end(),
            [](const Circuit& x, const Circuit& y) { return x.edges.front() < y.edges.front(); });
  return circuits;
}

BlockKind classify_block(const Instance& inst, const Block& block) {
  if (block.vertices.size() == 1) {
    return inst.degrees(block.vertices.front()).forced >= 1 ? BlockKind::trivial : BlockKind::reducible;
  }
  const auto shape = match_critical_shape(inst, block.vertices);
  if (shape && shape->pendency == 2) return BlockKind::two_pendent_critical;
  return BlockKind::normal;
}

std::optional<CriticalShape> match_critical_shape(const Instance& inst, std::span<const VertexId> vertex_set) {
  const std::size_t n = vertex_set.size();
  if (n != 6 && n != 8) return std::nullopt;
  const auto induced = inst.induced_edges(vertex_set);
  if (induced.size() != (n == 6 ? 6u : 9u)) return std::nullopt;

  auto pos = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(vertex_set.begin(), vertex_set.end(), v) - vertex_set.begin());
  };
  std::vector<std::vector<VertexId>> adj(n);
  for (EdgeId e : induced) {
    const auto& ed = inst.edge(e);
    if (ed.forced) return std::nullopt;
    auto& au = adj[pos(ed.u)];
    if (std::find(au.begin(), au.end(), ed.v) != au.end()) return std::nullopt;  // parallel
    au.push_back(ed.v);
    adj[pos(ed.v)].push_back(ed.u);
  }

  int k_u = 0;
  int k_f = 0;
  for (VertexId v : vertex_set) {
    for (EdgeId e : inst.incident(v)) {
      const auto& ed = inst.edge(e);
      if (std::binary_search(vertex_set.begin(), vertex_set.end(), ed.other(v))) continue;
      (ed.forced ? k_f : k_u) += 1;
    }
  }
  if (k_u + k_f != 6) return std::nullopt;

  if (n == 6) {
    for (const auto& a : adj) {
      if (a.size() != 2) return std::nullopt;
    }
    // connected 2-regular on 6 vertices without parallels: one 6-cycle or two triangles
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{vertex_set.front()};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : adj[pos(v)]) {
        if (!seen[pos(w)]) {
          seen[pos(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) return std::nullopt;
    return CriticalShape{CriticalVariant::six_cycle, k_u};
  }

  std::vector<VertexId> branch;
  for (std::size_t i = 0; i < n; ++i) {
    if (adj[i].size() == 3) {
      branch.push_back(vertex_set[i]);
    } else if (adj[i].size() != 2) {
      return std::nullopt;
    }
  }
  if (branch.size() != 2) return std::nullopt;
  const VertexId s = branch[0];
  const VertexId t = branch[1];
  bool has_three = false;
  std::size_t covered = 2;
  for (VertexId start : adj[pos(s)]) {
    VertexId prev = s;
    VertexId cur = start;
    int length = 1;
    while (cur != t) {
      if (cur == s) return std::nullopt;
      const auto& a = adj[pos(cur)];
      const VertexId next = a[0] == prev ? a[1] : a[0];
      prev = cur;
      cur = next;
      ++length;
      ++covered;
      if (length > 8) return std::nullopt;
    }
    if (length == 3) has_three = true;
  }
  if (!has_three || covered != n) return std::nullopt;
  return CriticalShape{CriticalVariant::six_cycle_extension, k_u};
}

bool is_critical_component(const Instance& inst, const UComponent& component) {
  const auto shape = match_critical_shape(inst, component.vertices);
  return shape && shape->pendency == 0;
}

bool is_four_cycle(const Instance& inst, const UComponent& component) {
  if (component.vertices.size() != 4 || component.edges.size() != 4) return false;
  for (VertexId v : component.vertices) {
    if (inst.degrees(v).unforced != 2) return false;
  }
  return true;
}

bool is_proper_four_cycle(const Instance& inst, const UComponent& component) {
  if (!is_four_cycle(inst, component)) return false;
  for (VertexId v : component.vertices) {
    if (inst.degrees(v).forced != 1) return false;
  }
  return true;
}

Circuit rotate_circuit(const Circuit& circuit, std::size_t start) {
  const std::size_t p = circuit.edges.size();
  if (start >= p) throw std::invalid_argument("rotate_circuit: start out of range");
  Circuit out;
  out.host = circuit.host;
  for (std::size_t i = 0; i < p; ++i) out.edges.push_back(circuit.edges[(start + i) % p]);
  if (!circuit.blocks.empty()) {
    for (std::size_t i = 0; i < p; ++i) out.blocks.push_back(circuit.blocks[(start + i) % p]);
  }
  return out;
}

std::vector<Block> all_blocks(const Instance& inst, const UComponent& component) {
  std::vector<Block> out;
  for (auto& c : circuit_partition(inst, component)) {
    for (auto& b : c.blocks) out.push_back(std::move(b));
  }
  return out;
}

NormalBlockChoice find_minimal_normal_block(const Instance& inst, const UComponent& component) {
  auto circuits = circuit_partition(inst, component);
  struct Candidate {
    std::size_t circuit;
    std::size_t block;
  };
  std::vector<Candidate> normals;
  for (std::size_t c = 0; c < circuits.size(); ++c) {
    for (std::size_t b = 0; b < circuits[c].blocks.size(); ++b) {
      if (circuits[c].blocks[b].kind == BlockKind::normal) normals.push_back({c, b});
    }
  }
  if (normals.empty()) throw InvalidState("U-component has no normal block");
  auto verts = [&](const Candidate& x) -> const std::vector<VertexId>& { return circuits[x.circuit].blocks[x.block].vertices; };

  std::optional<Candidate> best;
  for (const auto& cand : normals) {
    const auto& vs = verts(cand);
    bool minimal = true;
    for (const auto& other : normals) {
      const auto& os = verts(other);
      if (os.size() < vs.size() && std::includes(vs.begin(), vs.end(), os.begin(), os.end())) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    if (!best) {
      best = cand;
      continue;
    }
    const auto& bs = verts(*best);
    if (vs.size() < bs.size() || (vs.size() == bs.size() && vs.front() < bs.front())) best = cand;
  }
  return NormalBlockChoice{std::move(circuits[best->circuit]), best->block};
}

std::string dump_circuits(const Instance& inst, const std::vector<Circuit>& circuits) {
  std::ostringstream os;
  for (const auto& c : circuits) {
    os << "circuit";
    for (EdgeId e : c.edges) os << ' ' << e;
    os << '\n';
    for (const auto& b : c.blocks) {
      os << "  block";
      for (VertexId v : b.vertices) os << ' ' << v;
      os << ' ' << to_string(b.kind) << ' ' << (b.odd() ? "odd" : "even") << '\n';
    }
  }
  (void)inst;
  return os.str();
}

}  // namespace cubictsp
