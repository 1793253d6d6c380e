#include "cubictsp/graph.hpp"

#include <algorithm>
#include <string>

namespace cubictsp {

Instance::Instance(int num_vertices) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
  incidence_.resize(static_cast<std::size_t>(num_vertices));
  vertex_alive_.assign(static_cast<std::size_t>(num_vertices), 1);
  alive_vertices_ = num_vertices;
}

VertexId Instance::add_vertex() {
  incidence_.emplace_back();
  vertex_alive_.push_back(1);
  ++alive_vertices_;
  return static_cast<VertexId>(incidence_.size() - 1);
}

EdgeId Instance::add_edge(VertexId u, VertexId v, Rational weight, bool forced) {
  if (!vertex_alive(u) || !vertex_alive(v)) throw std::invalid_argument("edge endpoint is not an alive vertex");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{u, v, std::move(weight), forced, true});
  incidence_[static_cast<std::size_t>(u)].push_back(id);
  incidence_[static_cast<std::size_t>(v)].push_back(id);
  ++alive_edges_;
  return id;
}

void Instance::force_edge(EdgeId e) {
  if (!edge_alive(e)) throw std::invalid_argument("cannot force a dead edge");
  edges_[static_cast<std::size_t>(e)].forced = true;
}

void Instance::delete_edge(EdgeId e) {
  if (!edge_alive(e)) throw std::invalid_argument("cannot delete a dead edge");
  auto& ed = edges_[static_cast<std::size_t>(e)];
  ed.alive = false;
  for (VertexId x : {ed.u, ed.v}) {
    auto& inc = incidence_[static_cast<std::size_t>(x)];
    inc.erase(std::find(inc.begin(), inc.end(), e));
  }
  --alive_edges_;
}

void Instance::delete_vertex(VertexId v) {
  if (!vertex_alive(v)) throw std::invalid_argument("cannot delete a dead vertex");
  if (!incident(v).empty()) throw std::invalid_argument("vertex still has incident edges");
  vertex_alive_[static_cast<std::size_t>(v)] = 0;
  --alive_vertices_;
}

Degrees Instance::degrees(VertexId v) const {
  Degrees d;
  for (EdgeId e : incident(v)) {
    ++d.total;
    if (edges_[static_cast<std::size_t>(e)].forced) {
      ++d.forced;
    } else {
      ++d.unforced;
    }
  }
  return d;
}

std::vector<VertexId> Instance::vertices() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(alive_vertices_));
  for (VertexId v = 0; v < vertex_capacity(); ++v) {
    if (vertex_alive_[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

std::vector<EdgeId> Instance::edges() const {
  std::vector<EdgeId> out;
  out.reserve(static_cast<std::size_t>(alive_edges_));
  for (EdgeId e = 0; e < edge_capacity(); ++e) {
    if (edges_[static_cast<std::size_t>(e)].alive) out.push_back(e);
  }
  return out;
}

std::vector<EdgeId> Instance::forced_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_capacity(); ++e) {
    const auto& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.alive && ed.forced) out.push_back(e);
  }
  return out;
}

std::vector<EdgeId> Instance::induced_edges(std::span<const VertexId> vertex_set) const {
  std::vector<EdgeId> out;
  for (VertexId v : vertex_set) {
    for (EdgeId e : incident(v)) {
      const VertexId w = edges_[static_cast<std::size_t>(e)].other(v);
      if (v < w && std::binary_search(vertex_set.begin(), vertex_set.end(), w)) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational Instance::cost(std::span<const EdgeId> edge_set) const {
  Rational total = 0;
  for (EdgeId e : edge_set) total += edge(e).weight;
  return total;
}

bool same_structure(const Instance& a, const Instance& b) {
  if (a.vertices() != b.vertices()) return false;
  const auto ea = a.edges();
  if (ea != b.edges()) return false;
  for (EdgeId e : ea) {
    const auto& x = a.edge(e);
    const auto& y = b.edge(e);
    if (x.u != y.u || x.v != y.v || x.weight != y.weight || x.forced != y.forced) return false;
  }
  return true;
}

CutEdges cut(const Instance& inst, std::span<const VertexId> vertex_set) {
  if (vertex_set.empty()) throw std::invalid_argument("cut of an empty vertex set");
  std::vector<char> in(static_cast<std::size_t>(inst.vertex_capacity()), 0);
  int count = 0;
  for (VertexId v : vertex_set) {
    if (!inst.vertex_alive(v)) throw std::invalid_argument("cut vertex set contains a dead vertex");
    if (!in[static_cast<std::size_t>(v)]) ++count;
    in[static_cast<std::size_t>(v)] = 1;
  }
  if (count >= inst.num_vertices()) throw std::invalid_argument("cut vertex set must be a proper subset");
  CutEdges out;
  for (VertexId v = 0; v < inst.vertex_capacity(); ++v) {
    if (!in[static_cast<std::size_t>(v)]) continue;
    for (EdgeId e : inst.incident(v)) {
      const auto& ed = inst.edge(e);
      if (in[static_cast<std::size_t>(ed.other(v))]) continue;
      (ed.forced ? out.forced : out.unforced).push_back(e);
    }
  }
  std::sort(out.forced.begin(), out.forced.end());
  std::sort(out.unforced.begin(), out.unforced.end());
  return out;
}

Degrees degrees(const Instance& inst, VertexId v) {
  if (!inst.vertex_alive(v)) throw std::invalid_argument("degrees of a dead vertex");
  return inst.degrees(v);
}

std::vector<UComponent> u_components(const Instance& inst) {
  std::vector<int> label(static_cast<std::size_t>(inst.vertex_capacity()), -1);
  std::vector<UComponent> out;
  std::vector<VertexId> stack;
  for (VertexId s : inst.vertices()) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    UComponent comp;
    label[static_cast<std::size_t>(s)] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      comp.vertices.push_back(v);
      for (EdgeId e : inst.incident(v)) {
        const auto& ed = inst.edge(e);
        if (ed.forced) {
          ++comp.boundary_forced;
          continue;
        }
        if (ed.u == v) comp.edges.push_back(e);  // each unforced edge once
        const VertexId w = ed.other(v);
        if (label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    std::sort(comp.edges.begin(), comp.edges.end());
    out.push_back(std::move(comp));
  }
  // Forced edges with both ends inside one component are chords, not boundary.
  for (auto& comp : out) {
    int chords = 0;
    for (VertexId v : comp.vertices) {
      for (EdgeId e : inst.incident(v)) {
        const auto& ed = inst.edge(e);
        if (ed.forced && label[static_cast<std::size_t>(ed.other(v))] == label[static_cast<std::size_t>(v)]) ++chords;
      }
    }
    comp.boundary_forced -= chords;
  }
  return out;
}

std::vector<std::string> validate_input(const Instance& inst) {
  std::vector<std::string> problems;
  for (EdgeId e : inst.edges()) {
    if (inst.edge(e).u == inst.edge(e).v) problems.push_back("self-loop on edge " + std::to_string(e));
  }
  for (VertexId v : inst.vertices()) {
    const int d = inst.degrees(v).total;
    if (d > 3) problems.push_back("vertex " + std::to_string(v + 1) + " has degree " + std::to_string(d));
  }
  return problems;
}

}  // namespace cubictsp
