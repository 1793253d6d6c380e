#pragma once

#include "cubictsp/rational.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cubictsp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

// Raised when an operation is called on an instance that does not satisfy
// its structural precondition (as opposed to a bad argument).
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Rational weight;
  bool forced = false;
  bool alive = true;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool joins(VertexId a, VertexId b) const { return (u == a && v == b) || (u == b && v == a); }
};

struct Degrees {
  int total = 0;
  int forced = 0;
  int unforced = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

// A multigraph with per-edge forced sign. Vertex and edge ids are dense and
// never reused: deleting marks the slot dead, new vertices/edges append.
// Copies are deep, so a copy is an independent search snapshot.
class Instance {
 public:
  Instance() = default;
  explicit Instance(int num_vertices);

  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v, Rational weight, bool forced = false);

  void force_edge(EdgeId e);
  void delete_edge(EdgeId e);
  // The vertex must have no alive incident edge.
  void delete_vertex(VertexId v);

  int vertex_capacity() const { return static_cast<int>(incidence_.size()); }
  int edge_capacity() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return alive_vertices_; }
  int num_edges() const { return alive_edges_; }

  bool vertex_alive(VertexId v) const {
    return v >= 0 && v < vertex_capacity() && vertex_alive_[static_cast<std::size_t>(v)] != 0;
  }
  bool edge_alive(EdgeId e) const {
    return e >= 0 && e < edge_capacity() && edges_[static_cast<std::size_t>(e)].alive;
  }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  // Alive incident edges of v, ascending by id.
  std::span<const EdgeId> incident(VertexId v) const {
    return incidence_.at(static_cast<std::size_t>(v));
  }

  Degrees degrees(VertexId v) const;

  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> edges() const;
  std::vector<EdgeId> forced_edges() const;

  // Edges with both endpoints in the (sorted) vertex set.
  std::vector<EdgeId> induced_edges(std::span<const VertexId> vertex_set) const;

  Rational cost(std::span<const EdgeId> edge_set) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::vector<char> vertex_alive_;
  int alive_vertices_ = 0;
  int alive_edges_ = 0;
};

// Structural equality over alive elements (ids, endpoints, weights, signs).
bool same_structure(const Instance& a, const Instance& b);

struct CutEdges {
  std::vector<EdgeId> forced;
  std::vector<EdgeId> unforced;
  std::size_t size() const { return forced.size() + unforced.size(); }
};

// Alive edges with exactly one endpoint in X. X must be a nonempty proper
// subset of the alive vertices.
CutEdges cut(const Instance& inst, std::span<const VertexId> vertex_set);

// Throws std::invalid_argument for a dead vertex.
Degrees degrees(const Instance& inst, VertexId v);

struct UComponent {
  std::vector<VertexId> vertices;  // ascending
  std::vector<EdgeId> edges;       // unforced edges, ascending
  int boundary_forced = 0;         // |cut_F(H)|

  bool trivial() const { return edges.empty(); }
  bool odd() const { return boundary_forced % 2 != 0; }
};

// Connected components of (V, U), ordered by smallest vertex id.
std::vector<UComponent> u_components(const Instance& inst);

// Checks the input contract: no self-loops, every vertex degree <= 3.
// Returns a list of human-readable problems; empty means valid.
std::vector<std::string> validate_input(const Instance& inst);

}  // namespace cubictsp
