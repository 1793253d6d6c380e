#pragma once

#include "cubictsp/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cubictsp {

enum class BlockKind { trivial, reducible, two_pendent_critical, normal };
std::string_view to_string(BlockKind kind);

// A block along a circuit: the piece of the host U-component between two
// consecutive circuit edges. `entry` is the endpoint of the incoming circuit
// edge, `exit` the endpoint of the outgoing one (equal for one-vertex blocks).
struct Block {
  std::vector<VertexId> vertices;  // ascending
  VertexId entry = kNoVertex;
  VertexId exit = kNoVertex;
  int forced_boundary = 0;  // |cut_F(B)|
  BlockKind kind = BlockKind::normal;

  bool odd() const { return forced_boundary % 2 != 0; }
};

// Circuit e_1..e_p. For p >= 2, blocks[i] lies between edges[i] and
// edges[(i + 1) % p]. A trivial circuit (p == 1) has no blocks.
struct Circuit {
  std::vector<EdgeId> edges;
  std::vector<Block> blocks;
  int host = -1;  // index into u_components(), when known

  bool trivial() const { return edges.size() == 1; }
};

enum class CriticalVariant { six_cycle, six_cycle_extension };

struct CriticalShape {
  CriticalVariant variant = CriticalVariant::six_cycle;
  int pendency = 0;  // |cut_U|
};

// No unforced edge of H is a bridge of H (and H is connected).
bool is_2_edge_connected(const Instance& inst, const UComponent& component);

// Bridges of the whole alive graph, plus whether it is connected.
struct GraphBridges {
  bool connected = true;
  std::vector<EdgeId> bridges;
};
GraphBridges graph_bridges(const Instance& inst);

// Bridges of the U-graph H (unforced edges only).
std::vector<EdgeId> u_bridges(const Instance& inst, const UComponent& component);

// Partition of E(H) into circuits, with blocks attached to every nontrivial
// circuit. Ordered by smallest edge id. Throws InvalidState unless H is
// nontrivial and 2-edge-connected.
std::vector<Circuit> circuit_partition(const Instance& inst, const UComponent& component);

// Blocks of a nontrivial circuit whose edges are already in circuit order.
// Throws std::invalid_argument for a trivial circuit.
std::vector<Block> blocks_along(const Instance& inst, const UComponent& component, const Circuit& circuit);

BlockKind classify_block(const Instance& inst, const Block& block);

// Matches the subgraph induced by `vertex_set` (all alive edges) against a
// chordless 6-cycle or 6-cycle extension made of unforced edges, with
// |cut_U| = k and |cut_F| = 6 - k.
std::optional<CriticalShape> match_critical_shape(const Instance& inst, std::span<const VertexId> vertex_set);

bool is_critical_component(const Instance& inst, const UComponent& component);

// H is a 4-cycle (four vertices, four unforced edges, each vertex of H-degree 2).
bool is_four_cycle(const Instance& inst, const UComponent& component);
// A 4-cycle whose vertices each carry exactly one forced edge. Instances made
// only of these and finished vertices are left to the polynomial base case.
bool is_proper_four_cycle(const Instance& inst, const UComponent& component);

struct NormalBlockChoice {
  Circuit circuit;
  std::size_t block_index = 0;
};

// A normal block of H that contains no other normal block of H; among
// those, fewest vertices first, then smallest vertex id. Throws InvalidState
// when H has no normal block.
NormalBlockChoice find_minimal_normal_block(const Instance& inst, const UComponent& component);

// The same circuit read starting at edges[start]; blocks rotate with it.
Circuit rotate_circuit(const Circuit& circuit, std::size_t start);

// All blocks along all nontrivial circuits of H (H must be 2-edge-connected).
std::vector<Block> all_blocks(const Instance& inst, const UComponent& component);

// One line per circuit ("circuit <edge ids>") followed by one line per block
// ("  block <vertex ids> <kind> <even|odd>"). Ids are printed 0-based.
std::string dump_circuits(const Instance& inst, const std::vector<Circuit>& circuits);

}  // namespace cubictsp
