#include "cubictsp/search.hpp"

#include <algorithm>

namespace cubictsp {
namespace {

void apply(Instance& inst, EdgeId e, bool include, ReductionLog* log) {
  RewriteRecord rec;
  if (include) {
    inst.force_edge(e);
    rec.kind = RewriteKind::include_edge;
    rec.forced_edges.push_back(e);
  } else {
    inst.delete_edge(e);
    rec.kind = RewriteKind::delete_edge;
    rec.removed_edges.push_back(e);
  }
  if (log) log->append(std::move(rec));
}

}  // namespace

StepStatus circuit_procedure(Instance& inst, const Circuit& circuit, Decision pivot, ReductionLog* log) {
  const auto it = std::find(circuit.edges.begin(), circuit.edges.end(), pivot.edge);
  if (it == circuit.edges.end()) throw std::invalid_argument("pivot edge is not on the circuit");
  for (EdgeId e : circuit.edges) {
    if (!inst.edge_alive(e) || inst.edge(e).forced) throw InvalidState("circuit edge is not an alive unforced edge");
  }
  const bool first = pivot.action == EdgeDecision::include;
  if (circuit.trivial()) {
    apply(inst, pivot.edge, first, log);
    return StepStatus::ok;
  }
  const Circuit c = rotate_circuit(circuit, static_cast<std::size_t>(it - circuit.edges.begin()));
  const std::size_t p = c.edges.size();
  std::vector<bool> include(p);
  include[0] = first;
  for (std::size_t i = 0; i + 1 < p; ++i) {
    include[i + 1] = ((c.blocks[i].forced_boundary + (include[i] ? 1 : 0)) % 2) != 0;
  }
  const bool closes = (c.blocks[p - 1].forced_boundary + (include[p - 1] ? 1 : 0) + (include[0] ? 1 : 0)) % 2 == 0;
  for (std::size_t i = 0; i < p; ++i) apply(inst, c.edges[i], include[i], log);
  return closes ? StepStatus::ok : StepStatus::infeasible;
}

}  // namespace cubictsp
