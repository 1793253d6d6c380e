#pragma once

#include "cubictsp/connectivity.hpp"
#include "cubictsp/graph.hpp"
#include "cubictsp/reduction_log.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace cubictsp {

enum class InfeasibilityReason { none, not_2ec, odd_component, odd_block_count, forced_subcycle, degree_deficit };
std::string_view to_string(InfeasibilityReason reason);

struct Feasibility {
  InfeasibilityReason reason = InfeasibilityReason::none;

  bool infeasible() const { return reason != InfeasibilityReason::none; }
  static Feasibility unknown() { return {}; }
  static Feasibility fail(InfeasibilityReason r) { return Feasibility{r}; }
};

// Degree, forced-cycle, connectivity and parity screening. Reports
// infeasible only when a necessary condition for a tour fails; otherwise
// feasibility is still unknown.
Feasibility check_feasibility(const Instance& inst);

enum class EdgeDecision { include, remove };

// `side` is a U-graph with exactly one unforced boundary edge; decides that
// edge by the parity of |cut_F(side)|. Throws std::invalid_argument when
// |cut_U(side)| != 1.
EdgeDecision determine_eliminable(const Instance& inst, std::span<const VertexId> side);

enum class StepStatus { ok, infeasible, solved };

struct StepResult {
  StepStatus status = StepStatus::ok;
  std::vector<EdgeId> tour;  // when solved
};

// Rewrites the bundle of parallel edges between u and v. Throws
// std::invalid_argument unless there are at least two alive uv edges.
StepResult reduce_parallel(Instance& inst, VertexId u, VertexId v, ReductionLog* log = nullptr);

// Includes the reducible edge and propagates along its circuit.
StepStatus process_reducible_circuit(Instance& inst, const Circuit& circuit, EdgeId reducible,
                                     ReductionLog* log = nullptr);

struct PathSolution {
  Rational cost;
  std::vector<std::vector<EdgeId>> paths;  // one per terminal pair, in order
};

// Minimum-cost vertex-disjoint paths inside X, one per terminal pair, that
// together cover every vertex of X and every forced edge inside X. A pair
// (a, a) denotes the one-vertex path. X is sorted, |X| <= 10.
std::optional<PathSolution> solve_internal_paths(const Instance& inst, std::span<const VertexId> vertex_set,
                                                 std::span<const std::pair<VertexId, VertexId>> pairs);

// Replaces X (|cut(X)| = 3) by one new vertex. Returns the new vertex.
VertexId reduce_3cut(Instance& inst, std::span<const VertexId> vertex_set, ReductionLog* log = nullptr);

// Precondition failures give false.
bool is_4cut_reducible(const Instance& inst, std::span<const VertexId> vertex_set);

// Throws std::invalid_argument when X is not 4-cut reducible.
void reduce_4cut(Instance& inst, std::span<const VertexId> vertex_set, ReductionLog* log = nullptr);

enum class CutKind { three, four };

struct CutCandidate {
  CutKind kind = CutKind::three;
  std::vector<VertexId> vertices;  // ascending
};

struct CandidateOptions {
  int max_vertices = 10;
  // The fixpoint driver needs |X| >= 2, otherwise every cubic vertex is a
  // 3-cut and the rule never stops.
  int min_vertices_3cut = 2;
  bool three_cuts = true;
  bool four_cuts = true;
};

std::optional<CutCandidate> find_small_cut_candidate(const Instance& inst, const CandidateOptions& options = {});

enum class ReductionRule {
  degree_cleanup,
  contract,
  parallel,
  eliminable,
  reducible_circuit,
  cut3,
  cut4,
  feasibility,
};
std::string_view to_string(ReductionRule rule);

struct ReductionEvent {
  ReductionRule rule = ReductionRule::feasibility;
  int region_size = 0;
  StepStatus status = StepStatus::ok;
};

struct FixpointResult;

class ReductionObserver {
 public:
  virtual ~ReductionObserver() = default;
  virtual void on_step(const Instance& before, const Instance& after, const ReductionEvent& event) = 0;
  virtual void on_fixpoint_begin(const Instance& input) { (void)input; }
  virtual void on_fixpoint_end(const FixpointResult& result) { (void)result; }
};

struct FixpointOptions {
  ReductionObserver* observer = nullptr;
  bool three_cuts = true;
  bool four_cuts = true;
};

struct FixpointResult {
  Instance instance;
  ReductionLog log;
  Feasibility feasibility;
  std::optional<std::vector<EdgeId>> solved_tour;  // ids of `instance`
};

FixpointResult reduce_to_fixpoint(const Instance& inst, const FixpointOptions& options = {});

}  // namespace cubictsp
