#pragma once

#include "cubictsp/connectivity.hpp"
#include "cubictsp/graph.hpp"
#include "cubictsp/reduction_log.hpp"
#include "cubictsp/reductions.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace cubictsp {

struct Decision {
  EdgeId edge = kNoEdge;
  EdgeDecision action = EdgeDecision::include;
};

// Decides every edge of the circuit starting from `pivot` (any edge of C):
// each block keeps an even number of forced boundary edges. Returns
// infeasible when the parity around the circuit does not close. A trivial
// circuit only applies the pivot.
StepStatus circuit_procedure(Instance& inst, const Circuit& circuit, Decision pivot, ReductionLog* log = nullptr);

struct BranchChoice {
  Circuit circuit;
  EdgeId pivot = kNoEdge;
  std::optional<std::size_t> target_block;  // the normal block targeted, if any
  std::size_t component = 0;                // index into u_components()
};

// nullopt when every U-component is trivial or a proper 4-cycle.
std::optional<BranchChoice> select_branch_circuit(const Instance& inst);
std::optional<BranchChoice> select_branch_circuit_simple(const Instance& inst);

// Every U-component is trivial or a proper 4-cycle.
bool is_base_case(const Instance& inst);

enum class TourStatus { optimal, infeasible };

struct TourResult {
  TourStatus status = TourStatus::infeasible;
  Rational cost;
  std::vector<EdgeId> edges;  // ascending

  bool optimal() const { return status == TourStatus::optimal; }
};

// Throws InvalidState unless every U-component is trivial or a proper
// 4-cycle, and every trivial vertex has d_F = 2.
TourResult solve_all_4cycles(const Instance& inst);
// Same answer by trying all 2^k matching choices; k <= 20.
TourResult solve_all_4cycles_bruteforce(const Instance& inst);

enum class Strategy { full, simple };
std::string_view to_string(Strategy strategy);

class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  // The input and its reduced form (the root node).
  virtual void on_root(const Instance& input, const FixpointResult& reduced) {
    (void)input;
    (void)reduced;
  }
  // A branching at a reduced node; both children are given already reduced.
  virtual void on_branch(const FixpointResult& parent, const BranchChoice& choice, const FixpointResult& include_child,
                         const FixpointResult& remove_child, int depth) {
    (void)parent;
    (void)choice;
    (void)include_child;
    (void)remove_child;
    (void)depth;
  }
  virtual void on_leaf(const FixpointResult& node, int depth) {
    (void)node;
    (void)depth;
  }
  virtual ReductionObserver* reduction_observer() { return nullptr; }
};

struct SolveOptions {
  Strategy strategy = Strategy::full;
  bool fourcycle_bruteforce = false;
  SearchObserver* observer = nullptr;
};

struct SearchStats {
  long long nodes = 0;
  long long leaves = 0;
  long long branchings = 0;
  int max_depth = 0;
};

struct SolveResult {
  TourResult tour;  // edge ids of the input instance
  SearchStats stats;
};

SolveResult solve(const Instance& inst, const SolveOptions& options = {});

// Checks that `edges` is a Hamiltonian cycle of `inst` containing every
// forced edge.
bool is_tour(const Instance& inst, std::span<const EdgeId> edges);

}  // namespace cubictsp
