#pragma once

#include "cubictsp/connectivity.hpp"
#include "cubictsp/graph.hpp"
#include "cubictsp/reductions.hpp"
#include "cubictsp/search.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubictsp {

struct WeightConfig {
  Rational w3{1};
  Rational w3p{1, 3};
  Rational gamma{4, 3};
  Rational delta{127, 100};

  Rational delta3() const { return w3 - w3p; }
};

// w3 if d_U = 3, w3p if d_U = 2 and d_F = 1, else 0.
Rational vertex_weight(const WeightConfig& cfg, const Instance& inst, VertexId v);
// 0 trivial, -4 w3p for a 4-cycle whose vertices each carry one forced edge,
// gamma critical, delta otherwise.
Rational component_weight(const WeightConfig& cfg, const Instance& inst, const UComponent& component);
// Sum of all vertex and component weights.
Rational measure(const WeightConfig& cfg, const Instance& inst);
// 0 once the node is known infeasible or solved, else measure().
Rational node_measure(const WeightConfig& cfg, const FixpointResult& node);

// Weight of the vertices of B.
Rational block_weight(const WeightConfig& cfg, const Instance& inst, const Block& block);
// B is even and its vertices induce a 4-cycle of unforced edges.
bool is_pendent_four_cycle(const Instance& inst, const Block& block);
// Immediate measure decrease credited to B when the circuit through it is
// processed; `cut_included` tells whether both circuit edges at B were
// included (ignored for odd blocks). `inst` is the instance before the
// circuit was processed.
Rational direct_benefit(const WeightConfig& cfg, const Instance& inst, const Block& block, bool cut_included);

// Smallest integer L with L >= 2^(3/10 * mu0), computed exactly.
mpz_class leaf_bound(const Rational& mu0);
bool leaf_bound_check(long long leaves, const Rational& mu0);

struct BranchVector {
  std::string name;
  std::vector<Rational> entries;
  bool bottleneck = false;
};

// The 13 reference branch vectors evaluated at cfg.
std::vector<BranchVector> reference_branch_vectors(const WeightConfig& cfg);
// The x > 1 with sum x^(-a_i) = 1; infinity when some a_i <= 0.
long double branching_root(const std::vector<Rational>& entries);
// 2^(3/10).
long double default_alpha();
// Weight constraints and reference-vector roots; empty means none violated.
std::vector<std::string> verify_config(const WeightConfig& cfg);
// Both bottleneck vectors are [a]_2 with 3a/10 = 1, i.e. 2 alpha^-a = 1.
bool bottlenecks_exact(const WeightConfig& cfg);

struct DecreaseStats {
  long long count = 0;
  Rational min;
  Rational max;

  void add(const Rational& value);
};

struct MeasureReport {
  Rational mu0;
  Rational mu_root;
  long long nodes = 0;
  long long leaves = 0;
  long long branchings = 0;
  mpz_class leaf_bound;
  bool leaf_bound_ok = true;
  long long violations = 0;
  std::vector<std::string> violation_details;  // first few only
  long long branch_vector_warnings = 0;         // sum alpha^-dmu > 1
  long long reducible_warnings = 0;             // reducible circuit below 2 delta3
  long long negative_residuals = 0;
  std::optional<Rational> min_residual;  // child dmu - c(H) - sum of direct benefits
  // By single step kind, by "operation.<kind>", and "branch_child".
  std::map<std::string, DecreaseStats> decreases;
};

// Records measure decreases over one solve. A reduction operation runs from
// one checkpoint (no degree defect, every nontrivial U-component
// 2-edge-connected) to the next,
// so the eliminable edges a rewrite exposes are settled inside it. Hard
// failures (an operation that raises the measure, a child that does not
// lower it) count as violations; single steps are only reported.
class Auditor : public SearchObserver, public ReductionObserver {
 public:
  explicit Auditor(WeightConfig cfg = {});

  void on_step(const Instance& before, const Instance& after, const ReductionEvent& event) override;
  void on_fixpoint_begin(const Instance& input) override;
  void on_fixpoint_end(const FixpointResult& result) override;
  void on_root(const Instance& input, const FixpointResult& reduced) override;
  void on_branch(const FixpointResult& parent, const BranchChoice& choice, const FixpointResult& include_child,
                 const FixpointResult& remove_child, int depth) override;
  void on_leaf(const FixpointResult& node, int depth) override;
  ReductionObserver* reduction_observer() override { return this; }

  // Per-step callback for tracing: rule, |V(X)| and the decrease.
  void set_trace(std::function<void(const ReductionEvent&, const Rational&)> trace) { trace_ = std::move(trace); }

  MeasureReport report() const;

 private:
  struct Operation {
    std::string kind;  // rule of the first step
    Rational before;
    bool open = false;
    bool attributed = false;  // counted in a branch child's decrease instead
  };

  // Every vertex has degree >= 2 and d_F <= 2, and every nontrivial
  // U-component is 2-edge-connected.
  static bool is_checkpoint(const Instance& inst);
  void close_operation(const Rational& mu_after);
  void violation(std::string detail);
  void record_residual(const FixpointResult& parent, const BranchChoice& choice, EdgeDecision action,
                       const Rational& decrease);

  WeightConfig cfg_;
  MeasureReport report_;
  Operation op_;
  bool root_done_ = false;
  std::function<void(const ReductionEvent&, const Rational&)> trace_;
};

// Flat key/value JSON object with stable keys (mu0, nodes, leaves,
// leaf_bound, violations, ...).
std::string to_json(const MeasureReport& report);

}  // namespace cubictsp
