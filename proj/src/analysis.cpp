#include "cubictsp/analysis.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cubictsp {
namespace {

constexpr std::size_t kMaxViolationDetails = 20;

std::string format_rational(const Rational& value) { return to_string(value); }

}  // namespace

Rational vertex_weight(const WeightConfig& cfg, const Instance& inst, VertexId v) {
  const Degrees d = degrees(inst, v);
  if (d.unforced == 3) return cfg.w3;
  if (d.unforced == 2 && d.forced == 1) return cfg.w3p;
  return 0;
}

Rational component_weight(const WeightConfig& cfg, const Instance& inst, const UComponent& component) {
  if (component.trivial()) return 0;
  if (is_proper_four_cycle(inst, component)) return -4 * cfg.w3p;
  if (is_critical_component(inst, component)) return cfg.gamma;
  return cfg.delta;
}

Rational measure(const WeightConfig& cfg, const Instance& inst) {
  Rational total = 0;
  for (VertexId v : inst.vertices()) total += vertex_weight(cfg, inst, v);
  for (const UComponent& h : u_components(inst)) total += component_weight(cfg, inst, h);
  return total;
}

Rational node_measure(const WeightConfig& cfg, const FixpointResult& node) {
  if (node.feasibility.infeasible() || node.solved_tour) return 0;
  return measure(cfg, node.instance);
}

Rational block_weight(const WeightConfig& cfg, const Instance& inst, const Block& block) {
  Rational total = 0;
  for (VertexId v : block.vertices) total += vertex_weight(cfg, inst, v);
  return total;
}

bool is_pendent_four_cycle(const Instance& inst, const Block& block) {
  if (block.vertices.size() != 4 || block.odd()) return false;
  const auto inner = inst.induced_edges(block.vertices);
  if (inner.size() != 4) return false;
  std::map<VertexId, int> deg;
  for (EdgeId e : inner) {
    const Edge& ed = inst.edge(e);
    if (ed.forced) return false;
    ++deg[ed.u];
    ++deg[ed.v];
  }
  return std::all_of(deg.begin(), deg.end(), [](const auto& kv) { return kv.second == 2; }) && deg.size() == 4;
}

Rational direct_benefit(const WeightConfig& cfg, const Instance& inst, const Block& block, bool cut_included) {
  const Rational d3 = cfg.delta3();
  if (block.kind == BlockKind::reducible) return 0;
  if (block.kind == BlockKind::trivial) return cfg.w3p;
  if (block.odd()) return cfg.w3 + d3 - cfg.delta;
  if (!cut_included) return 2 * cfg.w3 - cfg.delta;
  if (block.kind == BlockKind::two_pendent_critical) return 2 * d3 - cfg.gamma;
  if (is_pendent_four_cycle(inst, block)) return block_weight(cfg, inst, block);
  return 2 * d3 - cfg.delta;
}

mpz_class leaf_bound(const Rational& mu0) {
  // L >= 2^(3p / 10q)  <=>  L^(10q) >= 2^(3p) for p > 0.
  if (sgn(mu0) <= 0) return 1;
  const mpz_class p = mu0.get_num();
  const mpz_class q = mu0.get_den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) throw std::invalid_argument("measure too large for the leaf bound");
  const unsigned long exp_l = 10 * q.get_ui();
  mpz_class target;
  mpz_ui_pow_ui(target.get_mpz_t(), 2, 3 * p.get_ui());
  auto reaches = [&](const mpz_class& l) {
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), l.get_mpz_t(), exp_l);
    return power >= target;
  };
  mpz_class l(std::ceil(std::pow(2.0, 0.3 * mu0.get_d())));
  if (l < 1) l = 1;
  while (!reaches(l)) ++l;
  while (l > 1 && reaches(l - 1)) --l;
  return l;
}

bool leaf_bound_check(long long leaves, const Rational& mu0) { return mpz_class(std::to_string(leaves)) <= leaf_bound(mu0); }

std::vector<BranchVector> reference_branch_vectors(const WeightConfig& c) {
  const Rational w3 = c.w3, wp = c.w3p, g = c.gamma, d = c.delta, d3 = c.delta3();
  auto two = [](const Rational& a) { return std::vector<Rational>{a, a}; };
  return {
      {"six_cycle", two(6 * wp + g), true},
      {"critical_pair", {g + 2 * w3 + 6 * wp, d + 2 * w3 - g}, false},
      {"critical_extension", {d + 2 * (2 * d3 - g), d + 2 * (2 * w3 + 4 * wp)}, false},
      {"even_chain", two(4 * w3 - 2 * wp), true},
      {"odd_chain", {2 * w3, 6 * w3 - 2 * wp}, false},
      {"odd_normal", {4 * d3 - d, 4 * w3 + 4 * d3}, false},
      {"critical_normal", {4 * d3 - g, 8 * w3}, false},
      {"critical_forced", {4 * d3 - g, d + 4 * w3 + 10 * wp}, false},
      {"single_normal", {2 * w3, d + 2 * w3 + 8 * wp}, false},
      {"three_way_a", {d + 6 * w3 - 2 * wp - 2 * g, d + 6 * w3 + 4 * wp - g, d + 4 * w3 + 6 * wp}, false},
      {"three_way_b", {d + 4 * w3 + 2 * wp - g, d + 4 * w3 + 8 * wp, d + 2 * w3 + 4 * wp}, false},
      {"three_way_c", {d + 8 * w3 - 6 * wp - 3 * g, d + 8 * w3 + 6 * wp - g, d + 4 * w3 + 4 * wp}, false},
      {"three_way_d", {d + 6 * w3 - 2 * wp - 2 * g, d + 6 * w3 + 10 * wp, d + 2 * w3 + 3 * wp}, false},
  };
}

long double branching_root(const std::vector<Rational>& entries) {
  if (entries.empty()) return 1;
  std::vector<long double> a;
  for (const Rational& r : entries) {
    if (sgn(r) <= 0) return std::numeric_limits<long double>::infinity();
    a.push_back(static_cast<long double>(r.get_d()));
  }
  auto f = [&](long double x) {
    long double s = 0;
    for (long double ai : a) s += std::pow(x, -ai);
    return s - 1;
  };
  if (a.size() == 1) return 1;
  long double lo = 1, hi = 2;
  while (f(hi) > 0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return hi;
}

long double default_alpha() { return std::pow(2.0L, 0.3L); }

std::vector<std::string> verify_config(const WeightConfig& cfg) {
  std::vector<std::string> out;
  const Rational d3 = cfg.delta3();
  if (!(2 * d3 >= cfg.gamma)) out.push_back("2*delta3 >= gamma");
  if (!(cfg.gamma >= cfg.delta)) out.push_back("gamma >= delta");
  if (!(cfg.delta >= d3)) out.push_back("delta >= delta3");
  if (!(d3 * 2 >= cfg.w3)) out.push_back("delta3 >= w3/2");
  if (!(cfg.w3p * 5 >= cfg.w3)) out.push_back("w3p >= w3/5");
  if (!(cfg.gamma - cfg.delta <= cfg.w3p)) out.push_back("gamma - delta <= w3p");
  const long double alpha = default_alpha();
  for (const BranchVector& bv : reference_branch_vectors(cfg)) {
    const long double root = branching_root(bv.entries);
    long double sum = 0;
    bool positive = true;
    for (const Rational& r : bv.entries) {
      if (sgn(r) <= 0) positive = false;
      sum += std::pow(alpha, -static_cast<long double>(r.get_d()));
    }
    if (!positive || root > alpha + 1e-9L || sum > 1 + 1e-12L) {
      std::ostringstream os;
      os.precision(12);
      os << "branch vector " << bv.name << " root " << root << " exceeds alpha";
      out.push_back(os.str());
    }
  }
  return out;
}

bool bottlenecks_exact(const WeightConfig& cfg) {
  for (const BranchVector& bv : reference_branch_vectors(cfg)) {
    if (!bv.bottleneck) continue;
    if (bv.entries.size() != 2 || bv.entries[0] != bv.entries[1]) return false;
    if (bv.entries[0] * Rational(3, 10) != 1) return false;
  }
  return true;
}

void DecreaseStats::add(const Rational& value) {
  if (count == 0 || value < min) min = value;
  if (count == 0 || value > max) max = value;
  ++count;
}

Auditor::Auditor(WeightConfig cfg) : cfg_(std::move(cfg)) {}

void Auditor::violation(std::string detail) {
  ++report_.violations;
  if (report_.violation_details.size() < kMaxViolationDetails) report_.violation_details.push_back(std::move(detail));
}

bool Auditor::is_checkpoint(const Instance& inst) {
  for (VertexId v : inst.vertices()) {
    const Degrees d = inst.degrees(v);
    if (d.total < 2 || d.forced > 2) return false;
  }
  for (const UComponent& h : u_components(inst)) {
    if (!h.trivial() && !is_2_edge_connected(inst, h)) return false;
  }
  return true;
}

void Auditor::close_operation(const Rational& mu_after) {
  if (!op_.open) return;
  op_.open = false;
  const Rational decrease = op_.before - mu_after;
  report_.decreases["operation." + op_.kind].add(decrease);
  if (op_.attributed) return;
  if (sgn(decrease) < 0) violation(op_.kind + " raised the measure by " + format_rational(-decrease));
  if (op_.kind == to_string(ReductionRule::reducible_circuit) && mu_after != 0 && decrease < 2 * cfg_.delta3()) {
    ++report_.reducible_warnings;
  }
}

void Auditor::on_fixpoint_begin(const Instance& input) {
  op_ = Operation{};
  op_.before = measure(cfg_, input);
  if (!is_checkpoint(input)) {
    // The circuit processing that produced a child ends at the child's first
    // checkpoint; that decrease is part of the branching.
    op_.open = true;
    op_.kind = root_done_ ? "branch_cleanup" : "input_cleanup";
    op_.attributed = true;
  }
}

void Auditor::on_fixpoint_end(const FixpointResult& result) { close_operation(node_measure(cfg_, result)); }

void Auditor::on_step(const Instance& before, const Instance& after, const ReductionEvent& event) {
  const Rational mu_before = measure(cfg_, before);
  const bool terminal = event.status != StepStatus::ok;
  const Rational mu_after = terminal ? Rational(0) : measure(cfg_, after);
  const Rational decrease = mu_before - mu_after;
  report_.decreases[std::string(to_string(event.rule))].add(decrease);
  if (trace_) trace_(event, decrease);

  if (!op_.open) {
    op_.open = true;
    op_.before = mu_before;
    op_.kind = to_string(event.rule);
    op_.attributed = false;
  }
  if (terminal || is_checkpoint(after)) close_operation(mu_after);
}

void Auditor::on_root(const Instance& input, const FixpointResult& reduced) {
  report_.mu0 = measure(cfg_, input);
  root_done_ = true;
  report_.mu_root = node_measure(cfg_, reduced);
}

void Auditor::record_residual(const FixpointResult& parent, const BranchChoice& choice, EdgeDecision action,
                              const Rational& decrease) {
  if (choice.circuit.trivial()) return;
  const Instance& inst = parent.instance;
  const auto pos = std::find(choice.circuit.edges.begin(), choice.circuit.edges.end(), choice.pivot);
  if (pos == choice.circuit.edges.end()) return;
  const Circuit c = rotate_circuit(choice.circuit, static_cast<std::size_t>(pos - choice.circuit.edges.begin()));
  const std::size_t p = c.edges.size();
  std::vector<bool> include(p);
  include[0] = action == EdgeDecision::include;
  for (std::size_t i = 0; i + 1 < p; ++i) include[i + 1] = ((c.blocks[i].forced_boundary + include[i]) % 2) != 0;
  const auto comps = u_components(inst);
  if (choice.component >= comps.size()) return;
  Rational direct = component_weight(cfg_, inst, comps[choice.component]);
  for (std::size_t i = 0; i < p; ++i) {
    const bool cut_included = include[i] && include[(i + 1) % p];
    direct += direct_benefit(cfg_, inst, c.blocks[i], cut_included);
  }
  const Rational residual = decrease - direct;
  if (!report_.min_residual || residual < *report_.min_residual) report_.min_residual = residual;
  if (sgn(residual) < 0) ++report_.negative_residuals;
}

void Auditor::on_branch(const FixpointResult& parent, const BranchChoice& choice, const FixpointResult& include_child,
                        const FixpointResult& remove_child, int depth) {
  ++report_.branchings;
  const Rational mu = node_measure(cfg_, parent);
  const long double alpha = default_alpha();
  long double sum = 0;
  const std::pair<const FixpointResult*, EdgeDecision> children[] = {{&include_child, EdgeDecision::include},
                                                                      {&remove_child, EdgeDecision::remove}};
  for (const auto& [child, action] : children) {
    const Rational decrease = mu - node_measure(cfg_, *child);
    report_.decreases["branch_child"].add(decrease);
    sum += std::pow(alpha, -static_cast<long double>(decrease.get_d()));
    if (sgn(decrease) <= 0) {
      violation("branch child at depth " + std::to_string(depth) + " lowered the measure by only " +
                format_rational(decrease));
    }
    if (!child->feasibility.infeasible() && !child->solved_tour) record_residual(parent, choice, action, decrease);
  }
  if (sum > 1 + 1e-12L) ++report_.branch_vector_warnings;
}

void Auditor::on_leaf(const FixpointResult& node, int depth) {
  (void)node;
  (void)depth;
  ++report_.leaves;
}

MeasureReport Auditor::report() const {
  MeasureReport r = report_;
  r.nodes = r.leaves + r.branchings;
  r.leaf_bound = leaf_bound(r.mu0);
  r.leaf_bound_ok = mpz_class(std::to_string(r.leaves)) <= r.leaf_bound;
  return r;
}

std::string to_json(const MeasureReport& report) {
  nlohmann::ordered_json j;
  j["mu0"] = to_string(report.mu0);
  j["mu_root"] = to_string(report.mu_root);
  j["nodes"] = report.nodes;
  j["leaves"] = report.leaves;
  j["branchings"] = report.branchings;
  j["leaf_bound"] = report.leaf_bound.get_str();
  j["leaf_bound_ok"] = report.leaf_bound_ok;
  j["violations"] = report.violations;
  j["branch_vector_warnings"] = report.branch_vector_warnings;
  j["reducible_warnings"] = report.reducible_warnings;
  j["negative_residuals"] = report.negative_residuals;
  j["min_residual"] = report.min_residual ? nlohmann::ordered_json(to_string(*report.min_residual)) : nullptr;
  for (const auto& [kind, s] : report.decreases) {
    j["steps." + kind] = s.count;
    j["min_decrease." + kind] = to_string(s.min);
    j["max_decrease." + kind] = to_string(s.max);
  }
  return j.dump(2);
}

}  // namespace cubictsp
