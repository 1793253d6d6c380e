#include "cubictsp/analysis.hpp"
#include "cubictsp/connectivity.hpp"
#include "cubictsp/generate.hpp"
#include "cubictsp/oracle.hpp"
#include "cubictsp/reductions.hpp"
#include "cubictsp/search.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cubictsp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (pass) detail << what;
    pass = false;
  }
};

struct Audited {
  std::string tag;
  Instance inst;
  TourResult tour;
  MeasureReport report;
  double seconds = 0;
};

Audited run(const std::string& tag, const Instance& inst, Strategy strategy) {
  Auditor auditor;
  SolveOptions options;
  options.strategy = strategy;
  options.observer = &auditor;
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = solve(inst, options);
  const auto stop = std::chrono::steady_clock::now();
  return {tag, inst, r.tour, auditor.report(), std::chrono::duration<double>(stop - start).count()};
}

bool same(const TourResult& a, const TourResult& b) {
  return a.status == b.status && (!a.optimal() || a.cost == b.cost);
}

std::string show(const TourResult& t) { return t.optimal() ? to_string(t.cost) : "INFEASIBLE"; }

void report(int id, const std::string& name, const Outcome& o, int& failures) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  const std::string d = o.detail.str();
  if (!d.empty()) std::cout << " (" << d << ")";
  std::cout << '\n';
  if (!o.pass) ++failures;
}

}  // namespace

int main() {
  int failures = 0;
  std::vector<Audited> corpus1;
  std::vector<Audited> corpus2;

  {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    int solved = 0;
    for (int i = 0; i < 200; ++i) {
      const int n = 6 + 2 * (i % 6);
      const Instance g = random_cubic(n, 1000 + static_cast<std::uint64_t>(i));
      const TourResult want = held_karp(g);
      for (Strategy s : {Strategy::full, Strategy::simple}) {
        Audited a = run("random" + std::to_string(i) + "/" + std::string(to_string(s)), g, s);
        if (!same(a.tour, want)) o.fail(a.tag + " got " + show(a.tour) + " want " + show(want));
        if (a.tour.optimal() && (!is_tour(g, a.tour.edges) || g.cost(a.tour.edges) != a.tour.cost)) {
          o.fail(a.tag + " returned edges are not a tour of that cost");
        }
        corpus1.push_back(std::move(a));
        ++solved;
      }
    }
    for (int i = 0; i < 100; ++i) {
      const int n = 6 + 2 * (i % 4);
      Instance g = random_cubic(n, 5000 + static_cast<std::uint64_t>(i));
      inject_forced(g, 1 + i % 4, static_cast<std::uint64_t>(i));
      const TourResult want = exhaustive_forced(g);
      for (Strategy s : {Strategy::full, Strategy::simple}) {
        Audited a = run("forced" + std::to_string(i) + "/" + std::string(to_string(s)), g, s);
        if (!same(a.tour, want)) o.fail(a.tag + " got " + show(a.tour) + " want " + show(want));
        corpus1.push_back(std::move(a));
        ++solved;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 300) o.fail("took " + std::to_string(secs) + " s");
    if (o.pass) o.detail << solved << " solves, " << secs << " s";
    report(1, "oracle equivalence", o, failures);
  }

  {
    Outcome o;
    struct Known {
      std::string name;
      Instance inst;
      std::optional<int> cost;
    };
    const std::vector<Known> known{{"petersen", named_graph("petersen"), std::nullopt},
                                   {"k4", named_graph("k4"), 4},
                                   {"prism", named_graph("prism"), 6},
                                   {"k33", named_graph("k33"), 6},
                                   {"c6", cycle_graph(6), 6}};
    for (const auto& k : known) {
      const TourResult oracle = exhaustive_forced(k.inst);
      for (Strategy s : {Strategy::full, Strategy::simple}) {
        Audited a = run(k.name, k.inst, s);
        const bool ok = k.cost ? a.tour.optimal() && a.tour.cost == *k.cost : !a.tour.optimal();
        if (!ok) o.fail(k.name + " got " + show(a.tour));
        if (!same(oracle, a.tour)) o.fail(k.name + " disagrees with exhaustive search");
        corpus2.push_back(std::move(a));
      }
    }
    report(2, "known instances", o, failures);
  }

  {
    Outcome o;
    long long violations = 0;
    long long steps = 0;
    long long children = 0;
    for (const auto& a : corpus1) {
      violations += a.report.violations;
      for (const auto& [kind, stats] : a.report.decreases) {
        if (kind.rfind("operation.", 0) == 0) {
          steps += stats.count;
          if (stats.count && stats.min < 0) o.fail(a.tag + " " + kind + " min " + to_string(stats.min));
        }
        if (kind == "branch_child") {
          children += stats.count;
          if (stats.count && stats.min <= 0) o.fail(a.tag + " branch child " + to_string(stats.min));
        }
      }
      if (a.report.violations && !a.report.violation_details.empty()) o.fail(a.tag + " " + a.report.violation_details[0]);
    }
    if (violations) o.fail(std::to_string(violations) + " violations");
    if (o.pass) o.detail << steps << " reduction operations, " << children << " branch children, 0 violations";
    report(3, "measure monotonicity", o, failures);
  }

  {
    Outcome o;
    std::vector<const Audited*> all;
    for (const auto& a : corpus1) all.push_back(&a);
    for (const auto& a : corpus2) all.push_back(&a);
    std::vector<Audited> large;
    double slowest = 0;
    long long most_leaves = 0;
    for (int i = 0; i < 20; ++i) {
      large.push_back(run("n40_" + std::to_string(i), random_cubic(40, 9000 + static_cast<std::uint64_t>(i)),
                          Strategy::full));
      const Audited& a = large.back();
      slowest = std::max(slowest, a.seconds);
      most_leaves = std::max(most_leaves, a.report.leaves);
      if (a.seconds >= 10) o.fail(a.tag + " took " + std::to_string(a.seconds) + " s");
      if (a.report.leaf_bound > 5336) o.fail(a.tag + " bound above 5336");
    }
    for (const auto& a : large) all.push_back(&a);
    for (const Audited* a : all) {
      if (a->report.mu0 != measure({}, a->inst)) o.fail(a->tag + " mu0 mismatch");
      if (!leaf_bound_check(a->report.leaves, a->report.mu0)) {
        o.fail(a->tag + " leaves " + std::to_string(a->report.leaves) + " > " + a->report.leaf_bound.get_str());
      }
    }
    if (o.pass) o.detail << all.size() << " runs, n=40 max leaves " << most_leaves << ", slowest " << slowest << " s";
    report(4, "leaf bound", o, failures);
  }

  {
    Outcome o;
    const WeightConfig cfg;
    for (const auto& problem : verify_config(cfg)) o.fail(problem);
    if (!bottlenecks_exact(cfg)) o.fail("bottleneck vectors are not exact");
    if (cfg.w3p * 6 + cfg.gamma != Rational(10, 3)) o.fail("6 w3' + gamma != 10/3");
    if (cfg.w3 * 4 - cfg.w3p * 2 != Rational(10, 3)) o.fail("4 w3 - 2 w3' != 10/3");
    const auto vectors = reference_branch_vectors(cfg);
    if (vectors.size() != 13) o.fail(std::to_string(vectors.size()) + " reference vectors");
    long double worst = 0;
    for (const auto& v : vectors) {
      const long double root = branching_root(v.entries);
      worst = std::max(worst, root);
      if (root > default_alpha() + 1e-9L) o.fail(v.name + " root above alpha");
    }
    if (o.pass) o.detail << "largest root " << static_cast<double>(worst);
    report(5, "bottleneck vectors", o, failures);
  }

  {
    Outcome o;
    const auto nodes = cubictsp::testing::reduced_corpus(200, 20000);
    int base = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Instance& g = nodes[i].instance;
      const std::string tag = "reduced" + std::to_string(i);
      for (const auto& h : u_components(g)) {
        if (h.trivial()) continue;
        if (!is_2_edge_connected(g, h)) {
          o.fail(tag + " U-component not 2-edge-connected");
          continue;
        }
        if (cubictsp::testing::partition_of(circuit_partition(g, h)) !=
            cubictsp::testing::naive_circuit_partition(g, h)) {
          o.fail(tag + " circuit partition differs");
        }
      }
      const bool base_case = is_base_case(g);
      base += base_case ? 1 : 0;
      if (!base_case && cubictsp::testing::has_triangle(g)) o.fail(tag + " has a triangle");
      if (cubictsp::testing::has_parallel_edges(g)) o.fail(tag + " has parallel edges");
      if (cubictsp::testing::has_degree_two_vertex(g)) o.fail(tag + " has a degree-2 vertex");
      const FixpointResult again = reduce_to_fixpoint(g);
      if (!again.log.empty() || !same_structure(again.instance, g)) o.fail(tag + " not idempotent");
    }
    if (o.pass) o.detail << nodes.size() << " reduced instances, " << base << " in the 4-cycle base case";
    report(6, "structural properties", o, failures);
  }

  {
    Outcome o;
    int feasible = 0;
    for (int i = 0; i < 100; ++i) {
      const int k = 1 + i % 12;
      const Instance g = cubictsp::testing::random_four_cycle_instance(k, 30000 + static_cast<std::uint64_t>(i));
      const TourResult fast = solve_all_4cycles(g);
      const TourResult slow = solve_all_4cycles_bruteforce(g);
      if (!same(fast, slow)) o.fail("k=" + std::to_string(k) + " got " + show(fast) + " want " + show(slow));
      if (fast.optimal()) {
        ++feasible;
        if (!is_tour(g, fast.edges)) o.fail("k=" + std::to_string(k) + " not a tour");
      }
    }
    if (o.pass) o.detail << "100 instances, " << feasible << " feasible";
    report(7, "4-cycle base case", o, failures);
  }

  return failures == 0 ? 0 : 1;
}
