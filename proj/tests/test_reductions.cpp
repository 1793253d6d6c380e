#include "cubictsp/generate.hpp"
#include "cubictsp/oracle.hpp"
#include "cubictsp/reductions.hpp"
#include "cubictsp/search.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cubictsp;
using cubictsp::testing::build;
using cubictsp::testing::E;

namespace {

EdgeId edge_between(const Instance& g, VertexId a, VertexId b) {
  for (EdgeId e : g.edges()) {
    if (g.edge(e).joins(a, b)) return e;
  }
  return kNoEdge;
}

// The expanded optimum of the rewritten instance is a tour of the original
// with the original optimum cost.
void check_rewrite_preserves_optimum(const Instance& before, const Instance& after, const ReductionLog& log) {
  const TourResult want = exhaustive_forced(before);
  const TourResult got = exhaustive_forced(after);
  REQUIRE(want.status == got.status);
  if (!want.optimal()) return;
  CHECK(want.cost == got.cost);
  const auto lifted = expand_solution(log, got.edges);
  CHECK(is_tour(before, lifted));
  CHECK(before.cost(lifted) == want.cost);
}

}  // namespace

TEST_CASE("feasibility screening") {
  const Instance barbell = build(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
  CHECK(check_feasibility(barbell).reason == InfeasibilityReason::not_2ec);

  Instance prism = named_graph("prism");
  for (EdgeId e : prism.edges()) {
    const Edge& ed = prism.edge(e);
    if ((ed.u < 3) != (ed.v < 3)) prism.force_edge(e);
  }
  CHECK(check_feasibility(prism).reason == InfeasibilityReason::odd_component);

  // three odd corners on a 4-cycle: parity cannot close around the circuit
  const Instance odd = build(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4, 1, true}, {1, 5, 1, true}, {2, 6, 1, true},
                                 {4, 5}, {5, 6}, {6, 7}, {7, 4}});
  const auto reason = check_feasibility(odd).reason;
  CHECK((reason == InfeasibilityReason::odd_component || reason == InfeasibilityReason::odd_block_count));
  CHECK(exhaustive_forced(odd).status == TourStatus::infeasible);

  CHECK_FALSE(check_feasibility(named_graph("k4")).infeasible());
}

TEST_CASE("eliminable edge follows forced parity") {
  // side {0,1} has one unforced boundary edge 1-2
  const Instance one = build(6, {{0, 1}, {0, 3, 1, true}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 2}, {0, 5}});
  const VertexId side[] = {0, 1};
  auto c = cut(one, side);
  REQUIRE(c.unforced.size() == 2);
  CHECK_THROWS_AS(determine_eliminable(one, side), std::invalid_argument);

  const Instance g1 = build(5, {{0, 1}, {0, 2, 1, true}, {1, 3, 1, true}, {1, 4}, {2, 3}, {3, 4}, {4, 2}});
  const VertexId s1[] = {0, 1};
  // cut_F = {0-2, 1-3}: even -> delete 1-4
  CHECK(determine_eliminable(g1, s1) == EdgeDecision::remove);

  const Instance g2 = build(5, {{0, 1}, {0, 2, 1, true}, {1, 3}, {1, 4}, {2, 3}, {3, 4}, {4, 2}});
  const VertexId s3[] = {0, 1};
  // cut_U = {1-3, 1-4}: not 1-pendent
  CHECK_THROWS_AS(determine_eliminable(g2, s3), std::invalid_argument);

  const Instance g3 = build(5, {{0, 1, 1, true}, {0, 2, 1, true}, {1, 3}, {1, 4}, {2, 3, 1, true}, {3, 4}, {4, 2}});
  const VertexId s4[] = {0};
  // a finished vertex has no unforced boundary edge
  CHECK_THROWS_AS(determine_eliminable(g3, s4), std::invalid_argument);

  const Instance g4 = build(4, {{0, 1}, {1, 2, 1, true}, {1, 3}, {2, 3}, {0, 2, 1, true}, {0, 3}});
  const VertexId s5[] = {0, 1};
  // cut_F = {0-2, 1-2}, cut_U = {0-3, 1-3}
  CHECK_THROWS_AS(determine_eliminable(g4, s5), std::invalid_argument);
  const VertexId s6[] = {0, 1, 2};
  // cut_U = {0-3, 1-3, 2-3}
  CHECK_THROWS_AS(determine_eliminable(g4, s6), std::invalid_argument);

  const Instance g5 = build(4, {{0, 1}, {0, 2, 1, true}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const VertexId s7[] = {2};
  // cut_F(2) = {0-2}, cut_U(2) = {1-2, 2-3}
  CHECK_THROWS_AS(determine_eliminable(g5, s7), std::invalid_argument);
}

TEST_CASE("eliminable decision agrees with brute force") {
  // 1-pendent side {0,1,2}: triangle with forced spokes; the single unforced
  // boundary edge 2-3 is decided by parity.
  for (int forced_spokes = 0; forced_spokes <= 2; ++forced_spokes) {
    std::vector<E> edges{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}};
    edges.push_back({0, 4, 1, forced_spokes >= 1});
    edges.push_back({1, 5, 1, forced_spokes >= 2});
    const Instance g = build(6, edges);
    const VertexId side[] = {0, 1, 2};
    const CutEdges c = cut(g, side);
    if (c.unforced.size() != 1) continue;
    const EdgeDecision d = determine_eliminable(g, side);
    const TourResult best = exhaustive_forced(g);
    if (!best.optimal()) continue;
    const bool used = std::binary_search(best.edges.begin(), best.edges.end(), c.unforced[0]);
    CHECK(used == (d == EdgeDecision::include));
  }
}

TEST_CASE("parallel edges") {
  Instance two = build(2, {{0, 1, 1}, {0, 1, 2}, {0, 1, 3}});
  const auto r = reduce_parallel(two, 0, 1);
  REQUIRE(r.status == StepStatus::solved);
  CHECK(two.cost(r.tour) == 3);

  Instance g = build(4, {{0, 1, 5}, {0, 1, 7}, {0, 2}, {1, 3}, {2, 3}, {2, 3}});
  ReductionLog log;
  CHECK(reduce_parallel(g, 0, 1, &log).status == StepStatus::ok);
  CHECK_FALSE(g.edge_alive(1));
  CHECK(g.edge_alive(0));
  CHECK(log.size() == 1);

  Instance ff = build(4, {{0, 1, 5, true}, {0, 1, 7, true}, {0, 2}, {1, 3}, {2, 3}, {2, 3}});
  CHECK(reduce_parallel(ff, 0, 1).status == StepStatus::infeasible);

  Instance fu = build(4, {{0, 1, 5, true}, {0, 1, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}});
  CHECK(reduce_parallel(fu, 0, 1).status == StepStatus::ok);
  CHECK(fu.edge_alive(0));
  CHECK_FALSE(fu.edge_alive(1));

  Instance single = named_graph("k4");
  CHECK_THROWS_AS(reduce_parallel(single, 0, 1), std::invalid_argument);
}

TEST_CASE("reducible circuit at a degree-2 vertex") {
  // 5-cycle 0..4, vertex 0 of degree 2, forced spokes at 1..4 to a 4-cycle
  Instance g = build(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 5, 1, true}, {2, 6, 1, true},
                         {3, 7, 1, true}, {4, 8, 1, true}, {5, 6}, {6, 7}, {7, 8}, {8, 5}});
  const auto comps = u_components(g);
  const auto circuits = circuit_partition(g, comps[0]);
  REQUIRE(circuits.size() == 1);
  const EdgeId e01 = edge_between(g, 0, 1);
  CHECK(process_reducible_circuit(g, circuits[0], e01) == StepStatus::ok);
  CHECK(g.edge(e01).forced);
  CHECK(g.edge(edge_between(g, 4, 0)).forced);
  // parity propagates: every corner of the 5-cycle keeps d_F = 2
  for (VertexId v = 0; v < 5; ++v) CHECK(g.degrees(v).forced == 2);
}

TEST_CASE("internal paths in a 4-cycle region") {
  // region 0..3 (4-cycle) attached to the outside 4..7
  Instance g = build(8, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7},
                         {4, 5}, {5, 6}, {6, 7}, {7, 4}});
  const VertexId x[] = {0, 1, 2, 3};
  const std::pair<VertexId, VertexId> opposite[] = {{0, 2}};
  CHECK_FALSE(solve_internal_paths(g, x, opposite));
  const std::pair<VertexId, VertexId> adjacent[] = {{0, 1}};
  const auto a = solve_internal_paths(g, x, adjacent);
  REQUIRE(a);
  CHECK(a->cost == 9);
  const std::pair<VertexId, VertexId> two[] = {{0, 1}, {2, 3}};
  const auto b = solve_internal_paths(g, x, two);
  REQUIRE(b);
  CHECK(b->cost == 4);
  const std::pair<VertexId, VertexId> crossing[] = {{0, 2}, {1, 3}};
  CHECK_FALSE(solve_internal_paths(g, x, crossing));

  g.force_edge(edge_between(g, 1, 2));
  // the forced edge 1-2 must lie on a path, which the (0,1),(2,3) pairing misses
  CHECK_FALSE(solve_internal_paths(g, x, two));
  const std::pair<VertexId, VertexId> through[] = {{0, 3}};
  const auto c = solve_internal_paths(g, x, through);
  REQUIRE(c);
  CHECK(c->cost == 6);
}

TEST_CASE("internal paths with a single-vertex pair") {
  const Instance g = named_graph("k4");
  const VertexId x[] = {0};
  const std::pair<VertexId, VertexId> self[] = {{0, 0}};
  const auto r = solve_internal_paths(g, x, self);
  REQUIRE(r);
  CHECK(r->cost == 0);
  CHECK(r->paths[0].empty());
}

TEST_CASE("3-cut on a single vertex is the identity up to renaming") {
  Instance g = named_graph("prism", WeightMode::random, 4);
  const Instance before = g;
  ReductionLog log;
  const VertexId x[] = {0};
  const VertexId nx = reduce_3cut(g, x, &log);
  CHECK(g.num_vertices() == before.num_vertices());
  Rational sum_before = 0;
  Rational sum_after = 0;
  for (EdgeId e : before.incident(0)) sum_before += before.edge(e).weight;
  for (EdgeId e : g.incident(nx)) sum_after += g.edge(e).weight;
  CHECK(sum_before == sum_after);
  check_rewrite_preserves_optimum(before, g, log);
}

TEST_CASE("3-cut with three equal internal paths halves the cost") {
  // X = triangle 0,1,2 with zero-weight cut edges; every internal path costs 2
  Instance g = build(6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 3, 0}, {1, 4, 0}, {2, 5, 0}, {3, 4}, {4, 5}, {5, 3}});
  const VertexId x[] = {0, 1, 2};
  const VertexId nx = reduce_3cut(g, x);
  for (EdgeId e : g.incident(nx)) CHECK(g.edge(e).weight == 1);
}

TEST_CASE("3-cut and 4-cut rewrites preserve the optimum") {
  int three = 0;
  int four = 0;
  for (std::uint64_t seed = 1; seed <= 400 && (three < 40 || four < 15); ++seed) {
    const int n = 6 + 2 * static_cast<int>(seed % 4);
    Instance g = random_cubic(n, seed);
    inject_forced(g, static_cast<int>(seed % 6), seed);
    if (check_feasibility(g).infeasible()) continue;
    CandidateOptions only3;
    only3.four_cuts = false;
    if (auto c = find_small_cut_candidate(g, only3); c && three < 40) {
      REQUIRE(cut(g, c->vertices).size() == 3);
      Instance h = g;
      ReductionLog log;
      reduce_3cut(h, c->vertices, &log);
      check_rewrite_preserves_optimum(g, h, log);
      ++three;
    }
    CandidateOptions only4;
    only4.three_cuts = false;
    if (auto c = find_small_cut_candidate(g, only4); c && four < 15) {
      REQUIRE(is_4cut_reducible(g, c->vertices));
      Instance h = g;
      ReductionLog log;
      reduce_4cut(h, c->vertices, &log);
      check_rewrite_preserves_optimum(g, h, log);
      ++four;
    }
  }
  CHECK(three >= 40);
  CHECK(four > 0);
}

TEST_CASE("4-cut needs an all-forced boundary") {
  const Instance k4 = named_graph("k4");
  const VertexId x[] = {0, 1};
  CHECK_FALSE(is_4cut_reducible(k4, x));
  Instance copy = k4;
  CHECK_THROWS_AS(reduce_4cut(copy, x), std::invalid_argument);
}

TEST_CASE("small cut candidates") {
  const Instance prism = named_graph("prism");
  const auto c = find_small_cut_candidate(prism);
  REQUIRE(c);
  CHECK(c->kind == CutKind::three);
  CHECK(cut(prism, c->vertices).size() == 3);

  const auto t = find_small_cut_candidate(named_graph("k4"));
  REQUIRE(t);
  CHECK(t->vertices.size() == 3);

  CandidateOptions single;
  single.min_vertices_3cut = 1;
  const auto v = find_small_cut_candidate(named_graph("petersen"), single);
  REQUIRE(v);
  CHECK(cut(named_graph("petersen"), v->vertices).size() == 3);

  CHECK_FALSE(find_small_cut_candidate(named_graph("petersen")));
}

TEST_CASE("fixpoint on small graphs") {
  // the triangles of K4 collapse it to a solved 2-vertex multigraph
  const Instance k4 = named_graph("k4");
  const auto r = reduce_to_fixpoint(k4);
  CHECK_FALSE(r.feasibility.infeasible());
  REQUIRE(r.solved_tour);
  const auto k4_tour = expand_solution(r.log, *r.solved_tour);
  CHECK(is_tour(k4, k4_tour));
  CHECK(k4.cost(k4_tour) == 4);

  const Instance prism = named_graph("prism", WeightMode::random, 9);
  const auto q = reduce_to_fixpoint(prism);
  CHECK_FALSE(q.log.empty());
  std::vector<EdgeId> tour;
  if (q.solved_tour) {
    tour = *q.solved_tour;
  } else {
    tour = exhaustive_forced(q.instance).edges;
  }
  const auto lifted = expand_solution(q.log, tour);
  CHECK(is_tour(prism, lifted));
  CHECK(prism.cost(lifted) == held_karp(prism).cost);

  const auto p = reduce_to_fixpoint(named_graph("petersen"));
  CHECK(same_structure(p.instance, named_graph("petersen")));
  CHECK(p.log.empty());
}

TEST_CASE("fixpoint stops at the 4-cycle base case") {
  const Instance g = cubictsp::testing::random_four_cycle_instance(3, 11);
  const auto r = reduce_to_fixpoint(g);
  if (!r.feasibility.infeasible() && !r.solved_tour) CHECK(is_base_case(r.instance));
}

TEST_CASE("fixpoint is idempotent and the log replays") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance g = random_cubic(12 + 2 * static_cast<int>(seed % 5), seed);
    if (seed % 2) inject_forced(g, 2, seed);
    const auto r = reduce_to_fixpoint(g);
    if (r.feasibility.infeasible() || r.solved_tour) continue;
    const auto again = reduce_to_fixpoint(r.instance);
    CHECK(again.log.empty());
    CHECK(same_structure(again.instance, r.instance));
    CHECK(same_structure(replay(g, r.log), r.instance));
  }
}

TEST_CASE("expand with an empty log is the identity") {
  const std::vector<EdgeId> tour{0, 3, 5};
  CHECK(expand_solution(ReductionLog{}, tour) == tour);
}

TEST_CASE("nested rewrites expand in reverse order") {
  // several 3-cuts and 4-cuts composed by the driver, checked against the oracle
  for (std::uint64_t seed = 50; seed < 80; ++seed) {
    Instance g = random_cubic(10, seed);
    inject_forced(g, 3, seed);
    const auto r = reduce_to_fixpoint(g);
    const TourResult want = exhaustive_forced(g);
    if (r.feasibility.infeasible()) {
      CHECK_FALSE(want.optimal());
      continue;
    }
    std::vector<EdgeId> reduced_tour;
    if (r.solved_tour) {
      reduced_tour = *r.solved_tour;
    } else {
      const TourResult t = exhaustive_forced(r.instance);
      REQUIRE(t.status == want.status);
      if (!t.optimal()) continue;
      reduced_tour = t.edges;
    }
    REQUIRE(want.optimal());
    const auto lifted = expand_solution(r.log, reduced_tour);
    CHECK(is_tour(g, lifted));
    CHECK(g.cost(lifted) == want.cost);
  }
}
