#include "cubictsp/bench.hpp"
#include "cubictsp/generate.hpp"
#include "cubictsp/io.hpp"
#include "cubictsp/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace cubictsp;

TEST_CASE("random cubic graphs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 4 + 2 * static_cast<int>(seed % 10);
    const Instance g = random_cubic(n, seed);
    CHECK(g.num_vertices() == n);
    CHECK(g.num_edges() == 3 * n / 2);
    for (VertexId v : g.vertices()) CHECK(g.degrees(v).total == 3);
    CHECK(graph_bridges(g).connected);
    CHECK_FALSE(cubictsp::testing::has_parallel_edges(g));
    CHECK(same_structure(g, random_cubic(n, seed)));
  }
  CHECK_THROWS_AS(random_cubic(7, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_cubic(2, 1), std::invalid_argument);
}

TEST_CASE("named graphs") {
  CHECK(named_graph("petersen").num_vertices() == 10);
  CHECK(named_graph("k33").num_edges() == 9);
  CHECK(named_graph("moebius_kantor").num_vertices() == 16);
  CHECK_THROWS_AS(named_graph("dodecahedron"), std::invalid_argument);
  GeneratorSpec spec;
  spec.kind = GeneratorKind::cycle;
  spec.n = 9;
  CHECK(generate(spec).num_edges() == 9);
}

TEST_CASE("forced injection respects the forced degree") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance g = random_cubic(12, seed);
    inject_forced(g, 8, seed);
    int forced = 0;
    for (VertexId v : g.vertices()) CHECK(g.degrees(v).forced <= 2);
    for (EdgeId e : g.edges()) forced += g.edge(e).forced ? 1 : 0;
    CHECK(forced > 0);
    CHECK(forced <= 8);
  }
}

TEST_CASE("seed from the environment") {
  ::setenv("CUBIC_TSP_SEED", "77", 1);
  CHECK(default_seed(1) == 77);
  ::unsetenv("CUBIC_TSP_SEED");
  CHECK(default_seed(5) == 5);
}

TEST_CASE("oracles agree with each other") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance g = random_cubic(6 + 2 * static_cast<int>(seed % 4), seed);
    const TourResult a = held_karp(g);
    const TourResult b = exhaustive_forced(g);
    REQUIRE(a.status == b.status);
    if (a.optimal()) CHECK(a.cost == b.cost);
  }
  CHECK(held_karp(named_graph("petersen")).status == TourStatus::infeasible);
  Instance forced = named_graph("k4");
  forced.force_edge(0);
  CHECK_THROWS_AS(held_karp(forced), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive_forced(random_cubic(14, 1)), std::invalid_argument);
}

TEST_CASE("bench over a directory") {
  const auto dir = std::filesystem::temp_directory_path() / "cubictsp_bench_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_instance(dir / "a.ftsp", random_cubic(12, 3));
  write_instance(dir / "b.ftsp", named_graph("petersen"));
  std::ofstream(dir / "c.ftsp") << "not an instance\n";
  BenchOptions options;
  options.jobs = 2;
  const BenchReport report = bench(dir, options);
  REQUIRE(report.records.size() == 2);
  CHECK(report.records[0].id == "a.ftsp");
  CHECK(report.records[0].status == TourStatus::optimal);
  CHECK(report.records[1].status == TourStatus::infeasible);
  REQUIRE(report.unreadable.size() == 1);
  CHECK(report.unreadable[0].rfind("c.ftsp", 0) == 0);
  CHECK(report.max_leaf_ratio < 2.0L);
  const std::string table = format_table(report);
  CHECK(table.rfind("id\tn\tstatus\tcost\tnodes\tleaves\tmu0\tseconds\n", 0) == 0);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(bench(dir), std::invalid_argument);
}
