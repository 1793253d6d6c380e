#include "cubictsp/analysis.hpp"
#include "cubictsp/bench.hpp"
#include "cubictsp/connectivity.hpp"
#include "cubictsp/generate.hpp"
#include "cubictsp/io.hpp"
#include "cubictsp/oracle.hpp"
#include "cubictsp/reductions.hpp"
#include "cubictsp/search.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

using namespace cubictsp;

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance load(const std::string& path) {
  Instance inst;
  try {
    inst = read_instance(path);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  const auto problems = validate_input(inst);
  if (!problems.empty()) throw InputError(path + ": " + problems.front());
  return inst;
}

int print_tour(const Instance& inst, const TourResult& tour) {
  if (!tour.optimal()) {
    std::cout << "INFEASIBLE\n";
    return kExitInfeasible;
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (EdgeId e : tour.edges) {
    const Edge& ed = inst.edge(e);
    edges.emplace_back(std::min(ed.u, ed.v) + 1, std::max(ed.u, ed.v) + 1);
  }
  std::sort(edges.begin(), edges.end());
  std::cout << "OPTIMAL " << to_string(tour.cost) << '\n';
  for (const auto& [u, v] : edges) std::cout << u << ' ' << v << '\n';
  return kExitOptimal;
}

void print_stats(const Instance& inst, const SearchStats& stats) {
  std::cerr << "nodes " << stats.nodes << "\nleaves " << stats.leaves << "\nbranchings " << stats.branchings
            << "\nmax_depth " << stats.max_depth << '\n';
  const FixpointResult root = reduce_to_fixpoint(inst);
  if (root.feasibility.infeasible()) {
    std::cerr << "root infeasible: " << to_string(root.feasibility.reason) << '\n';
    return;
  }
  if (root.solved_tour) {
    std::cerr << "root solved by reductions\n";
    return;
  }
  for (const auto& h : u_components(root.instance)) {
    if (h.trivial() || !is_2_edge_connected(root.instance, h)) continue;
    std::cerr << dump_circuits(root.instance, circuit_partition(root.instance, h));
  }
}

class Tracer : public SearchObserver {
 public:
  explicit Tracer(Auditor* auditor) : auditor_(auditor) {}
  void on_root(const Instance& input, const FixpointResult& reduced) override { auditor_->on_root(input, reduced); }
  void on_branch(const FixpointResult& parent, const BranchChoice& choice, const FixpointResult& include_child,
                 const FixpointResult& remove_child, int depth) override {
    std::cerr << "branch depth " << depth << " pivot " << choice.pivot << " circuit_edges " << choice.circuit.edges.size()
              << '\n';
    auditor_->on_branch(parent, choice, include_child, remove_child, depth);
  }
  void on_leaf(const FixpointResult& node, int depth) override { auditor_->on_leaf(node, depth); }
  ReductionObserver* reduction_observer() override { return auditor_; }

 private:
  Auditor* auditor_;
};

struct SolveFlags {
  std::string file;
  std::string strategy = "full";
  bool stats = false;
  bool audit = false;
  bool bruteforce = false;
  bool trace = false;
};

Strategy parse_strategy(const std::string& name) { return name == "simple" ? Strategy::simple : Strategy::full; }

int run_solve(const SolveFlags& flags, bool audit_to_stdout) {
  const Instance inst = load(flags.file);
  Auditor auditor;
  Tracer tracer(&auditor);
  if (flags.trace) {
    auditor.set_trace([](const ReductionEvent& event, const Rational& decrease) {
      std::cerr << to_string(event.rule) << ' ' << event.region_size << ' ' << to_string(decrease) << '\n';
    });
  }
  SolveOptions options;
  options.strategy = parse_strategy(flags.strategy);
  options.fourcycle_bruteforce = flags.bruteforce;
  const bool observe = flags.audit || flags.trace || audit_to_stdout;
  if (observe) options.observer = flags.trace ? static_cast<SearchObserver*>(&tracer) : &auditor;
  const SolveResult result = solve(inst, options);
  const int code = print_tour(inst, result.tour);
  if (flags.stats) print_stats(inst, result.stats);
  if (observe && (flags.audit || audit_to_stdout)) {
    const std::string json = to_json(auditor.report());
    (audit_to_stdout ? std::cout : std::cerr) << json << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for forced TSP on graphs of maximum degree 3"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("file", solve_flags.file, "Instance file")->required();
  solve_cmd->add_option("--strategy", solve_flags.strategy, "Branching strategy")
      ->check(CLI::IsMember({"full", "simple"}));
  solve_cmd->add_flag("--stats", solve_flags.stats, "Search statistics and root circuits on stderr");
  solve_cmd->add_flag("--audit", solve_flags.audit, "Measure audit report on stderr");
  solve_cmd->add_flag("--fourcycle-bruteforce", solve_flags.bruteforce, "Brute-force base case");
  solve_cmd->add_flag("--trace-reductions", solve_flags.trace, "One stderr line per reduction step");

  SolveFlags audit_flags;
  auto* audit_cmd = app.add_subcommand("audit", "Solve with the full audit report on stdout");
  audit_cmd->add_option("file", audit_flags.file, "Instance file")->required();
  audit_cmd->add_option("--strategy", audit_flags.strategy, "Branching strategy")
      ->check(CLI::IsMember({"full", "simple"}));

  std::string oracle_file;
  std::string oracle_method = "dp";
  auto* oracle_cmd = app.add_subcommand("oracle", "Solve with a reference oracle");
  oracle_cmd->add_option("file", oracle_file, "Instance file")->required();
  oracle_cmd->add_option("--method", oracle_method, "dp (Held-Karp) or exhaustive")
      ->check(CLI::IsMember({"dp", "exhaustive"}));

  std::string gen_kind = "random_cubic";
  int gen_n = 10;
  std::uint64_t gen_seed = default_seed(1);
  std::string gen_name;
  std::string gen_weights = "random";
  int gen_forced = 0;
  bool gen_parallel = false;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--kind", gen_kind, "Generator kind")->check(CLI::IsMember({"random_cubic", "cycle", "named"}));
  gen_cmd->add_option("--n", gen_n, "Vertex count");
  gen_cmd->add_option("--seed", gen_seed, "Seed (default from CUBIC_TSP_SEED or 1)");
  gen_cmd->add_option("--name", gen_name, "Named graph")
      ->check(CLI::IsMember({"petersen", "k4", "k33", "prism", "moebius_kantor"}));
  gen_cmd->add_option("--weights", gen_weights, "unit or random")->check(CLI::IsMember({"unit", "random"}));
  gen_cmd->add_option("--forced", gen_forced, "Number of edges to force");
  gen_cmd->add_flag("--allow-parallel", gen_parallel, "Allow parallel edges");
  gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

  std::string bench_dir;
  int bench_jobs = 1;
  std::string bench_strategy = "full";
  auto* bench_cmd = app.add_subcommand("bench", "Solve every instance in a directory");
  bench_cmd->add_option("dir", bench_dir, "Directory")->required();
  bench_cmd->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--strategy", bench_strategy, "Branching strategy")->check(CLI::IsMember({"full", "simple"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*solve_cmd) return run_solve(solve_flags, false);
    if (*audit_cmd) return run_solve(audit_flags, true);
    if (*oracle_cmd) {
      const Instance inst = load(oracle_file);
      try {
        return print_tour(inst, oracle_method == "dp" ? held_karp(inst) : exhaustive_forced(inst));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }
    if (*gen_cmd) {
      GeneratorSpec spec;
      spec.kind = gen_kind == "cycle" ? GeneratorKind::cycle
                  : gen_kind == "named" ? GeneratorKind::named
                                        : GeneratorKind::random_cubic;
      spec.n = gen_n;
      spec.seed = gen_seed;
      spec.weights = gen_weights == "unit" ? WeightMode::unit : WeightMode::random;
      spec.name = gen_name;
      spec.allow_parallel = gen_parallel;
      Instance inst;
      try {
        inst = generate(spec);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (gen_forced > 0) inject_forced(inst, gen_forced, gen_seed);
      const std::string comment = "generated kind=" + gen_kind + " n=" + std::to_string(inst.num_vertices()) +
                                  " seed=" + std::to_string(gen_seed);
      if (gen_out.empty()) {
        std::cout << serialize(inst, comment);
      } else {
        write_instance(gen_out, inst, comment);
      }
      return 0;
    }
    if (*bench_cmd) {
      BenchOptions options;
      options.jobs = bench_jobs;
      options.strategy = parse_strategy(bench_strategy);
      BenchReport report;
      try {
        report = bench(bench_dir, options);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      std::cout << format_table(report);
      for (const auto& line : report.unreadable) std::cerr << "unreadable " << line << '\n';
      std::cerr << "max_leaf_ratio " << static_cast<double>(report.max_leaf_ratio) << '\n';
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return 0;
}
