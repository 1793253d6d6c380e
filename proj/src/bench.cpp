#include "cubictsp/bench.hpp"

#include "cubictsp/analysis.hpp"
#include "cubictsp/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <thread>

namespace cubictsp {

BenchReport bench(const std::filesystem::path& dir, const BenchOptions& options) {
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::optional<BenchRecord>> slots(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        const Instance inst = read_instance(files[i]);
        Auditor auditor;
        SolveOptions so;
        so.strategy = options.strategy;
        so.observer = &auditor;
        const auto start = std::chrono::steady_clock::now();
        const SolveResult result = solve(inst, so);
        const auto stop = std::chrono::steady_clock::now();
        const MeasureReport report = auditor.report();
        BenchRecord r;
        r.id = files[i].filename().string();
        r.n = inst.num_vertices();
        r.status = result.tour.status;
        if (result.tour.optimal()) r.cost = result.tour.cost;
        r.nodes = result.stats.nodes;
        r.leaves = result.stats.leaves;
        r.mu0 = report.mu0;
        r.seconds = std::chrono::duration<double>(stop - start).count();
        r.violations = report.violations;
        slots[i] = std::move(r);
      } catch (const std::exception& e) {
        errors[i] = files[i].filename().string() + ": " + e.what();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> threads;
  for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  BenchReport report;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (slots[i]) {
      const BenchRecord& r = *slots[i];
      const long double ratio = static_cast<long double>(r.leaves) / std::pow(2.0L, 0.3L * r.mu0.get_d());
      report.max_leaf_ratio = std::max(report.max_leaf_ratio, ratio);
      report.records.push_back(r);
    } else {
      report.unreadable.push_back(errors[i]);
    }
  }
  return report;
}

std::string format_table(const BenchReport& report) {
  std::ostringstream os;
  os << "id\tn\tstatus\tcost\tnodes\tleaves\tmu0\tseconds\n";
  for (const BenchRecord& r : report.records) {
    os << r.id << '\t' << r.n << '\t' << (r.status == TourStatus::optimal ? "OPTIMAL" : "INFEASIBLE") << '\t'
       << (r.status == TourStatus::optimal ? to_string(r.cost) : std::string("-")) << '\t' << r.nodes << '\t'
       << r.leaves << '\t' << to_string(r.mu0) << '\t' << r.seconds << '\n';
  }
  return os.str();
}

}  // namespace cubictsp
