#pragma once

#include "cubictsp/rational.hpp"
#include "cubictsp/search.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cubictsp {

struct BenchRecord {
  std::string id;  // file name
  int n = 0;
  TourStatus status = TourStatus::infeasible;
  Rational cost;  // meaningful only when optimal
  long long nodes = 0;
  long long leaves = 0;
  Rational mu0;
  double seconds = 0;
  long long violations = 0;
};

struct BenchReport {
  std::vector<BenchRecord> records;      // ordered by id
  std::vector<std::string> unreadable;   // "<file>: <reason>"
  long double max_leaf_ratio = 0;        // max of leaves / 2^(0.3 mu0)
};

struct BenchOptions {
  int jobs = 1;
  Strategy strategy = Strategy::full;
};

// Solves every regular file in `dir` (not recursive) with the audit on.
// Files that fail to parse or solve are listed and skipped.
BenchReport bench(const std::filesystem::path& dir, const BenchOptions& options = {});

// Tab-separated, one header line, then one line per record.
std::string format_table(const BenchReport& report);

}  // namespace cubictsp
