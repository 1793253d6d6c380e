#pragma once

#include "cubictsp/graph.hpp"
#include "cubictsp/reduction_log.hpp"

#include <vector>

namespace cubictsp {

enum class ContractionStatus { ok, infeasible, solved };

struct ContractionResult {
  ContractionStatus status = ContractionStatus::ok;
  std::vector<EdgeId> tour;  // set when status == solved
};

// Replaces every maximal path of forced edges whose interior vertices have
// degree 2 by a single forced edge carrying the path's total weight.
// A forced cycle through every alive vertex solves the instance; a shorter
// forced cycle makes it infeasible.
ContractionResult contract_forced_paths(Instance& inst, ReductionLog* log = nullptr);

}  // namespace cubictsp
