#pragma once

#include "cubictsp/graph.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace cubictsp {

enum class RewriteKind {
  include_edge,
  delete_edge,
  contract_path,
  parallel_prune,
  cut3,
  cut4,
  solved_direct,
  infeasible,
};

std::string_view to_string(RewriteKind kind);

struct AddedEdge {
  EdgeId id = kNoEdge;
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Rational weight;
  bool forced = false;
};

// One graph rewrite. The structural fields are enough to replay the rewrite
// on the pre-rewrite instance; the expansion fields map edges created here
// back to edges that existed before it.
struct RewriteRecord {
  RewriteKind kind = RewriteKind::include_edge;
  int region_size = 0;  // |V(X)| for cut rewrites, path length for contractions

  std::vector<EdgeId> forced_edges;
  std::vector<EdgeId> removed_edges;
  std::vector<VertexId> removed_vertices;
  std::vector<VertexId> added_vertices;
  std::vector<AddedEdge> added_edges;

  // new edge -> edges it stands for, independent of the rest of the tour
  std::vector<std::pair<EdgeId, std::vector<EdgeId>>> substitutions;

  // 3-cut gadget: the new edge i replaces the old cut edge i; when a tour
  // avoids new edge i, the internal path joining the other two terminals
  // (stored in cut3_paths[i]) is spliced in.
  std::array<EdgeId, 3> cut3_new{kNoEdge, kNoEdge, kNoEdge};
  std::array<EdgeId, 3> cut3_old{kNoEdge, kNoEdge, kNoEdge};
  std::array<std::optional<std::vector<EdgeId>>, 3> cut3_paths;
};

class ReductionLog {
 public:
  void append(RewriteRecord record) { entries_.push_back(std::move(record)); }
  const std::vector<RewriteRecord>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<RewriteRecord> entries_;
};

// Applies every record in order to a copy of `original`.
Instance replay(const Instance& original, const ReductionLog& log);

// Maps a tour of the rewritten instance to a tour of the instance the log
// started from. Throws InvalidState when the tour does not fit the log.
std::vector<EdgeId> expand_solution(const ReductionLog& log, std::vector<EdgeId> tour);

}  // namespace cubictsp
