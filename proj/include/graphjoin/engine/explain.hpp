#pragma once

// Measured operation counts of one engine join set against the cost model.

#include <string>
#include <vector>

#include "graphjoin/engine/join.hpp"

namespace graphjoin::engine {

struct CostRow {
  std::string term;
  double measured = 0;
  double bound = 0;
  /// True when the row is an equality the engine must hit exactly rather
  /// than an upper bound.
  bool exact = false;
  bool ok = true;
};

struct CostReport {
  std::vector<CostRow> rows;
  bool all_ok() const;
  /// Worst case: every vertex pair compared, Σ_h b_a b_b = |V_a||V_b|.
  double worst_case_vertex_bound = 0;
  /// Work beyond the inputs themselves: shared buckets plus comparisons.
  double join_work = 0;
};

/// Builds the report from a join's counters and traces.
CostReport explain(const EngineJoinResult& result);
std::string to_text(const CostReport& report);

}  // namespace graphjoin::engine
