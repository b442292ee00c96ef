#pragma once

// Graph equi-join over two engine indexes. Vertices meet only inside buckets
// whose hash appears in both directories; edges are merged per matched vertex
// pair on their sorted destination hashes. The disjunctive variant keeps the
// edges that bonded with nothing (E_L, E_R) and adds their fill edges.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphjoin/engine/index.hpp"
#include "graphjoin/logical_join.hpp"

namespace graphjoin::engine {

struct EngineOptions {
  unsigned threads = 1;
  /// Test-only mutation: treat every pair in a shared bucket as a match.
  bool skip_theta_recheck = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct OpCounters {
  std::uint64_t bucket_visits = 0;        // shared buckets
  std::uint64_t vertex_comparisons = 0;   // vertex pairs tested
  std::uint64_t vertex_matches = 0;
  std::uint64_t edge_comparisons = 0;     // edge pairs tested
  std::uint64_t edge_bonds = 0;           // pairs satisfying the endpoint condition
  std::uint64_t conjunctive_edges = 0;    // bonded pairs with agreeing payloads
  std::uint64_t fill_checks = 0;
  std::uint64_t fill_edge_emissions = 0;
  std::uint64_t left_unbonded_peak = 0;   // max |E_L| over buckets
  std::uint64_t right_unbonded_peak = 0;  // max |E_R| over buckets

  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

/// Sizes and work of one shared bucket.
struct BucketTrace {
  std::uint64_t hash = 0;
  std::uint64_t left_vertices = 0;   // b_a
  std::uint64_t right_vertices = 0;  // b_b
  std::uint64_t left_out = 0;        // out_a
  std::uint64_t right_out = 0;       // out_b
  std::uint64_t vertex_comparisons = 0;
  std::uint64_t edge_comparisons = 0;
  std::uint64_t left_unbonded = 0;   // |E_L|
  std::uint64_t right_unbonded = 0;  // |E_R|
  std::uint64_t fill_checks = 0;
};

struct PhaseTimes {
  double load_ms = 0;
  double index_ms = 0;
  double join_ms = 0;
};

struct EngineJoinResult {
  JoinResult result;
  OpCounters counters;
  std::vector<BucketTrace> buckets;
  IndexStats left_index;
  IndexStats right_index;
  LoadStats left_load;
  LoadStats right_load;
  PhaseTimes times;
};

/// Joins two indexes built over components of `db`. Their key lists are
/// matched positionally; differing arities throw kSpecMismatch, differing
/// hash modes kInvalidArgument. Throws kTimeout past the deadline.
EngineJoinResult join_indexes(GraphDatabase& db, const EngineIndex& left,
                              const EngineIndex& right, EdgeSemantics semantics,
                              const EngineOptions& options = {});

EngineJoinResult conjunctive_join(GraphDatabase& db, const EngineIndex& left,
                                  const EngineIndex& right, const EngineOptions& options = {});
EngineJoinResult disjunctive_join(GraphDatabase& db, const EngineIndex& left,
                                  const EngineIndex& right, const EngineOptions& options = {});

/// Loads, indexes and joins components `a` and `b` on the given
/// (left attribute, right attribute) equalities.
EngineJoinResult equi_join(GraphDatabase& db, ComponentId a, ComponentId b,
                           const std::vector<std::pair<std::string, std::string>>& on,
                           EdgeSemantics semantics, const EngineOptions& options = {},
                           HashMode mode = HashMode::kStable);

}  // namespace graphjoin::engine
