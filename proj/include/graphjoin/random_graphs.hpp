#pragma once

// Plain-value graph descriptions, a seeded generator of small random graphs
// with colliding join keys, and the fixed shapes used to probe the cost
// model. Shared by the verify command and the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "graphjoin/database.hpp"

namespace graphjoin {

struct EdgeSpec {
  std::size_t source = 0;
  std::size_t target = 0;
  Tuple payload;
  LabelSet labels;
};

struct GraphSpec {
  std::vector<Tuple> vertices;
  std::vector<LabelSet> vertex_labels;
  std::vector<EdgeSpec> edges;
};

struct LoadedSpec {
  ComponentId component = 0;
  std::vector<ElementId> vertices;  // aligned with GraphSpec::vertices
  std::vector<ElementId> edges;
};

/// Registers the graph; elements are tagged prefix + "v"/"e" + position.
LoadedSpec add_graph(GraphDatabase& db, const GraphSpec& spec, const std::string& prefix);

struct RandomGraphParams {
  std::size_t max_vertices = 12;
  std::size_t max_edges = 20;
  std::uint64_t key_domain = 3;   // values of the join key "k"
  std::string side_attribute = "a";  // attribute only this side has
  bool shared_attribute = true;   // sometimes set "s", which both sides may have
  bool edge_payloads = true;      // sometimes set "w" on edges
};

GraphSpec random_graph(std::mt19937_64& rng, const RandomGraphParams& params);

/// Complete directed graph without loops; every vertex has key k = "0".
GraphSpec complete_graph(std::size_t n, const std::string& side_attribute);

/// n vertices with distinct keys 0..n-1 and out-degree at most two
/// (i -> i+1, i -> 2i mod n).
GraphSpec sparse_distinct_graph(std::size_t n, const std::string& side_attribute);

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace graphjoin
