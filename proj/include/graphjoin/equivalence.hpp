#pragma once

// Comparison of join results up to the decomposition of their elements.
// Dovetail indices depend on association order and fresh ε edges on the
// evaluation order, so two results are equivalent when they contain the same
// multiset of (base-element decomposition, payload, labels) and their edges
// link equivalent vertices.

#include <optional>
#include <string>
#include <vector>

#include "graphjoin/database.hpp"

namespace graphjoin {

struct ElementSignature {
  std::vector<ElementId> leaves;  // sorted; fill edges dropped
  Tuple payload;
  LabelSet labels;

  friend bool operator==(const ElementSignature&, const ElementSignature&) = default;
  friend auto operator<=>(const ElementSignature&, const ElementSignature&) = default;
};

struct EdgeSignature {
  ElementSignature edge;
  std::vector<ElementId> source_leaves;
  std::vector<ElementId> target_leaves;

  friend bool operator==(const EdgeSignature&, const EdgeSignature&) = default;
  friend auto operator<=>(const EdgeSignature&, const EdgeSignature&) = default;
};

struct GraphSignature {
  std::vector<ElementSignature> vertices;  // sorted
  std::vector<EdgeSignature> edges;        // sorted

  friend bool operator==(const GraphSignature&, const GraphSignature&) = default;
};

/// Sorted base leaves of an element without fill edges.
std::vector<ElementId> decomposition(const GraphDatabase& db, ElementId id);

GraphSignature signature(const GraphDatabase& db, ComponentId component);

/// A human-readable first difference, or std::nullopt when equal.
std::optional<std::string> first_difference(const GraphDatabase& db, const GraphSignature& a,
                                            const GraphSignature& b);

}  // namespace graphjoin
