#pragma once

// Reference graph θ-join: evaluates the vertex θ-join and the conjunctive or
// disjunctive edge rule directly from their set-builder definitions. The
// optimized engine is checked against this.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "graphjoin/database.hpp"
#include "graphjoin/relational.hpp"

namespace graphjoin {

enum class EdgeSemantics : std::uint8_t { kConjunctive, kDisjunctive };

struct JoinSpec {
  relational::ThetaPredicate theta = relational::ThetaPredicate::always_true();
  EdgeSemantics semantics = EdgeSemantics::kConjunctive;
};

struct JoinResult {
  ComponentId component = 0;
  EdgeSemantics semantics = EdgeSemantics::kConjunctive;
};

const char* to_string(EdgeSemantics semantics);

namespace logical {

/// V ⋈_θ V' materialized in the database, with lookups by operand pair.
class VertexJoin {
 public:
  void add(ElementId left, ElementId right, ElementId combined);

  const std::vector<ElementId>& vertices() const noexcept { return vertices_; }
  /// The combined vertex for (left, right), or an invalid id.
  ElementId find(ElementId left, ElementId right) const;
  bool contains(ElementId left, ElementId right) const { return find(left, right).valid(); }
  /// Right vertices matched with `left`, in match order.
  const std::vector<ElementId>& right_partners(ElementId left) const;
  const std::vector<ElementId>& left_partners(ElementId right) const;

 private:
  std::vector<ElementId> vertices_;
  std::unordered_map<std::uint64_t, ElementId> by_pair_;
  std::unordered_map<ElementId, std::vector<ElementId>> right_partners_;
  std::unordered_map<ElementId, std::vector<ElementId>> left_partners_;
};

/// V ⋈_θ V'. Both graphs must belong to `db` (kForeignOperand otherwise).
VertexJoin join_vertices(GraphDatabase& db, const GraphView& a, const GraphView& b,
                         const relational::ThetaPredicate& theta);

/// E ⋈_{Θ∧} E': edge pairs whose combined endpoints are both joined vertices.
std::vector<ElementId> conjunctive_edges(GraphDatabase& db, const GraphView& a,
                                         const GraphView& b, const VertexJoin& joined);

/// The conjunctive edges plus e ⊕ ε (and ε ⊕ e') fill edges for every edge
/// that bonds with no edge of the other operand, one per pair of joined
/// vertices its endpoints can be combined with.
std::vector<ElementId> disjunctive_edges(GraphDatabase& db, const GraphView& a,
                                         const GraphView& b, const VertexJoin& joined);

/// Assembles (V ⋈_θ V', es(E, E')) and registers it as a new component.
JoinResult graph_join(GraphDatabase& db, ComponentId a, ComponentId b, const JoinSpec& spec);

}  // namespace logical
}  // namespace graphjoin
