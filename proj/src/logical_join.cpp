#include "graphjoin/logical_join.hpp"

#include <utility>

namespace graphjoin {

const char* to_string(EdgeSemantics semantics) {
  return semantics == EdgeSemantics::kConjunctive ? "conjunctive" : "disjunctive";
}

namespace logical {
namespace {

std::uint64_t pair_key(ElementId x, ElementId y) {
  return (static_cast<std::uint64_t>(x.value) << 32) | y.value;
}

void require_same_database(const GraphDatabase& db, const GraphView& a, const GraphView& b) {
  if (&a.database() != &db || &b.database() != &db) {
    throw Error(ErrorCode::kForeignOperand, "graph join operands must share one database");
  }
}

relational::IndexedSet element_set(const GraphDatabase& db, const std::vector<ElementId>& ids,
                                   const IndexUniverse& universe) {
  relational::IndexedSet out;
  out.elements.reserve(ids.size());
  for (ElementId id : ids) out.elements.push_back(db.element(id));
  out.universe = universe;
  return out;
}

/// Pairs (left position, right position) of E ⋈_{Θ∧} E'.
struct EdgePairs {
  relational::IndexedSet joined;
  std::vector<bool> left_bonded;
  std::vector<bool> right_bonded;
};

EdgePairs bond_edges(const GraphDatabase& db, const GraphView& a, const GraphView& b,
                     const VertexJoin& joined) {
  const auto& ea = a.edges();
  const auto& eb = b.edges();
  EdgePairs out;
  out.left_bonded.assign(ea.size(), false);
  out.right_bonded.assign(eb.size(), false);

  // Θ∧(e, e') = F_λ(e ⊕ e') ∈ (V ⋈_θ V')²; membership in E and E' holds by
  // construction of the operand sets.
  auto conj = [&](std::size_t i, std::size_t j) {
    const Endpoints l = db.endpoints(ea[i]);
    const Endpoints r = db.endpoints(eb[j]);
    return joined.contains(l.source, r.source) && joined.contains(l.target, r.target);
  };
  for (std::size_t i = 0; i < ea.size(); ++i) {
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (conj(i, j)) {
        out.left_bonded[i] = true;
        out.right_bonded[j] = true;
      }
    }
  }
  const auto theta = relational::ThetaPredicate::opaque(
      [&](const relational::Operand& l, const relational::Operand& r) {
        return conj(l.position, r.position);
      });
  out.joined = relational::theta_join(element_set(db, ea, a.edge_universe()),
                                      element_set(db, eb, b.edge_universe()), theta);
  return out;
}

ElementId emit_edge(GraphDatabase& db, const VertexJoin& joined, ElementId x, ElementId y,
                    std::uint64_t replica) {
  const Endpoints ends = db.extend_endpoints(
      x, y, [&](ElementId u, ElementId v) { return joined.find(u, v); });
  return db.combine_edges(x, y, replica, ends);
}

}  // namespace

void VertexJoin::add(ElementId left, ElementId right, ElementId combined) {
  vertices_.push_back(combined);
  by_pair_.emplace(pair_key(left, right), combined);
  right_partners_[left].push_back(right);
  left_partners_[right].push_back(left);
}

ElementId VertexJoin::find(ElementId left, ElementId right) const {
  auto it = by_pair_.find(pair_key(left, right));
  return it == by_pair_.end() ? ElementId{} : it->second;
}

const std::vector<ElementId>& VertexJoin::right_partners(ElementId left) const {
  static const std::vector<ElementId> kNone;
  auto it = right_partners_.find(left);
  return it == right_partners_.end() ? kNone : it->second;
}

const std::vector<ElementId>& VertexJoin::left_partners(ElementId right) const {
  static const std::vector<ElementId> kNone;
  auto it = left_partners_.find(right);
  return it == left_partners_.end() ? kNone : it->second;
}

VertexJoin join_vertices(GraphDatabase& db, const GraphView& a, const GraphView& b,
                         const relational::ThetaPredicate& theta) {
  require_same_database(db, a, b);
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  const auto joined = relational::theta_join(element_set(db, va, a.vertex_universe()),
                                             element_set(db, vb, b.vertex_universe()), theta);
  VertexJoin out;
  for (std::size_t k = 0; k < joined.elements.size(); ++k) {
    const auto [i, j] = joined.origins[k];
    out.add(va[i], vb[j], db.combine_vertices(va[i], vb[j], joined.elements[k].replica));
  }
  return out;
}

std::vector<ElementId> conjunctive_edges(GraphDatabase& db, const GraphView& a,
                                         const GraphView& b, const VertexJoin& joined) {
  require_same_database(db, a, b);
  const EdgePairs pairs = bond_edges(db, a, b, joined);
  std::vector<ElementId> out;
  out.reserve(pairs.joined.elements.size());
  for (std::size_t k = 0; k < pairs.joined.elements.size(); ++k) {
    const auto [i, j] = pairs.joined.origins[k];
    out.push_back(emit_edge(db, joined, a.edges()[i], b.edges()[j],
                            pairs.joined.elements[k].replica));
  }
  return out;
}

std::vector<ElementId> disjunctive_edges(GraphDatabase& db, const GraphView& a,
                                         const GraphView& b, const VertexJoin& joined) {
  require_same_database(db, a, b);
  const auto& ea = a.edges();
  const auto& eb = b.edges();
  const EdgePairs pairs = bond_edges(db, a, b, joined);

  // Fresh ε edges first: their replica indices extend the operand universes
  // that every edge of this result is combined over.
  struct Fill {
    ElementId edge;
    ElementId empty;
  };
  std::vector<Fill> left_fills, right_fills;
  std::vector<std::uint64_t> left_indices = a.edge_universe().values();
  std::vector<std::uint64_t> right_indices = b.edge_universe().values();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (pairs.left_bonded[i]) continue;
    const Endpoints ends = db.endpoints(ea[i]);
    for (ElementId u : joined.right_partners(ends.source)) {
      for (ElementId w : joined.right_partners(ends.target)) {
        const ElementId empty = db.add_fill_edge(u, w);
        right_indices.push_back(db.replica(empty));
        left_fills.push_back({ea[i], empty});
      }
    }
  }
  for (std::size_t j = 0; j < eb.size(); ++j) {
    if (pairs.right_bonded[j]) continue;
    const Endpoints ends = db.endpoints(eb[j]);
    for (ElementId u : joined.left_partners(ends.source)) {
      for (ElementId w : joined.left_partners(ends.target)) {
        const ElementId empty = db.add_fill_edge(u, w);
        left_indices.push_back(db.replica(empty));
        right_fills.push_back({eb[j], empty});
      }
    }
  }
  const IndexUniverse left_universe(std::move(left_indices));
  const IndexUniverse right_universe(std::move(right_indices));

  std::vector<ElementId> out;
  out.reserve(pairs.joined.elements.size() + left_fills.size() + right_fills.size());
  for (const auto& [i, j] : pairs.joined.origins) {
    out.push_back(emit_edge(db, joined, ea[i], eb[j],
                            combine_indices(db.replica(ea[i]), left_universe,
                                            db.replica(eb[j]), right_universe)));
  }
  for (const Fill& f : left_fills) {
    out.push_back(emit_edge(db, joined, f.edge, f.empty,
                            combine_indices(db.replica(f.edge), left_universe,
                                            db.replica(f.empty), right_universe)));
  }
  for (const Fill& f : right_fills) {
    out.push_back(emit_edge(db, joined, f.empty, f.edge,
                            combine_indices(db.replica(f.empty), left_universe,
                                            db.replica(f.edge), right_universe)));
  }
  return out;
}

JoinResult graph_join(GraphDatabase& db, ComponentId a, ComponentId b, const JoinSpec& spec) {
  const GraphView ga = db.get_graph(a);
  const GraphView gb = db.get_graph(b);
  VertexJoin joined = join_vertices(db, ga, gb, spec.theta);
  std::vector<ElementId> edges = spec.semantics == EdgeSemantics::kConjunctive
                                     ? conjunctive_edges(db, ga, gb, joined)
                                     : disjunctive_edges(db, ga, gb, joined);
  const ComponentId id = db.register_component(joined.vertices(), std::move(edges));
  return {id, spec.semantics};
}

}  // namespace logical
}  // namespace graphjoin
