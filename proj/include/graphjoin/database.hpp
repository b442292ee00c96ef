#pragma once

// A graph database: one property graph whose registered components are the
// graph operands. Base elements carry stored payloads, labels and endpoints;
// combined elements only remember their two operands, and their payload,
// labels and endpoints are answered by run-time extension.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphjoin/combine.hpp"
#include "graphjoin/model.hpp"

namespace graphjoin {

struct ElementId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  bool valid() const noexcept { return value != std::numeric_limits<std::uint32_t>::max(); }
  friend bool operator==(ElementId, ElementId) = default;
  friend auto operator<=>(ElementId, ElementId) = default;
};

using ComponentId = std::uint32_t;

enum class ElementKind : std::uint8_t { kVertex, kEdge };

struct Endpoints {
  ElementId source;
  ElementId target;
  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

class GraphDatabase;

/// The i-th graph of a database: its vertex and edge subsets. λ and ℓ are
/// answered by the owning database.
class GraphView {
 public:
  GraphView(const GraphDatabase& db, ComponentId id) : db_(&db), id_(id) {}

  const GraphDatabase& database() const { return *db_; }
  ComponentId id() const { return id_; }
  const std::vector<ElementId>& vertices() const;
  const std::vector<ElementId>& edges() const;
  const IndexUniverse& vertex_universe() const;
  const IndexUniverse& edge_universe() const;

 private:
  const GraphDatabase* db_;
  ComponentId id_;
};

class GraphDatabase {
 public:
  GraphDatabase() = default;
  GraphDatabase(const GraphDatabase&) = delete;
  GraphDatabase& operator=(const GraphDatabase&) = delete;
  GraphDatabase(GraphDatabase&&) = default;
  GraphDatabase& operator=(GraphDatabase&&) = default;

  /// Base elements get the next replica index of their payload, counted over
  /// every vertex and edge of the database.
  ElementId add_vertex(Tuple payload, LabelSet labels = {}, std::string tag = {});
  ElementId add_edge(Tuple payload, LabelSet labels, ElementId source, ElementId target,
                     std::string tag = {});
  /// A fresh empty edge ε with ℓ(ε) = ∅ and the given endpoints.
  ElementId add_fill_edge(ElementId source, ElementId target);

  /// Materializes the vertex x ⊕ y with the given (dovetail) replica index.
  /// Every call creates a new element, so one operand pair may appear in
  /// several join results.
  ElementId combine_vertices(ElementId x, ElementId y, std::uint64_t replica);
  /// Materializes the edge x ⊕ y. `resolved` is F_λ(x ⊕ y), normally
  /// obtained from extend_endpoints().
  ElementId combine_edges(ElementId x, ElementId y, std::uint64_t replica, Endpoints resolved);
  /// F_λ(x) ⊕ F_λ(y): combines the endpoint pairs componentwise, mapping each
  /// combined vertex pair through `resolve` (returns an invalid id when the
  /// pair was not materialized, which makes the extension undefined).
  Endpoints extend_endpoints(ElementId x, ElementId y,
                             const std::function<ElementId(ElementId, ElementId)>& resolve) const;

  ComponentId register_component(std::vector<ElementId> vertices, std::vector<ElementId> edges);
  GraphView get_graph(ComponentId id) const;
  std::size_t component_count() const noexcept { return components_.size(); }

  std::size_t size() const noexcept { return records_.size(); }
  ElementKind kind(ElementId id) const { return record(id).kind; }
  bool is_base(ElementId id) const { return !record(id).left.valid(); }
  bool is_fill(ElementId id) const { return record(id).fill; }
  std::uint64_t replica(ElementId id) const { return record(id).replica; }
  std::optional<std::pair<ElementId, ElementId>> origin(ElementId id) const;
  /// Component the element was registered in, if any.
  std::optional<ComponentId> component_of(ElementId id) const;
  const std::string& tag(ElementId id) const;

  /// The element as an unevaluated ⊕ tree over base elements.
  CombinedValue<ElementId> decompose(ElementId id) const;
  /// Base elements in left-to-right order, fill edges included.
  std::vector<ElementId> leaves(ElementId id) const;

  Tuple payload(ElementId id) const;
  IndexedElement element(ElementId id) const { return {payload(id), replica(id)}; }
  /// F_ℓ.
  LabelSet labels(ElementId id) const;
  /// F_λ; combined edges answer with the value resolved at combination time.
  Endpoints endpoints(ElementId edge) const;

  /// Checks every component: kinds, disjointness, λ closure, ℓ totality and
  /// vertex/edge disjointness as indexed elements. Throws kValidation.
  void validate() const;
  void validate_component(ComponentId id) const;
  /// Pairs of distinct elements of one component that share payload and
  /// replica index (possible for dovetail indices, which are symmetric).
  std::vector<std::pair<ElementId, ElementId>> index_collisions(ComponentId id) const;

 private:
  friend class GraphView;

  struct Record {
    ElementKind kind;
    bool fill = false;
    std::uint64_t replica = 0;
    ElementId left;   // invalid for base elements
    ElementId right;
    std::uint32_t base_slot = 0;
    Endpoints endpoints;  // combined edges only
  };
  struct BaseData {
    Tuple payload;
    LabelSet labels;
    Endpoints endpoints;  // edges only
    std::string tag;
  };
  struct Component {
    std::vector<ElementId> vertices;
    std::vector<ElementId> edges;
    IndexUniverse vertex_universe;
    IndexUniverse edge_universe;
  };

  const Record& record(ElementId id) const;
  ElementId add_base(ElementKind kind, bool fill, Tuple payload, LabelSet labels,
                     Endpoints endpoints, std::string tag);
  const Component& component(ComponentId id) const;

  std::vector<Record> records_;
  std::vector<BaseData> base_;
  std::vector<std::int64_t> component_of_;
  std::map<Tuple, std::uint64_t> occurrences_;
  std::vector<Component> components_;
};

}  // namespace graphjoin

template <>
struct std::hash<graphjoin::ElementId> {
  std::size_t operator()(graphjoin::ElementId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
