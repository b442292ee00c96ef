#include "graphjoin/database.hpp"

#include <set>
#include <unordered_set>

#include <fmt/format.h>

namespace graphjoin {
const std::vector<ElementId>& GraphView::vertices() const { return db_->component(id_).vertices; }
const std::vector<ElementId>& GraphView::edges() const { return db_->component(id_).edges; }
const IndexUniverse& GraphView::vertex_universe() const {
  return db_->component(id_).vertex_universe;
}
const IndexUniverse& GraphView::edge_universe() const { return db_->component(id_).edge_universe; }

const GraphDatabase::Record& GraphDatabase::record(ElementId id) const {
  if (!id.valid() || id.value >= records_.size()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown element #{}", id.value));
  }
  return records_[id.value];
}

const GraphDatabase::Component& GraphDatabase::component(ComponentId id) const {
  if (id >= components_.size()) {
    throw Error(ErrorCode::kUnknownComponent, fmt::format("unknown component {}", id));
  }
  return components_[id];
}

ElementId GraphDatabase::add_base(ElementKind kind, bool fill, Tuple payload, LabelSet labels,
                                  Endpoints endpoints, std::string tag) {
  const std::uint64_t replica = ++occurrences_[payload];
  const ElementId id{static_cast<std::uint32_t>(records_.size())};
  records_.push_back(Record{kind, fill, replica, ElementId{}, ElementId{},
                            static_cast<std::uint32_t>(base_.size()), {}});
  base_.push_back(BaseData{std::move(payload), std::move(labels), endpoints, std::move(tag)});
  component_of_.push_back(-1);
  return id;
}

ElementId GraphDatabase::add_vertex(Tuple payload, LabelSet labels, std::string tag) {
  return add_base(ElementKind::kVertex, false, std::move(payload), std::move(labels), {},
                  std::move(tag));
}

ElementId GraphDatabase::add_edge(Tuple payload, LabelSet labels, ElementId source,
                                  ElementId target, std::string tag) {
  if (kind(source) != ElementKind::kVertex || kind(target) != ElementKind::kVertex) {
    throw Error(ErrorCode::kValidation, "edge endpoints must be vertices");
  }
  return add_base(ElementKind::kEdge, false, std::move(payload), std::move(labels),
                  {source, target}, std::move(tag));
}

ElementId GraphDatabase::add_fill_edge(ElementId source, ElementId target) {
  if (kind(source) != ElementKind::kVertex || kind(target) != ElementKind::kVertex) {
    throw Error(ErrorCode::kValidation, "edge endpoints must be vertices");
  }
  return add_base(ElementKind::kEdge, true, Tuple{}, {}, {source, target}, {});
}

ElementId GraphDatabase::combine_vertices(ElementId x, ElementId y, std::uint64_t replica) {
  if (kind(x) != ElementKind::kVertex || kind(y) != ElementKind::kVertex) {
    throw Error(ErrorCode::kInvalidArgument, "combine_vertices expects two vertices");
  }
  const ElementId id{static_cast<std::uint32_t>(records_.size())};
  records_.push_back(Record{ElementKind::kVertex, false, replica, x, y, 0, {}});
  component_of_.push_back(-1);
  return id;
}

ElementId GraphDatabase::combine_edges(ElementId x, ElementId y, std::uint64_t replica,
                                       Endpoints resolved) {
  if (kind(x) != ElementKind::kEdge || kind(y) != ElementKind::kEdge) {
    throw Error(ErrorCode::kInvalidArgument, "combine_edges expects two edges");
  }
  if (kind(resolved.source) != ElementKind::kVertex ||
      kind(resolved.target) != ElementKind::kVertex) {
    throw Error(ErrorCode::kValidation, "edge endpoints must be vertices");
  }
  const ElementId id{static_cast<std::uint32_t>(records_.size())};
  records_.push_back(Record{ElementKind::kEdge, false, replica, x, y, 0, resolved});
  component_of_.push_back(-1);
  return id;
}

Endpoints GraphDatabase::extend_endpoints(
    ElementId x, ElementId y, const std::function<ElementId(ElementId, ElementId)>& resolve) const {
  auto join_vertex = [&](ElementId u, ElementId v) {
    const ElementId found = resolve(u, v);
    if (!found.valid()) {
      throw Error(ErrorCode::kUndefinedExtension,
                  fmt::format("combined endpoint #{} ⊕ #{} is not materialized", u.value, v.value));
    }
    return found;
  };
  using Tree = CombinedValue<ElementId>;
  return runtime_extend(
      Tree::combine(CombineKind::kPair, Tree::leaf(x), Tree::leaf(y)),
      [this](ElementId edge) -> std::optional<Endpoints> { return endpoints(edge); },
      [&](const Endpoints& p, const Endpoints& q) {
        auto combined = combine_pairs(std::pair{p.source, p.target}, std::pair{q.source, q.target},
                                      join_vertex, join_vertex);
        return Endpoints{combined.first, combined.second};
      });
}

ComponentId GraphDatabase::register_component(std::vector<ElementId> vertices,
                                              std::vector<ElementId> edges) {
  std::unordered_set<ElementId> vertex_set;
  vertex_set.reserve(vertices.size());
  auto claim = [&](ElementId id, ElementKind expected) {
    if (kind(id) != expected) {
      throw Error(ErrorCode::kValidation, fmt::format("element #{} has the wrong kind", id.value));
    }
    if (component_of_[id.value] >= 0) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("element #{} already belongs to component {}", id.value,
                              component_of_[id.value]));
    }
  };
  for (ElementId v : vertices) {
    claim(v, ElementKind::kVertex);
    if (!vertex_set.insert(v).second) {
      throw Error(ErrorCode::kValidation, fmt::format("vertex #{} listed twice", v.value));
    }
  }
  std::unordered_set<ElementId> edge_set;
  edge_set.reserve(edges.size());
  for (ElementId e : edges) {
    claim(e, ElementKind::kEdge);
    if (!edge_set.insert(e).second) {
      throw Error(ErrorCode::kValidation, fmt::format("edge #{} listed twice", e.value));
    }
    const Endpoints ends = endpoints(e);
    if (!vertex_set.contains(ends.source) || !vertex_set.contains(ends.target)) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("edge #{} has an endpoint outside the component", e.value));
    }
  }

  const auto id = static_cast<ComponentId>(components_.size());
  std::vector<std::uint64_t> vertex_indices, edge_indices;
  vertex_indices.reserve(vertices.size());
  edge_indices.reserve(edges.size());
  for (ElementId v : vertices) {
    vertex_indices.push_back(replica(v));
    component_of_[v.value] = id;
  }
  for (ElementId e : edges) {
    edge_indices.push_back(replica(e));
    component_of_[e.value] = id;
  }
  components_.push_back(Component{std::move(vertices), std::move(edges),
                                  IndexUniverse(std::move(vertex_indices)),
                                  IndexUniverse(std::move(edge_indices))});
  return id;
}

GraphView GraphDatabase::get_graph(ComponentId id) const {
  component(id);
  return GraphView(*this, id);
}

std::optional<std::pair<ElementId, ElementId>> GraphDatabase::origin(ElementId id) const {
  const Record& r = record(id);
  if (!r.left.valid()) return std::nullopt;
  return std::make_pair(r.left, r.right);
}

std::optional<ComponentId> GraphDatabase::component_of(ElementId id) const {
  record(id);
  if (component_of_[id.value] < 0) return std::nullopt;
  return static_cast<ComponentId>(component_of_[id.value]);
}

const std::string& GraphDatabase::tag(ElementId id) const {
  static const std::string kEmpty;
  const Record& r = record(id);
  return r.left.valid() ? kEmpty : base_[r.base_slot].tag;
}

CombinedValue<ElementId> GraphDatabase::decompose(ElementId id) const {
  const Record& r = record(id);
  if (!r.left.valid()) return CombinedValue<ElementId>::leaf(id);
  return CombinedValue<ElementId>::combine(CombineKind::kPair, decompose(r.left),
                                           decompose(r.right));
}

std::vector<ElementId> GraphDatabase::leaves(ElementId id) const {
  std::vector<ElementId> out;
  std::vector<ElementId> stack{id};
  while (!stack.empty()) {
    const ElementId top = stack.back();
    stack.pop_back();
    const Record& r = record(top);
    if (!r.left.valid()) {
      out.push_back(top);
    } else {
      stack.push_back(r.right);
      stack.push_back(r.left);
    }
  }
  return out;
}

Tuple GraphDatabase::payload(ElementId id) const {
  const Record& r = record(id);
  if (!r.left.valid()) return base_[r.base_slot].payload;
  return runtime_extend(
      decompose(id),
      [this](ElementId leaf) -> std::optional<Tuple> {
        return base_[records_[leaf.value].base_slot].payload;
      },
      combine_functions);
}

LabelSet GraphDatabase::labels(ElementId id) const {
  return runtime_extend(
      decompose(id),
      [this](ElementId leaf) -> std::optional<LabelSet> {
        return base_[records_[leaf.value].base_slot].labels;
      },
      combine_sets);
}

Endpoints GraphDatabase::endpoints(ElementId edge) const {
  const Record& r = record(edge);
  if (r.kind != ElementKind::kEdge) {
    throw Error(ErrorCode::kUndefinedExtension,
                fmt::format("λ is undefined on vertex #{}", edge.value));
  }
  return r.left.valid() ? r.endpoints : base_[r.base_slot].endpoints;
}

void GraphDatabase::validate() const {
  for (ComponentId id = 0; id < components_.size(); ++id) validate_component(id);
}

void GraphDatabase::validate_component(ComponentId id) const {
  const Component& c = component(id);
  std::unordered_set<ElementId> vertex_set(c.vertices.begin(), c.vertices.end());
  std::set<IndexedElement> vertex_elements;
  for (ElementId v : c.vertices) {
    if (kind(v) != ElementKind::kVertex || component_of_[v.value] != static_cast<std::int64_t>(id)) {
      throw Error(ErrorCode::kValidation, fmt::format("vertex #{} misfiled", v.value));
    }
    labels(v);
    vertex_elements.insert(element(v));
  }
  for (ElementId e : c.edges) {
    if (kind(e) != ElementKind::kEdge || component_of_[e.value] != static_cast<std::int64_t>(id)) {
      throw Error(ErrorCode::kValidation, fmt::format("edge #{} misfiled", e.value));
    }
    const Endpoints ends = endpoints(e);
    if (!vertex_set.contains(ends.source) || !vertex_set.contains(ends.target)) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("edge #{} leaves component {}", e.value, id));
    }
    labels(e);
    if (vertex_elements.contains(element(e))) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("edge #{} equals a vertex as an indexed element", e.value));
    }
  }
}

std::vector<std::pair<ElementId, ElementId>> GraphDatabase::index_collisions(
    ComponentId id) const {
  const Component& c = component(id);
  std::vector<std::pair<ElementId, ElementId>> out;
  for (const auto* list : {&c.vertices, &c.edges}) {
    std::map<IndexedElement, ElementId> seen;
    for (ElementId x : *list) {
      auto [it, inserted] = seen.emplace(element(x), x);
      if (!inserted) out.emplace_back(it->second, x);
    }
  }
  return out;
}

}  // namespace graphjoin
