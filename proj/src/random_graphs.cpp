#include "graphjoin/random_graphs.hpp"

namespace graphjoin {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

LoadedSpec add_graph(GraphDatabase& db, const GraphSpec& spec, const std::string& prefix) {
  LoadedSpec out;
  for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
    const LabelSet labels = i < spec.vertex_labels.size() ? spec.vertex_labels[i] : LabelSet{};
    out.vertices.push_back(db.add_vertex(spec.vertices[i], labels, prefix + "v" + std::to_string(i)));
  }
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    const EdgeSpec& e = spec.edges[i];
    out.edges.push_back(db.add_edge(e.payload, e.labels, out.vertices.at(e.source),
                                    out.vertices.at(e.target), prefix + "e" + std::to_string(i)));
  }
  out.component = db.register_component(out.vertices, out.edges);
  return out;
}

GraphSpec random_graph(std::mt19937_64& rng, const RandomGraphParams& params) {
  static const char* kLabels[] = {"A", "B", "C"};
  auto labels = [&] {
    LabelSet out;
    for (const char* l : kLabels) {
      if (uniform_below(rng, 3) == 0) out.insert(l);
    }
    return out;
  };
  GraphSpec g;
  const std::size_t n = uniform_below(rng, params.max_vertices + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Tuple t;
    // A missing key makes the vertex unjoinable.
    if (uniform_below(rng, 10) != 0) t.set("k", AttributeValue(std::to_string(uniform_below(rng, params.key_domain))));
    if (params.shared_attribute && uniform_below(rng, 3) == 0) {
      t.set("s", AttributeValue(std::to_string(uniform_below(rng, 2))));
    }
    if (uniform_below(rng, 2) == 0) {
      t.set(params.side_attribute, AttributeValue(std::to_string(uniform_below(rng, 4))));
    }
    g.vertices.push_back(std::move(t));
    g.vertex_labels.push_back(labels());
  }
  if (n > 0) {
    const std::size_t m = uniform_below(rng, params.max_edges + 1);
    for (std::size_t i = 0; i < m; ++i) {
      EdgeSpec e;
      e.source = uniform_below(rng, n);
      e.target = uniform_below(rng, n);
      if (params.edge_payloads && uniform_below(rng, 4) == 0) {
        e.payload.set("w", AttributeValue(std::to_string(uniform_below(rng, 2))));
      }
      e.labels = labels();
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

GraphSpec complete_graph(std::size_t n, const std::string& side_attribute) {
  GraphSpec g;
  for (std::size_t i = 0; i < n; ++i) {
    g.vertices.push_back(Tuple{{"k", "0"}, {side_attribute, std::to_string(i)}});
    g.vertex_labels.push_back({});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) g.edges.push_back({i, j, {}, {}});
    }
  }
  return g;
}

GraphSpec sparse_distinct_graph(std::size_t n, const std::string& side_attribute) {
  GraphSpec g;
  for (std::size_t i = 0; i < n; ++i) {
    g.vertices.push_back(Tuple{{"k", std::to_string(i)}, {side_attribute, std::to_string(i % 7)}});
    g.vertex_labels.push_back({});
  }
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    g.edges.push_back({i, (i + 1) % n, {}, {}});
    g.edges.push_back({i, (2 * i) % n, {}, {}});
  }
  return g;
}

}  // namespace graphjoin
