#include "graphjoin/equivalence.hpp"

#include <algorithm>
#include <sstream>

namespace graphjoin {
namespace {

ElementSignature element_signature(const GraphDatabase& db, ElementId id) {
  return {decomposition(db, id), db.payload(id), db.labels(id)};
}

std::string render(const GraphDatabase& db, const std::vector<ElementId>& leaves) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (i) out << " + ";
    const auto& tag = db.tag(leaves[i]);
    if (tag.empty()) out << '#' << leaves[i].value; else out << tag;
  }
  out << ')';
  return out.str();
}

std::string render(const GraphDatabase& db, const ElementSignature& s) {
  std::ostringstream out;
  out << render(db, s.leaves) << " {";
  bool first = true;
  for (const auto& [k, v] : s.payload.bindings()) {
    out << (first ? "" : ", ") << k << '=' << v.text();
    first = false;
  }
  out << "} labels[";
  first = true;
  for (const auto& l : s.labels) {
    out << (first ? "" : ",") << l;
    first = false;
  }
  out << ']';
  return out.str();
}

std::string render(const GraphDatabase& db, const EdgeSignature& s) {
  return render(db, s.edge) + " : " + render(db, s.source_leaves) + " -> " +
         render(db, s.target_leaves);
}

template <class T>
std::optional<std::string> diff_lists(const GraphDatabase& db, const char* what,
                                      const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_a.empty() && only_b.empty()) return std::nullopt;
  std::ostringstream out;
  out << what << ": " << a.size() << " vs " << b.size();
  if (!only_a.empty()) out << "; only in first: " << render(db, only_a.front());
  if (!only_b.empty()) out << "; only in second: " << render(db, only_b.front());
  return out.str();
}

}  // namespace

std::vector<ElementId> decomposition(const GraphDatabase& db, ElementId id) {
  auto leaves = db.leaves(id);
  std::erase_if(leaves, [&](ElementId leaf) { return db.is_fill(leaf); });
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

GraphSignature signature(const GraphDatabase& db, ComponentId component) {
  const GraphView g = db.get_graph(component);
  GraphSignature out;
  out.vertices.reserve(g.vertices().size());
  for (ElementId v : g.vertices()) out.vertices.push_back(element_signature(db, v));
  out.edges.reserve(g.edges().size());
  for (ElementId e : g.edges()) {
    const Endpoints ends = db.endpoints(e);
    out.edges.push_back(
        {element_signature(db, e), decomposition(db, ends.source), decomposition(db, ends.target)});
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::optional<std::string> first_difference(const GraphDatabase& db, const GraphSignature& a,
                                            const GraphSignature& b) {
  if (auto d = diff_lists(db, "vertices", a.vertices, b.vertices)) return d;
  return diff_lists(db, "edges", a.edges, b.edges);
}

}  // namespace graphjoin
