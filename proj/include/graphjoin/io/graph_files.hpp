#pragma once

// Vertex CSV / edge TSV files and their mapping onto a graph database.
//
// Vertex file: header row, first column the vertex id (unique non-negative
// integer), remaining columns attributes. NULL cells leave the attribute
// undefined. Edge file: "src<TAB>dst" per line, no header.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphjoin/database.hpp"
#include "graphjoin/logical_join.hpp"

namespace graphjoin::io {

struct LoadOptions {
  LabelSet vertex_labels;
  LabelSet edge_labels;
  /// Keep the id column as a joinable attribute named after its header.
  bool keep_id = false;
  /// Prefix of element tags; a vertex is tagged prefix + id.
  std::string tag_prefix;
  /// Prepended to every attribute name except those in `unprefixed`, so
  /// two files with the same schema only share their join keys.
  std::string attribute_prefix;
  std::set<std::string> unprefixed;
};

struct LoadedGraph {
  ComponentId component = 0;
  std::vector<std::string> header;  // attribute names after prefixing, id column first
  std::unordered_map<std::uint64_t, ElementId> vertex_by_id;
  std::vector<std::uint64_t> ids;  // file order
};

/// Throws kParse (malformed row), kDuplicateId, kDanglingEndpoint, each
/// naming the file and line, or kIo.
LoadedGraph load_graph_pair(GraphDatabase& db, const std::string& vertex_path,
                            const std::string& edge_path, const LoadOptions& options = {});
/// Same, from in-memory file contents.
LoadedGraph load_graph_text(GraphDatabase& db, std::string_view vertex_csv,
                            std::string_view edge_tsv, const LoadOptions& options = {},
                            std::string_view vertex_source = "<vertices>",
                            std::string_view edge_source = "<edges>");

struct GraphText {
  std::string vertex_csv;
  std::string edge_tsv;
};

struct WriteOptions {
  /// Attribute columns in order; attributes not listed are appended sorted.
  std::vector<std::string> columns;
  std::string id_column = "id";
  /// Adds a column rendering each vertex's decomposition by element tag.
  bool provenance = false;
  /// Orders vertices and edges canonically instead of by registration.
  bool canonical = false;
};

inline constexpr const char* kProvenanceColumn = "provenance";

/// Vertices get ids 0..n-1 in output order.
GraphText format_graph(const GraphDatabase& db, ComponentId component,
                       const WriteOptions& options = {});
void write_graph(const GraphDatabase& db, ComponentId component, const std::string& vertex_path,
                 const std::string& edge_path, const WriteOptions& options = {});

/// Writes vertices.csv and edges.tsv into `out_dir` (created if missing) in
/// canonical order with a provenance column.
void write_join_result(const GraphDatabase& db, const JoinResult& result,
                       const std::string& out_dir, std::vector<std::string> columns = {});

/// Attribute columns of a join of files with these headers: the left
/// attributes, then right attributes not already present.
std::vector<std::string> union_columns(const std::vector<std::string>& left_header,
                                       const std::vector<std::string>& right_header,
                                       bool keep_id = false);

}  // namespace graphjoin::io
