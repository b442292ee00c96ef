#include "graphjoin/io/graph_files.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "graphjoin/io/csv.hpp"

namespace graphjoin::io {
namespace {

std::optional<std::uint64_t> parse_id(std::string_view text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string provenance(const GraphDatabase& db, ElementId id) {
  std::string out;
  for (ElementId leaf : db.leaves(id)) {
    if (db.is_fill(leaf)) continue;
    if (!out.empty()) out += '+';
    const std::string& tag = db.tag(leaf);
    out += tag.empty() ? fmt::format("#{}", leaf.value) : tag;
  }
  return out;
}

}  // namespace

LoadedGraph load_graph_text(GraphDatabase& db, std::string_view vertex_csv,
                            std::string_view edge_tsv, const LoadOptions& options,
                            std::string_view vertex_source, std::string_view edge_source) {
  const auto records = parse_csv(vertex_csv, vertex_source);
  if (records.empty()) {
    throw Error(ErrorCode::kParse, fmt::format("{}:1: missing header row", vertex_source));
  }
  LoadedGraph out;
  std::set<std::string> seen;
  for (const CsvField& f : records.front().fields) {
    if (!f || f->empty()) {
      throw Error(ErrorCode::kParse, fmt::format("{}:{}: empty column name", vertex_source,
                                                 records.front().line));
    }
    if (!seen.insert(*f).second) {
      throw Error(ErrorCode::kParse, fmt::format("{}:{}: duplicate column '{}'", vertex_source,
                                                 records.front().line, *f));
    }
    const bool plain = options.unprefixed.contains(*f);
    out.header.push_back(plain ? *f : options.attribute_prefix + *f);
  }

  std::vector<ElementId> vertices;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != out.header.size()) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: expected {} fields, found {}", vertex_source, rec.line,
                              out.header.size(), rec.fields.size()));
    }
    const std::optional<std::uint64_t> id = rec.fields[0] ? parse_id(*rec.fields[0]) : std::nullopt;
    if (!id) {
      throw Error(ErrorCode::kParse, fmt::format("{}:{}: vertex id is not a non-negative integer",
                                                 vertex_source, rec.line));
    }
    if (out.vertex_by_id.contains(*id)) {
      throw Error(ErrorCode::kDuplicateId,
                  fmt::format("{}:{}: duplicate vertex id {}", vertex_source, rec.line, *id));
    }
    Tuple payload;
    for (std::size_t c = options.keep_id ? 0 : 1; c < rec.fields.size(); ++c) {
      if (rec.fields[c]) payload.set(out.header[c], AttributeValue(*rec.fields[c]));
    }
    const ElementId v = db.add_vertex(std::move(payload), options.vertex_labels,
                                      options.tag_prefix + *rec.fields[0]);
    out.vertex_by_id.emplace(*id, v);
    out.ids.push_back(*id);
    vertices.push_back(v);
  }

  std::vector<ElementId> edges;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < edge_tsv.size()) {
    ++line;
    std::size_t end = edge_tsv.find('\n', pos);
    if (end == std::string_view::npos) end = edge_tsv.size();
    std::string_view row = edge_tsv.substr(pos, end - pos);
    pos = end + 1;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;
    const std::size_t tab = row.find('\t');
    if (tab == std::string_view::npos || row.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: expected two tab-separated columns", edge_source, line));
    }
    const auto src = parse_id(row.substr(0, tab));
    const auto dst = parse_id(row.substr(tab + 1));
    if (!src || !dst) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: edge endpoint is not a non-negative integer", edge_source, line));
    }
    const auto s = out.vertex_by_id.find(*src);
    const auto d = out.vertex_by_id.find(*dst);
    if (s == out.vertex_by_id.end() || d == out.vertex_by_id.end()) {
      throw Error(ErrorCode::kDanglingEndpoint,
                  fmt::format("{}:{}: unknown vertex id {}", edge_source, line,
                              s == out.vertex_by_id.end() ? *src : *dst));
    }
    edges.push_back(db.add_edge({}, options.edge_labels, s->second, d->second,
                                fmt::format("{}e{}", options.tag_prefix, edges.size() + 1)));
  }

  out.component = db.register_component(std::move(vertices), std::move(edges));
  return out;
}

LoadedGraph load_graph_pair(GraphDatabase& db, const std::string& vertex_path,
                            const std::string& edge_path, const LoadOptions& options) {
  const std::string vertex_csv = read_file(vertex_path);
  const std::string edge_tsv = read_file(edge_path);
  return load_graph_text(db, vertex_csv, edge_tsv, options, vertex_path, edge_path);
}

GraphText format_graph(const GraphDatabase& db, ComponentId component,
                       const WriteOptions& options) {
  const GraphView g = db.get_graph(component);

  struct VertexRow {
    ElementId id;
    std::string provenance;
    Tuple payload;
  };
  std::vector<VertexRow> rows;
  rows.reserve(g.vertices().size());
  for (ElementId v : g.vertices()) {
    rows.push_back({v, options.provenance || options.canonical ? provenance(db, v) : std::string{},
                    db.payload(v)});
  }
  if (options.canonical) {
    std::stable_sort(rows.begin(), rows.end(), [](const VertexRow& a, const VertexRow& b) {
      if (a.provenance != b.provenance) return a.provenance < b.provenance;
      return a.payload < b.payload;
    });
  }

  std::vector<std::string> columns = options.columns;
  std::set<std::string> listed(columns.begin(), columns.end());
  std::set<std::string> extra;
  for (const VertexRow& row : rows) {
    for (const auto& [attribute, value] : row.payload.bindings()) {
      if (!listed.contains(attribute)) extra.insert(attribute);
    }
  }
  columns.insert(columns.end(), extra.begin(), extra.end());
  std::set<std::string> taken(columns.begin(), columns.end());
  std::string id_column = options.id_column;
  while (taken.contains(id_column)) id_column = "_" + id_column;
  std::string provenance_column = kProvenanceColumn;
  if (options.provenance) {
    taken.insert(id_column);
    while (taken.contains(provenance_column)) provenance_column = "_" + provenance_column;
  }

  GraphText out;
  std::vector<CsvField> fields{id_column};
  for (const auto& c : columns) fields.emplace_back(c);
  if (options.provenance) fields.emplace_back(provenance_column);
  out.vertex_csv = format_csv_record(fields) + '\n';

  std::unordered_map<ElementId, std::size_t> position;
  position.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    position.emplace(rows[k].id, k);
    fields.assign(1, std::to_string(k));
    for (const auto& c : columns) {
      const AttributeValue* value = rows[k].payload.find(c);
      fields.push_back(value ? CsvField(value->text()) : std::nullopt);
    }
    if (options.provenance) fields.emplace_back(rows[k].provenance);
    out.vertex_csv += format_csv_record(fields);
    out.vertex_csv += '\n';
  }

  struct EdgeRow {
    std::size_t source;
    std::size_t target;
    std::string provenance;
  };
  std::vector<EdgeRow> edges;
  edges.reserve(g.edges().size());
  for (ElementId e : g.edges()) {
    const Endpoints ends = db.endpoints(e);
    edges.push_back({position.at(ends.source), position.at(ends.target),
                     options.canonical ? provenance(db, e) : std::string{}});
  }
  if (options.canonical) {
    std::stable_sort(edges.begin(), edges.end(), [](const EdgeRow& a, const EdgeRow& b) {
      return std::tie(a.source, a.target, a.provenance) <
             std::tie(b.source, b.target, b.provenance);
    });
  }
  for (const EdgeRow& e : edges) out.edge_tsv += fmt::format("{}\t{}\n", e.source, e.target);
  return out;
}

void write_graph(const GraphDatabase& db, ComponentId component, const std::string& vertex_path,
                 const std::string& edge_path, const WriteOptions& options) {
  const GraphText text = format_graph(db, component, options);
  write_file(vertex_path, text.vertex_csv);
  write_file(edge_path, text.edge_tsv);
}

void write_join_result(const GraphDatabase& db, const JoinResult& result,
                       const std::string& out_dir, std::vector<std::string> columns) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot create {}: {}", out_dir, ec.message()));
  WriteOptions options;
  options.columns = std::move(columns);
  options.provenance = true;
  options.canonical = true;
  const auto dir = std::filesystem::path(out_dir);
  write_graph(db, result.component, (dir / "vertices.csv").string(), (dir / "edges.tsv").string(),
              options);
}

std::vector<std::string> union_columns(const std::vector<std::string>& left_header,
                                       const std::vector<std::string>& right_header,
                                       bool keep_id) {
  std::vector<std::string> out;
  auto append = [&](const std::vector<std::string>& header) {
    for (std::size_t c = keep_id ? 0 : 1; c < header.size(); ++c) {
      if (std::find(out.begin(), out.end(), header[c]) == out.end()) out.push_back(header[c]);
    }
  };
  append(left_header);
  append(right_header);
  return out;
}

}  // namespace graphjoin::io
