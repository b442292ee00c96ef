#pragma once

// R-MAT graph generator with synthesized person-like vertex attributes
// (id, sex, name, surname, dob, email, company, residence). Values of the
// join-key style attributes are drawn uniformly from dictionaries whose size
// is a parameter, which fixes the join selectivity.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphjoin::io {

struct AttributeProfile {
  std::vector<std::string> attributes{"sex",   "name",    "surname",  "dob",
                                      "email", "company", "residence"};
  std::uint64_t name_domain = 200;
  std::uint64_t surname_domain = 500;
  std::uint64_t dob_domain = 1000;
  std::uint64_t company_domain = 1000;
  std::uint64_t residence_domain = 100;
};

struct GeneratorParams {
  unsigned scale = 10;  // log2 of the vertex count
  unsigned edge_factor = 16;
  std::uint64_t seed = 1;
  AttributeProfile profile;
  unsigned max_scale = 24;
  // R-MAT quadrant probabilities; d = 1 - a - b - c.
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
};

struct GeneratedGraph {
  std::vector<std::string> header;  // "id" first
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
};

/// Deterministic for fixed params. Throws kInvalidArgument past max_scale,
/// for unknown attributes, or for an empty value domain.
GeneratedGraph generate(const GeneratorParams& params);

/// Vertex CSV and edge TSV in the loader's format.
void write_generated(const GeneratedGraph& graph, const std::string& vertex_path,
                     const std::string& edge_path);

/// key=value lines; '#' starts a comment. Throws kParse with the line.
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(std::string_view text,
                                                std::string_view source = "<config>");

/// Applies scale, edge_factor, seed, max_scale, attributes (comma list) and
/// <attribute>_domain keys. Returns the keys it did not recognize.
std::vector<std::string> apply_config(GeneratorParams& params, const std::map<std::string, std::string>& config);

}  // namespace graphjoin::io
