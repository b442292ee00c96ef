#include "graphjoin/io/generator.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <random>

#include <fmt/format.h>

#include "graphjoin/error.hpp"
#include "graphjoin/io/csv.hpp"

namespace graphjoin::io {
namespace {

constexpr std::array<std::string_view, 24> kNames{
    "Ada",  "Bruno", "Carla", "Dario", "Elena", "Fabio",  "Greta", "Hugo",
    "Ines", "Jonas", "Karin", "Luca",  "Marta", "Nico",   "Olga",  "Paolo",
    "Rita", "Sven",  "Tina",  "Ugo",   "Vera",  "Walter", "Xenia", "Yuri"};
constexpr std::array<std::string_view, 16> kSurnames{
    "Rossi", "Bianchi", "Smith", "Jones", "Muller", "Weber",  "Dubois", "Moreau",
    "Silva", "Santos",  "Novak", "Horvat", "Nagy", "Kowalski", "Berg", "Larsen"};
constexpr std::array<std::string_view, 12> kCities{
    "Bologna", "Newcastle", "Lyon", "Porto",  "Graz",  "Krakow",
    "Aarhus",  "Ghent",     "Brno", "Bergen", "Turku", "Cork"};
constexpr std::array<std::string_view, 8> kCompanyWords{
    "Acme", "Globex", "Initech", "Umbrella", "Hooli", "Vandelay", "Stark", "Wayne"};

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementations.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t domain) { return rng() % domain; }

template <std::size_t N>
std::string dictionary_value(const std::array<std::string_view, N>& words, std::uint64_t k) {
  if (k < N) return std::string(words[k]);
  return fmt::format("{}{}", words[k % N], k / N);
}

std::string date_value(std::uint64_t k) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{year{1950} / January / 1} + days{static_cast<int>(k)}};
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) {
    return static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
  });
  return s;
}

std::uint64_t domain_of(const AttributeProfile& profile, std::string_view attribute) {
  if (attribute == "name") return profile.name_domain;
  if (attribute == "surname") return profile.surname_domain;
  if (attribute == "dob") return profile.dob_domain;
  if (attribute == "company") return profile.company_domain;
  if (attribute == "residence") return profile.residence_domain;
  return 1;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("config key {} needs a non-negative integer, got '{}'", key, value));
  }
  return out;
}

}  // namespace

GeneratedGraph generate(const GeneratorParams& params) {
  if (params.scale > params.max_scale || params.scale > 32) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("scale {} exceeds the cap of {}", params.scale,
                            std::min(params.max_scale, 32u)));
  }
  const double d = 1.0 - params.a - params.b - params.c;
  if (params.a < 0 || params.b < 0 || params.c < 0 || d < 0) {
    throw Error(ErrorCode::kInvalidArgument, "R-MAT probabilities must be non-negative and sum to 1");
  }
  static const std::array<std::string_view, 7> known{"sex",   "name",    "surname",  "dob",
                                                     "email", "company", "residence"};
  for (const auto& attribute : params.profile.attributes) {
    if (std::find(known.begin(), known.end(), attribute) == known.end()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown attribute '{}'", attribute));
    }
    if (domain_of(params.profile, attribute) == 0) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("empty value domain for '{}'", attribute));
    }
  }

  const std::uint64_t n = std::uint64_t{1} << params.scale;
  GeneratedGraph out;
  out.header.push_back("id");
  out.header.insert(out.header.end(), params.profile.attributes.begin(),
                    params.profile.attributes.end());

  std::mt19937_64 vertex_rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
  out.rows.reserve(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    std::vector<std::string> row{std::to_string(v)};
    std::string name = "user", surname = "anon";
    for (const auto& attribute : params.profile.attributes) {
      const std::uint64_t domain = domain_of(params.profile, attribute);
      if (attribute == "sex") {
        row.push_back(draw(vertex_rng, 2) == 0 ? "F" : "M");
      } else if (attribute == "name") {
        name = dictionary_value(kNames, draw(vertex_rng, domain));
        row.push_back(name);
      } else if (attribute == "surname") {
        surname = dictionary_value(kSurnames, draw(vertex_rng, domain));
        row.push_back(surname);
      } else if (attribute == "dob") {
        row.push_back(date_value(draw(vertex_rng, domain)));
      } else if (attribute == "email") {
        row.push_back(fmt::format("{}.{}.{}@example.org", lower(name), lower(surname), v));
      } else if (attribute == "company") {
        row.push_back(dictionary_value(kCompanyWords, draw(vertex_rng, domain)));
      } else {
        row.push_back(dictionary_value(kCities, draw(vertex_rng, domain)));
      }
    }
    out.rows.push_back(std::move(row));
  }

  std::mt19937_64 edge_rng(params.seed);
  const std::uint64_t m = n * params.edge_factor;
  out.edges.reserve(m);
  const double ab = params.a + params.b;
  const double abc = ab + params.c;
  for (std::uint64_t e = 0; e < m; ++e) {
    std::uint64_t src = 0, dst = 0;
    for (unsigned bit = 0; bit < params.scale; ++bit) {
      const double r = unit(edge_rng);
      const std::uint64_t half = std::uint64_t{1} << (params.scale - 1 - bit);
      if (r < params.a) {
      } else if (r < ab) {
        dst += half;
      } else if (r < abc) {
        src += half;
      } else {
        src += half;
        dst += half;
      }
    }
    out.edges.emplace_back(src, dst);
  }
  return out;
}

void write_generated(const GeneratedGraph& graph, const std::string& vertex_path,
                     const std::string& edge_path) {
  std::string csv;
  std::vector<CsvField> fields(graph.header.begin(), graph.header.end());
  csv += format_csv_record(fields);
  csv += '\n';
  for (const auto& row : graph.rows) {
    fields.assign(row.begin(), row.end());
    csv += format_csv_record(fields);
    csv += '\n';
  }
  write_file(vertex_path, csv);
  std::string tsv;
  tsv.reserve(graph.edges.size() * 12);
  for (const auto& [s, t] : graph.edges) {
    tsv += std::to_string(s);
    tsv += '\t';
    tsv += std::to_string(t);
    tsv += '\n';
  }
  write_file(edge_path, tsv);
}

std::map<std::string, std::string> parse_config(std::string_view text, std::string_view source) {
  std::map<std::string, std::string> out;
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::size_t line = 0, pos = 0;
  while (pos <= text.size()) {
    ++line;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    row = trim(row);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string_view::npos || trim(row.substr(0, eq)).empty()) {
      throw Error(ErrorCode::kParse, fmt::format("{}:{}: expected key=value", source, line));
    }
    out[std::string(trim(row.substr(0, eq)))] = std::string(trim(row.substr(eq + 1)));
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  return parse_config(read_file(path), path);
}

std::vector<std::string> apply_config(GeneratorParams& params,
                                      const std::map<std::string, std::string>& config) {
  std::vector<std::string> unknown;
  for (const auto& [key, value] : config) {
    if (key == "scale") {
      params.scale = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "edge_factor") {
      params.edge_factor = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "seed") {
      params.seed = parse_unsigned(key, value);
    } else if (key == "max_scale") {
      params.max_scale = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "attributes") {
      params.profile.attributes.clear();
      std::size_t pos = 0;
      while (pos <= value.size()) {
        std::size_t end = value.find(',', pos);
        if (end == std::string::npos) end = value.size();
        if (end > pos) params.profile.attributes.push_back(value.substr(pos, end - pos));
        pos = end + 1;
      }
    } else if (key == "name_domain") {
      params.profile.name_domain = parse_unsigned(key, value);
    } else if (key == "surname_domain") {
      params.profile.surname_domain = parse_unsigned(key, value);
    } else if (key == "dob_domain") {
      params.profile.dob_domain = parse_unsigned(key, value);
    } else if (key == "company_domain") {
      params.profile.company_domain = parse_unsigned(key, value);
    } else if (key == "residence_domain") {
      params.profile.residence_domain = parse_unsigned(key, value);
    } else {
      unknown.push_back(key);
    }
  }
  return unknown;
}

}  // namespace graphjoin::io
