#include "graphjoin/io/csv.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "graphjoin/error.hpp"

namespace graphjoin::io {

std::vector<CsvRecord> parse_csv(std::string_view text, std::string_view source) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') {
      ++line;
      i += 2;
      continue;
    }
    CsvRecord record{line, {}};
    for (;;) {
      CsvField field;
      if (i < n && text[i] == '"') {
        const std::size_t open_line = line;
        std::string value;
        ++i;
        for (;;) {
          if (i >= n) {
            throw Error(ErrorCode::kParse,
                        fmt::format("{}:{}: unterminated quoted field", source, open_line));
          }
          if (text[i] == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              value += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          value += text[i++];
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw Error(ErrorCode::kParse,
                      fmt::format("{}:{}: unexpected text after closing quote", source, line));
        }
        field = std::move(value);
      } else {
        const std::size_t begin = i;
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') {
            throw Error(ErrorCode::kParse,
                        fmt::format("{}:{}: quote inside unquoted field", source, line));
          }
          ++i;
        }
        if (i > begin) field = std::string(text.substr(begin, i - begin));
      }
      record.fields.push_back(std::move(field));
      if (i < n && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (i < n && text[i] == '\r') {
      if (i + 1 < n && text[i + 1] == '\n') {
        ++i;
      } else {
        throw Error(ErrorCode::kParse, fmt::format("{}:{}: bare carriage return", source, line));
      }
    }
    if (i < n) {
      ++i;  // '\n'
      ++line;
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string format_csv_field(const CsvField& field) {
  if (!field) return {};
  const std::string& v = *field;
  if (!v.empty() && v.find_first_of(",\"\r\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_csv_record(const std::vector<CsvField>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    out += format_csv_field(fields[k]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path));
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot open {} for writing", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, fmt::format("write to {} failed", path));
}

}  // namespace graphjoin::io
