#pragma once

// Minimal CSV codec in the PostgreSQL CSV dialect: comma separated, fields
// optionally double-quoted, "" escapes a quote inside a quoted field. An
// unquoted empty field is NULL; a quoted empty field is the empty string.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphjoin::io {

using CsvField = std::optional<std::string>;  // nullopt is NULL

struct CsvRecord {
  std::size_t line = 0;  // 1-based line the record starts on
  std::vector<CsvField> fields;
};

/// Splits `text` into records. Blank lines are skipped. Throws kParse with
/// `source` and the line number on an unterminated quote or stray quote.
std::vector<CsvRecord> parse_csv(std::string_view text, std::string_view source = "<csv>");

/// Quotes only when needed; NULL becomes an empty unquoted field.
std::string format_csv_field(const CsvField& field);
std::string format_csv_record(const std::vector<CsvField>& fields);

/// Whole file as bytes; throws kIo.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace graphjoin::io
