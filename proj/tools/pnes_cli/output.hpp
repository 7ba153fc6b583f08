#pragma once

// A command's result as a column table plus the metadata echoed in the header,
// rendered to CSV or JSON. Rendering depends only on the document, so equal
// documents give byte-identical files.

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pnes::cli {

using Cell = std::variant<double, std::string>;

struct Document {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> warnings;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { kCsv, kJson };

/// Header lines start with "# ": version, command, config echo, warnings.
std::string render_csv(const Document& doc);
/// {"version", "command", "config", "warnings", "columns", "rows"}; NaN becomes null.
std::string render_json(const Document& doc);
std::string render(const Document& doc, Format f);

/// Single-line JSON error record for stderr.
std::string error_record(const std::string& kind, const std::vector<std::string>& messages);

}  // namespace pnes::cli
