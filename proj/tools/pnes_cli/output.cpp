#include "pnes_cli/output.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "pnes/version.hpp"
#include "pnes_cli/config.hpp"

namespace pnes::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Header values stay on one line whatever the input held.
std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

std::string render_csv(const Document& doc) {
  std::string out;
  out += "# pnes ";
  out += kVersion;
  out += "\n# command = " + doc.command + "\n";
  for (const auto& [k, v] : doc.config) out += "# " + k + " = " + one_line(v) + "\n";
  for (const auto& w : doc.warnings) out += "# warning: " + one_line(w) + "\n";

  for (std::size_t i = 0; i < doc.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(doc.columns[i]);
  }
  out += '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out += format_double(*d);
      } else {
        out += csv_field(std::get<std::string>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Document& doc) {
  // ordered_json keeps the key order fixed by insertion.
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = doc.command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.config) cfg[k] = v;
  j["config"] = cfg;
  j["warnings"] = doc.warnings;
  j["columns"] = doc.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) {
          r.push_back(*d);
        } else {
          r.push_back(nullptr);
        }
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

std::string render(const Document& doc, Format f) {
  return f == Format::kCsv ? render_csv(doc) : render_json(doc);
}

std::string error_record(const std::string& kind, const std::vector<std::string>& messages) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["messages"] = messages;
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace pnes::cli
