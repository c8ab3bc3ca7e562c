#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "parmem/errors.hpp"
#include "parmem/model.hpp"

namespace parmem {

enum class OutputFormat { csv, json };

inline OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + text + "', expected csv or json");
}

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

// A rectangular result set plus the config echo that makes a run
// reproducible. CSV output carries the echo through its columns; JSON emits
// it as a "config" object alongside the records.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;
};

namespace detail {
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>)
          return v;
        else if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else
          return std::to_string(v);
      },
      cell);
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline nlohmann::json cell_to_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, cell);
}
}  // namespace detail

inline void emit_results(const ResultTable& table, std::ostream& os, OutputFormat format) {
  detail::require(!table.columns.empty(), "emit_results: table has no columns");
  detail::require(!table.rows.empty(), "emit_results: table has no rows");
  for (const auto& row : table.rows)
    detail::require(row.size() == table.columns.size(), "emit_results: ragged row");

  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) os << ',';
      os << detail::csv_escape(table.columns[c]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << ',';
        os << detail::csv_escape(detail::format_cell(row[c]));
      }
      os << '\n';
    }
  } else {
    nlohmann::json doc;
    doc["config"] = nlohmann::json::object();
    for (const auto& [key, value] : table.meta) doc["config"][key] = detail::cell_to_json(value);
    doc["results"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json record;
      for (std::size_t c = 0; c < row.size(); ++c)
        record[table.columns[c]] = detail::cell_to_json(row[c]);
      doc["results"].push_back(std::move(record));
    }
    os << doc.dump(2) << '\n';
  }
  if (!os) throw IoError("emit_results: write failed");
}

inline void emit_results(const ResultTable& table, const std::string& path, OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_results: cannot open " + path);
  emit_results(table, out, format);
  out.flush();
  if (!out) throw IoError("emit_results: write failed: " + path);
}

}  // namespace parmem
