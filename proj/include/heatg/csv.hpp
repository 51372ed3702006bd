#ifndef HEATG_CSV_HPP
#define HEATG_CSV_HPP

// Minimal CSV tables: '#'-prefixed key=value metadata, a header row, and
// numeric cells printed with 12 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heatg/errors.hpp"

namespace heatg {

using CsvCell = std::variant<double, long long, std::string>;

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<CsvCell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_meta(std::string key, double value) { meta.emplace_back(std::move(key), format_number(value)); }

  void add_row(std::vector<CsvCell> row) {
    if (row.size() != columns.size()) throw ContractError("CsvTable: row width does not match the header");
    rows.push_back(std::move(row));
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream out;
    for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        std::visit(
            [&](const auto& cell) {
              using T = std::decay_t<decltype(cell)>;
              if constexpr (std::is_same_v<T, double>) out << format_number(cell);
              else out << cell;
            },
            row[i]);
      }
      out << '\n';
    }
    return out.str();
  }

  /// Returns false when the file cannot be written.
  [[nodiscard]] bool write(const std::string& path) const {
    std::ofstream file(path, std::ios::binary);
    if (!file) return false;
    file << str();
    return static_cast<bool>(file);
  }
};

}  // namespace heatg

#endif  // HEATG_CSV_HPP
