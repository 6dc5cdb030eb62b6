#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "regapprox/errors.hpp"

namespace regapprox {

using CsvRow = std::vector<std::string>;

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& os, const CsvRow& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
  os << '\n';
}

namespace detail {

inline bool as_number(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

/// Field-wise order: numbers compare numerically, anything else as text.
inline bool row_before(const CsvRow& a, const CsvRow& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    double x = 0, y = 0;
    if (as_number(a[i], x) && as_number(b[i], y)) {
      if (x != y) return x < y;
    } else if (a[i] != b[i]) {
      return a[i] < b[i];
    }
  }
  return a.size() < b.size();
}

}  // namespace detail

inline void sort_rows(std::vector<CsvRow>& rows) { std::stable_sort(rows.begin(), rows.end(), detail::row_before); }

inline void emit_csv(std::ostream& os, const CsvRow& header, std::vector<CsvRow> rows, bool sorted = true) {
  if (sorted) sort_rows(rows);
  write_csv_row(os, header);
  for (const auto& r : rows) write_csv_row(os, r);
}

inline void emit_csv(const std::filesystem::path& path, const CsvRow& header, std::vector<CsvRow> rows,
                     bool sorted = true) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_csv(os, header, std::move(rows), sorted);
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace regapprox
