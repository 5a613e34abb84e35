#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adiabatic_chain {

/// 17 significant digits (printf "%.17g" form, locale independent); parses
/// back to the same double.
inline std::string format_number(double value)
{
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_list(const std::vector<double>& values)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += ';';
    out += format_number(values[i]);
  }
  return out;
}

inline std::string format_list(const std::vector<int>& values)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

/// Table of numeric rows in sweep-grid order plus the key/value metadata
/// needed to regenerate it.
struct SweepResult
{
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
  void meta(std::string key, double value) { meta(std::move(key), format_number(value)); }
  void meta(std::string key, int value) { meta(std::move(key), std::to_string(value)); }
  void meta(std::string key, std::uint64_t value) { meta(std::move(key), std::to_string(value)); }

  std::size_t column_index(std::string_view column) const
  {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == column)
        return i;
    throw std::out_of_range("SweepResult: no column '" + std::string(column) + "'");
  }

  std::vector<double> column(std::string_view name_) const
  {
    const std::size_t c = column_index(name_);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
      out.push_back(r.at(c));
    return out;
  }

  double at(std::size_t row, std::string_view column_name) const { return rows.at(row).at(column_index(column_name)); }
};

} // namespace adiabatic_chain
