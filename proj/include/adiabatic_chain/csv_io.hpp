#pragma once

// CSV layout shared by every output file:
//
//   # key: value            metadata, one pair per line
//   col_a,col_b,...         header
//   1.5,0.99500000000000002 numeric rows, %.17g, LF line endings
//
// Energies are in units of J and times in units of 1/J (hbar = 1).

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "adiabatic_chain/propagator.hpp"
#include "adiabatic_chain/sweep_result.hpp"

namespace adiabatic_chain {

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* units_note = "energies in J, times in 1/J (hbar = 1)";

inline void write_metadata(std::ostream& os, const Metadata& metadata)
{
  for (const auto& [key, value] : metadata)
    os << "# " << key << ": " << value << '\n';
}

inline void write_row(std::ostream& os, const std::vector<double>& row)
{
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i)
      os << ',';
    os << format_number(row[i]);
  }
  os << '\n';
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& result, const Metadata& extra = {})
{
  os << "# sweep: " << result.name << '\n';
  os << "# units: " << units_note << '\n';
  write_metadata(os, extra);
  write_metadata(os, result.metadata);
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i)
      os << ',';
    os << result.columns[i];
  }
  os << '\n';
  for (const auto& row : result.rows)
    write_row(os, row);
}

/// Rows of a secondary table as metadata pairs, e.g.
/// ("gap_vs_n_fits[0]", "mu0=16, slope=11.05, ...").
inline Metadata table_as_metadata(const SweepResult& table)
{
  Metadata out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string value;
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      if (i)
        value += ", ";
      value += table.columns[i] + '=' + format_number(table.rows[r][i]);
    }
    out.emplace_back(table.name + '[' + std::to_string(r) + ']', std::move(value));
  }
  return out;
}

/// Header t,p1,...,pN and one row per recorded time.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory, const Metadata& metadata = {})
{
  os << "# trajectory: populations |c_j(t)|^2\n";
  os << "# units: " << units_note << '\n';
  write_metadata(os, metadata);
  os << 't';
  const std::size_t n = trajectory.final_state.size();
  for (std::size_t j = 1; j <= n; ++j)
    os << ",p" << j;
  os << '\n';
  std::vector<double> row(n + 1);
  for (std::size_t r = 0; r < trajectory.times.size(); ++r) {
    row[0] = trajectory.times[r];
    for (std::size_t j = 0; j < n; ++j)
      row[j + 1] = trajectory.populations[r][j];
    write_row(os, row);
  }
}

} // namespace adiabatic_chain
