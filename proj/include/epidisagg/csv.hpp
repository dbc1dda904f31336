#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epidisagg/series.hpp"

namespace epidisagg {

/// Structural file problem: unreadable file, bad header, malformed row.
/// Distinct from value-level validation errors (std::invalid_argument) so
/// the CLI can map them to different exit codes.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& path, std::size_t line,
             const std::string& what)
      : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what) {}
  ParseError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what) {}
};

/// Load `unit_id,year,month,value` rows into per-unit monthly series.
/// Rows are sorted; months must be contiguous per unit and values
/// non-negative unless allow_negative (covariates).
std::vector<MonthlySeries> load_monthly_csv(const std::filesystem::path& path,
                                            bool allow_negative = false);

/// Load `unit_id,epi_year,epi_week,value` rows into per-unit weekly series.
std::vector<WeeklySeries> load_weekly_csv(const std::filesystem::path& path,
                                          bool allow_negative = false);

/// Write weekly series as `unit_id,epi_year,epi_week,value` rows, one block
/// per series in the given order.
void write_weekly_csv(const std::filesystem::path& path,
                      std::span<const WeeklySeries> series);

/// Shortest round-trip decimal form; infinities serialize as `inf`/`-inf`.
std::string format_double(double v);

}  // namespace epidisagg
