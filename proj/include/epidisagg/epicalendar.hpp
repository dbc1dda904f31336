#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace epidisagg {

// Supported span of the epidemiological calendar. Dates and years outside
// this window are rejected with std::out_of_range.
inline constexpr int kFirstSupportedYear = 1990;
inline constexpr int kLastSupportedYear = 2100;

/// Proleptic Gregorian civil date.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;
  auto operator<=>(const Date&) const = default;
};

/// Epidemiological week: Sunday through Saturday, numbered within an
/// epi-year. Week 1 of epi-year Y is the week whose Wednesday falls in
/// January of Y (the week containing at least four days of the new year).
struct EpiWeekId {
  int epi_year = 1970;
  int week = 1;
  auto operator<=>(const EpiWeekId&) const = default;
};

struct MonthKey {
  int year = 1970;
  int month = 1;  // 1..12
  auto operator<=>(const MonthKey&) const = default;
};

std::string to_string(const EpiWeekId& w);
std::string to_string(const MonthKey& m);

/// Month at a signed offset from m.
constexpr MonthKey month_add(const MonthKey& m, int delta) {
  const int idx = m.year * 12 + (m.month - 1) + delta;
  return MonthKey{idx / 12, idx % 12 + 1};
}

/// Epi-week containing the given date.
EpiWeekId epiweek_of(const Date& d);

/// Number of epi-weeks in an epi-year (52 or 53).
int weeks_in_epiyear(int epi_year);

/// Date of the Sunday that starts the given epi-week.
Date epiweek_sunday(const EpiWeekId& w);

/// Epi-week at the given signed offset from w. No range check: callers
/// iterating series are expected to stay within the supported span.
EpiWeekId epiweek_add(const EpiWeekId& w, long long delta);

/// Signed number of weeks from a to b (b - a).
long long weeks_between(const EpiWeekId& a, const EpiWeekId& b);

/// Partition of the epi-weeks of a span of calendar years into months.
/// An epi-week is assigned to the month containing its Wednesday, so every
/// month owns 4 or 5 whole weeks and the per-month counts of an epi-year
/// sum to that epi-year's week count.
class MonthWeekMap {
 public:
  struct Entry {
    MonthKey month;
    std::size_t offset = 0;  // index of weeks.front() in the flat week list
    std::vector<EpiWeekId> weeks;
  };

  static MonthWeekMap build(int first_year, int last_year);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<EpiWeekId>& weeks() const { return weeks_; }
  std::size_t total_weeks() const { return weeks_.size(); }
  int first_year() const { return first_year_; }
  int last_year() const { return last_year_; }

  /// Entry for a month, or nullptr if the month is not covered.
  const Entry* find(const MonthKey& m) const;

  /// Position of the entry for a month within entries(), if covered.
  std::optional<std::size_t> entry_index(const MonthKey& m) const;

  /// Global index of an epi-week in the flat week list, if covered.
  std::optional<std::size_t> week_index(const EpiWeekId& w) const;

 private:
  MonthWeekMap() = default;
  int first_year_ = 0;
  int last_year_ = 0;
  std::vector<Entry> entries_;
  std::vector<EpiWeekId> weeks_;
};

}  // namespace epidisagg
