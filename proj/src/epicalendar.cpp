#include "epidisagg/epicalendar.hpp"

#include <algorithm>
#include <stdexcept>

namespace epidisagg {

namespace {

// Civil-date <-> day-number conversions (days since 1970-01-01).
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

Date civil_from_days(long long z) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long y = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(d)};
}

// 0 = Sunday .. 6 = Saturday.
int weekday_sun0(long long z) { return static_cast<int>(((z % 7) + 11) % 7); }

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30,
                                    31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[m - 1];
}

// Day number of the Sunday starting week 1 of an epi-year: the first
// Wednesday of January, minus three days.
long long epiyear_start_sunday(int epi_year) {
  const long long jan1 = days_from_civil(epi_year, 1, 1);
  const long long first_wed = jan1 + ((3 - weekday_sun0(jan1)) + 7) % 7;
  return first_wed - 3;
}

void check_year_range(int year) {
  if (year < kFirstSupportedYear || year > kLastSupportedYear)
    throw std::out_of_range("year " + std::to_string(year) +
                            " outside supported range " +
                            std::to_string(kFirstSupportedYear) + ".." +
                            std::to_string(kLastSupportedYear));
}

EpiWeekId epiweek_from_sunday(long long sunday) {
  const Date wed = civil_from_days(sunday + 3);
  const int week = static_cast<int>(
      (sunday - epiyear_start_sunday(wed.year)) / 7 + 1);
  return EpiWeekId{wed.year, week};
}

}  // namespace

std::string to_string(const EpiWeekId& w) {
  const char* pad = w.week < 10 ? "0" : "";
  return std::to_string(w.epi_year) + "-W" + pad + std::to_string(w.week);
}

std::string to_string(const MonthKey& m) {
  const char* pad = m.month < 10 ? "0" : "";
  return std::to_string(m.year) + "-" + pad + std::to_string(m.month);
}

EpiWeekId epiweek_of(const Date& d) {
  check_year_range(d.year);
  if (d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > days_in_month(d.year, d.month))
    throw std::invalid_argument("invalid date " + std::to_string(d.year) +
                                "-" + std::to_string(d.month) + "-" +
                                std::to_string(d.day));
  const long long z = days_from_civil(d.year, d.month, d.day);
  return epiweek_from_sunday(z - weekday_sun0(z));
}

int weeks_in_epiyear(int epi_year) {
  check_year_range(epi_year);
  return static_cast<int>(
      (epiyear_start_sunday(epi_year + 1) - epiyear_start_sunday(epi_year)) /
      7);
}

Date epiweek_sunday(const EpiWeekId& w) {
  check_year_range(w.epi_year);
  if (w.week < 1 || w.week > weeks_in_epiyear(w.epi_year))
    throw std::invalid_argument("invalid epi-week " + to_string(w));
  return civil_from_days(epiyear_start_sunday(w.epi_year) + 7 * (w.week - 1));
}

EpiWeekId epiweek_add(const EpiWeekId& w, long long delta) {
  const long long sunday =
      epiyear_start_sunday(w.epi_year) + 7 * (w.week - 1 + delta);
  return epiweek_from_sunday(sunday);
}

long long weeks_between(const EpiWeekId& a, const EpiWeekId& b) {
  const long long sa = epiyear_start_sunday(a.epi_year) + 7 * (a.week - 1);
  const long long sb = epiyear_start_sunday(b.epi_year) + 7 * (b.week - 1);
  return (sb - sa) / 7;
}

MonthWeekMap MonthWeekMap::build(int first_year, int last_year) {
  check_year_range(first_year);
  check_year_range(last_year);
  if (first_year > last_year)
    throw std::invalid_argument("empty year range");

  MonthWeekMap map;
  map.first_year_ = first_year;
  map.last_year_ = last_year;

  // All weeks of epi-years first_year..last_year have their Wednesday in
  // that same civil year, so walking them yields exactly the months
  // January first_year .. December last_year.
  const long long begin = epiyear_start_sunday(first_year);
  const long long end = epiyear_start_sunday(last_year + 1);
  int cur_epi_year = first_year;
  long long cur_start = begin;
  for (long long sunday = begin; sunday < end; sunday += 7) {
    const Date wed = civil_from_days(sunday + 3);
    if (wed.year != cur_epi_year) {
      cur_epi_year = wed.year;
      cur_start = sunday;
    }
    const EpiWeekId id{cur_epi_year,
                       static_cast<int>((sunday - cur_start) / 7 + 1)};
    const MonthKey mk{wed.year, wed.month};
    if (map.entries_.empty() || !(map.entries_.back().month == mk))
      map.entries_.push_back(Entry{mk, map.weeks_.size(), {}});
    map.entries_.back().weeks.push_back(id);
    map.weeks_.push_back(id);
  }
  return map;
}

const MonthWeekMap::Entry* MonthWeekMap::find(const MonthKey& m) const {
  const auto idx = entry_index(m);
  return idx ? &entries_[*idx] : nullptr;
}

std::optional<std::size_t> MonthWeekMap::entry_index(const MonthKey& m) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), m,
      [](const Entry& e, const MonthKey& key) { return e.month < key; });
  if (it == entries_.end() || !(it->month == m)) return std::nullopt;
  return static_cast<std::size_t>(it - entries_.begin());
}

std::optional<std::size_t> MonthWeekMap::week_index(const EpiWeekId& w) const {
  const auto it = std::lower_bound(weeks_.begin(), weeks_.end(), w);
  if (it == weeks_.end() || !(*it == w)) return std::nullopt;
  return static_cast<std::size_t>(it - weeks_.begin());
}

}  // namespace epidisagg
