#include "epidisagg/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace epidisagg {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string& s, const std::filesystem::path& path,
              std::size_t line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(path, line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

double parse_value(const std::string& s, const std::filesystem::path& path,
                   std::size_t line) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(path, line, "bad value '" + s + "'");
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  return in;
}

std::string read_line(std::ifstream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::vector<MonthlySeries> load_monthly_csv(const std::filesystem::path& path,
                                            bool allow_negative) {
  std::ifstream in = open_input(path);
  std::size_t lineno = 1;
  if (read_line(in) != "unit_id,year,month,value")
    throw ParseError(path, lineno,
                     "expected header 'unit_id,year,month,value'");

  struct Row {
    std::string unit;
    int year;
    int month;
    double value;
  };
  std::vector<Row> rows;
  while (in.peek() != EOF) {
    ++lineno;
    const std::string line = read_line(in);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) throw ParseError(path, lineno, "expected 4 fields");
    Row r{f[0], parse_int(f[1], path, lineno, "year"),
          parse_int(f[2], path, lineno, "month"),
          parse_value(f[3], path, lineno)};
    if (r.unit.empty()) throw ParseError(path, lineno, "empty unit_id");
    if (r.month < 1 || r.month > 12)
      throw std::invalid_argument(path.string() + ":" +
                                  std::to_string(lineno) + ": month " +
                                  std::to_string(r.month) + " outside 1..12");
    if (!allow_negative && r.value < 0.0)
      throw std::invalid_argument(
          path.string() + ":" + std::to_string(lineno) +
          ": negative value for additive target (unit '" + r.unit + "')");
    rows.push_back(std::move(r));
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.unit, a.year, a.month) <
           std::tie(b.unit, b.year, b.month);
  });

  std::vector<MonthlySeries> out;
  for (const Row& r : rows) {
    const MonthKey key{r.year, r.month};
    if (!out.empty() && out.back().unit_id == r.unit) {
      MonthlySeries& s = out.back();
      const int months =
          (r.year - s.start.year) * 12 + (r.month - s.start.month);
      if (months == static_cast<int>(s.values.size()) - 1)
        throw std::invalid_argument("duplicate month " + to_string(key) +
                                    " for unit '" + r.unit + "'");
      if (months != static_cast<int>(s.values.size()))
        throw std::invalid_argument(
            "unit '" + r.unit + "' is missing month " +
            to_string(month_add(s.start,
                                static_cast<int>(s.values.size()))));
      s.values.push_back(r.value);
    } else {
      out.push_back(MonthlySeries{r.unit, key, {r.value}});
    }
  }
  return out;
}

std::vector<WeeklySeries> load_weekly_csv(const std::filesystem::path& path,
                                          bool allow_negative) {
  std::ifstream in = open_input(path);
  std::size_t lineno = 1;
  if (read_line(in) != "unit_id,epi_year,epi_week,value")
    throw ParseError(path, lineno,
                     "expected header 'unit_id,epi_year,epi_week,value'");

  struct Row {
    std::string unit;
    EpiWeekId week;
    double value;
  };
  std::vector<Row> rows;
  while (in.peek() != EOF) {
    ++lineno;
    const std::string line = read_line(in);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) throw ParseError(path, lineno, "expected 4 fields");
    Row r{f[0],
          EpiWeekId{parse_int(f[1], path, lineno, "epi_year"),
                    parse_int(f[2], path, lineno, "epi_week")},
          parse_value(f[3], path, lineno)};
    if (r.unit.empty()) throw ParseError(path, lineno, "empty unit_id");
    if (r.week.week < 1 || r.week.week > weeks_in_epiyear(r.week.epi_year))
      throw std::invalid_argument(
          path.string() + ":" + std::to_string(lineno) + ": " +
          to_string(r.week) + " is not a valid epi-week");
    if (!allow_negative && r.value < 0.0)
      throw std::invalid_argument(
          path.string() + ":" + std::to_string(lineno) +
          ": negative value (unit '" + r.unit + "')");
    rows.push_back(std::move(r));
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.unit, a.week) < std::tie(b.unit, b.week);
  });

  std::vector<WeeklySeries> out;
  for (const Row& r : rows) {
    if (!out.empty() && out.back().unit_id == r.unit) {
      WeeklySeries& s = out.back();
      const EpiWeekId next =
          epiweek_add(s.start, static_cast<long long>(s.values.size()));
      if (r.week < next)
        throw std::invalid_argument("duplicate week " + to_string(r.week) +
                                    " for unit '" + r.unit + "'");
      if (!(r.week == next))
        throw std::invalid_argument("unit '" + r.unit +
                                    "' is missing week " + to_string(next));
      s.values.push_back(r.value);
    } else {
      out.push_back(WeeklySeries{r.unit, r.week, {r.value}});
    }
  }
  return out;
}

void write_weekly_csv(const std::filesystem::path& path,
                      std::span<const WeeklySeries> series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << "unit_id,epi_year,epi_week,value\n";
  for (const WeeklySeries& s : series) {
    EpiWeekId w = s.start;
    for (double v : s.values) {
      out << s.unit_id << ',' << w.epi_year << ',' << w.week << ','
          << format_double(v) << '\n';
      w = epiweek_add(w, 1);
    }
  }
  if (!out) throw ParseError(path, "write failed");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace epidisagg
