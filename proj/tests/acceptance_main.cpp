// Acceptance suite: one check per release criterion, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for all criteria or
// with a list of criterion numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "epidisagg/csv.hpp"
#include "epidisagg/disagg.hpp"
#include "epidisagg/harness.hpp"
#include "epidisagg/metrics.hpp"
#include "epidisagg/pipeline.hpp"
#include "oracles.hpp"

using namespace epidisagg;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Reporter {
  int failures = 0;

  void report(int criterion, bool pass, const std::string& label,
              const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL",
                criterion, label.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------
// criterion 1: conservation on random series, all methods
void criterion_conservation(Reporter& rep) {
  const auto t0 = Clock::now();
  const auto map = MonthWeekMap::build(1990, 2100);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> value(0.0, 1e4);
  std::uniform_int_distribution<int> length(12, 276);
  std::uniform_int_distribution<int> year(1990, 2077);
  std::uniform_int_distribution<int> month(1, 12);

  std::size_t violations = 0;
  double worst = 0.0;
  for (int series = 0; series < 1000; ++series) {
    MonthlySeries m{"u", {year(rng), month(rng)}, {}};
    const int len = length(rng);
    m.values.reserve(len);
    for (int i = 0; i < len; ++i)
      m.values.push_back(rng() % 8 == 0 ? 0.0 : value(rng));

    const std::size_t base = *map.entry_index(m.start);
    for (const auto method :
         {MethodKind::make_linear(),
          MethodKind::make_jitter(static_cast<std::uint64_t>(series)),
          MethodKind::make_spline()}) {
      const auto w = disaggregate(m, map, method);
      std::size_t rel = 0;
      for (int i = 0; i < len; ++i) {
        const std::size_t n = map.entries()[base + i].weeks.size();
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += w.values[rel + j];
        rel += n;
        const double err =
            std::abs(sum - m.values[i]) / std::max(1.0, m.values[i]);
        worst = std::max(worst, err);
        if (err > 1e-9) ++violations;
      }
    }
  }
  const double dt = seconds_since(t0);
  rep.report(1, violations == 0 && dt < 5.0, "conservation suite",
             fmt("1000 series x 3 methods, %zu violations, worst rel err "
                 "%.2e, %.2f s",
                 violations, worst, dt));
}

// ---------------------------------------------------------------------
// criterion 2: calendar agrees with the day-walk oracle over 1990..2100
void criterion_calendar(Reporter& rep) {
  const auto t0 = Clock::now();
  const auto walk = oracles::calendar_walk(2100);

  std::size_t days_checked = 0, mismatches = 0;
  for (const auto& d : walk) {
    if (d.year < 1990 || d.year > 2100) continue;
    ++days_checked;
    const EpiWeekId got = epiweek_of({d.year, d.month, d.day});
    if (got.epi_year != d.epi_year || got.week != d.week) ++mismatches;
  }

  bool lengths_ok = true;
  for (int y = 1990; y <= 2100; ++y) {
    const int n = weeks_in_epiyear(y);
    if ((n != 52 && n != 53) || n != oracles::walk_weeks_in_epiyear(walk, y))
      lengths_ok = false;
  }

  const auto map = MonthWeekMap::build(1990, 2100);
  bool partition_ok = map.entries().size() == 111 * 12;
  const auto oracle_counts = oracles::walk_month_week_counts(walk);
  std::size_t k = 0;
  std::vector<int> per_epiyear(2101 - 1990, 0);
  for (const auto& e : map.entries()) {
    const std::size_t n = e.weeks.size();
    if (n != 4 && n != 5) partition_ok = false;
    const int key = e.month.year * 100 + e.month.month;
    const auto it =
        std::find_if(oracle_counts.begin(), oracle_counts.end(),
                     [&](const auto& c) { return c.first == key; });
    if (it == oracle_counts.end() || it->second != static_cast<int>(n))
      partition_ok = false;
    for (const EpiWeekId& w : e.weeks) {
      if (!(w == map.weeks()[k])) partition_ok = false;
      per_epiyear[static_cast<std::size_t>(w.epi_year - 1990)]++;
      ++k;
    }
  }
  for (std::size_t i = 1; i < map.weeks().size(); ++i)
    if (weeks_between(map.weeks()[i - 1], map.weeks()[i]) != 1)
      partition_ok = false;
  for (int y = 1990; y <= 2100; ++y)
    if (per_epiyear[static_cast<std::size_t>(y - 1990)] !=
        weeks_in_epiyear(y))
      partition_ok = false;

  std::size_t expected_days = 0;
  for (int y = 1990; y <= 2100; ++y)
    expected_days += 365 + (y % 4 == 0 && (y % 100 != 0 || y % 400 == 0));

  const double dt = seconds_since(t0);
  rep.report(2,
             mismatches == 0 && days_checked == expected_days && lengths_ok &&
                 partition_ok && dt < 2.0,
             "calendar oracle",
             fmt("%zu days, %zu mismatches, lengths %s, partition %s, "
                 "%.2f s",
                 days_checked, mismatches, lengths_ok ? "ok" : "BAD",
                 partition_ok ? "ok" : "BAD", dt));
}

// ---------------------------------------------------------------------
// criterion 3: frozen metric examples and the identity battery
void criterion_metric_oracles(Reporter& rep) {
  std::ostringstream fails;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) fails << ' ' << what;
  };

  // pointwise errors
  {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int r = 0; r < 50; ++r) {
      std::vector<double> x(7), y(7);
      for (auto& v : x) v = u(rng);
      for (auto& v : y) v = u(rng);
      expect(std::abs(mae(x, y) - oracles::mae_naive(x, y)) <= 1e-12,
             "mae-oracle");
    }
    expect(mae(std::vector<double>{0, 0}, std::vector<double>{1, 3}) == 2.0,
           "mae-hand");
    expect(rel_err(rmse(std::vector<double>{0, 0}, std::vector<double>{3, 4}),
                   std::sqrt(12.5)) <= 1e-9,
           "rmse-hand");
    const std::vector<double> obs = {0, 1, 0, 1};
    const std::vector<double> pred(4, 10.0);
    const auto r2 = r_squared(pred, obs);
    expect(r2.has_value() && *r2 < 0.0, "negative-r2-legal");
  }

  // silverman
  {
    expect(silverman_bandwidth(std::vector<double>(25, 3.0)) == 0.1,
           "silverman-floor");
    std::vector<double> s(100);
    for (int i = 0; i < 100; ++i)
      s[i] = -1.0 + 2.0 * static_cast<double>(i) / 99.0;
    double mean = 0;
    for (double v : s) mean += v;
    mean /= 100.0;
    double ss = 0;
    for (double v : s) ss += (v - mean) * (v - mean);
    for (double& v : s) v /= std::sqrt(ss / 99.0);
    expect(rel_err(silverman_bandwidth(s), 0.421993600786707) <= 1e-9,
           "silverman-hand");
  }

  // kde against the direct kernel sum
  {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 40.0);
    for (int r = 0; r < 10; ++r) {
      std::vector<double> sample(30 + r * 11);
      for (auto& v : sample) v = u(rng);
      const double b = 0.1 + 0.7 * static_cast<double>(r);
      const auto grid = kde_grid(sample, sample, b, 256);
      const auto d = kde_pdf(sample, b, grid);
      const auto want = oracles::kde_direct(sample, b, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        expect(std::abs(d.mass[i] - want[i]) <= 1e-9, "kde-oracle");
    }
    const std::vector<double> left(10, 0.0), right(10, 500.0);
    const auto grid = kde_grid(left, right, 0.5);
    const auto dl = kde_pdf(left, 0.5, grid);
    const auto dr = kde_pdf(right, 0.5, grid);
    double overlap = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      overlap += std::min(dl.mass[i], dr.mass[i]);
    expect(overlap <= 1e-12, "kde-separated");
  }

  // divergences
  {
    const DensityEstimate p{{0.0, 1.0}, {0.5, 0.5}};
    const DensityEstimate q{{0.0, 1.0}, {0.25, 0.75}};
    expect(rel_err(kl_divergence(p, q), 0.1438410362258904) <= 1e-9,
           "kl-hand");
    const DensityEstimate a{{0.0, 1.0}, {1.0, 0.0}};
    const DensityEstimate b{{0.0, 1.0}, {0.0, 1.0}};
    expect(std::isinf(kl_divergence(a, b)), "kl-inf");
    expect(rel_err(jsd(a, b), std::numbers::ln2) <= 1e-9, "jsd-ln2");
  }

  // dtw
  {
    const std::vector<double> x = {0, 0, 1, 0};
    const std::vector<double> y = {0, 1, 0, 0};
    expect(dtw(x, y).raw == 0.0, "dtw-phase-shift");
    expect(std::abs(dtw(x, y).raw - oracles::dtw_table(x, y)) <= 1e-12,
           "dtw-oracle");
  }

  // ks
  {
    const auto r = ks_two_sample(std::vector<double>{0, 0, 0},
                                 std::vector<double>{1, 1, 1});
    expect(r.d == 1.0, "ks-d");
    expect(std::abs(r.p - 0.0995618483110212) <= 1e-6, "ks-p");
  }

  // spline disaggregation against the moment oracle (4/4/5 months)
  {
    const auto map = MonthWeekMap::build(2024, 2024);
    const MonthlySeries m{"u", {2024, 3}, {10.0, 40.0, 10.0}};
    const auto fit = disagg_spline_fit(m, map);
    const std::vector<double> kx = {-2.5, 1.5, 5.5, 10.0};
    const std::vector<double> ky = {10.0, 10.0, 40.0, 10.0};
    std::vector<double> at(13);
    for (int j = 0; j < 13; ++j) at[j] = j;
    const auto want = oracles::spline_eval_moment(kx, ky, at);
    for (int j = 0; j < 13; ++j)
      expect(rel_err(fit.eval(at[j]), want[j]) <= 1e-9, "spline-oracle");
  }

  // identity battery on 100 random series
  {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::uniform_int_distribution<int> length(20, 150);
    for (int r = 0; r < 100; ++r) {
      std::vector<double> x(static_cast<std::size_t>(length(rng)));
      for (auto& v : x) v = u(rng);
      const auto rec = evaluate_series("u", MethodKind::make_linear(), x, x);
      const bool ideal = rec.mae == 0.0 && rec.rmse == 0.0 &&
                         rec.r2.has_value() && *rec.r2 == 1.0 &&
                         rec.kl == 0.0 && rec.jsd == 0.0 && rec.dtw == 0.0 &&
                         rec.dtw_norm == 0.0 && rec.ks_d == 0.0 &&
                         rec.ks_p == 1.0;
      expect(ideal, "identity-battery");
    }
  }

  const std::string bad = fails.str();
  rep.report(3, bad.empty(), "metric oracles",
             bad.empty() ? "all frozen examples and 100 identity rows"
                         : "failed:" + bad);
}

// ---------------------------------------------------------------------
// criterion 4: property fuzz
void criterion_property_fuzz(Reporter& rep) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::ostringstream fails;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) fails << ' ' << what;
  };

  for (int r = 0; r < 10000; ++r) {
    const std::size_t n = 2 + rng() % 63;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i);
    std::vector<double> pm(n), qm(n);
    for (auto& v : pm) v = u(rng);
    for (auto& v : qm) v = u(rng);
    if (r % 4 == 0) pm[rng() % n] = 0.0;
    if (r % 7 == 0) qm[rng() % n] = 0.0;
    double pt = 0, qt = 0;
    for (double v : pm) pt += v;
    for (double v : qm) qt += v;
    for (double& v : pm) v /= pt;
    for (double& v : qm) v /= qt;
    const DensityEstimate p{grid, pm};
    const DensityEstimate q{grid, qm};
    const double ab = jsd(p, q);
    const double ba = jsd(q, p);
    expect(ab >= 0.0 && ab <= std::numbers::ln2, "jsd-range");
    expect(std::abs(ab - ba) <= 1e-12, "jsd-symmetry");
    expect(kl_divergence(p, q) >= 0.0, "kl-nonneg");
  }

  for (int r = 0; r < 2000; ++r) {
    std::vector<double> x(2 + rng() % 40), y(2 + rng() % 40);
    for (auto& v : x) v = u(rng) * 20.0;
    for (auto& v : y) v = u(rng) * 20.0;
    expect(dtw(x, x).raw == 0.0, "dtw-identity");
    expect(std::abs(dtw(x, y).raw - dtw(y, x).raw) <= 1e-12, "dtw-symmetry");
    expect(std::abs(ks_two_sample(x, y).d - oracles::ks_d_brute(x, y)) <=
               1e-12,
           "ks-brute");
  }

  const std::string bad = fails.str();
  rep.report(4, bad.empty(), "property fuzz",
             bad.empty() ? "10000 density pairs, 2000 dtw/ks pairs"
                         : "failed:" + bad);
}

// ---------------------------------------------------------------------
// criterion 5: spline fidelity against the tridiagonal-system oracle
void criterion_spline_fidelity(Reporter& rep) {
  const auto map = MonthWeekMap::build(1999, 2021);
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> value(0.0, 1e4);
  std::uniform_int_distribution<int> year(1999, 2018);
  std::uniform_int_distribution<int> month(1, 12);

  double worst_sample = 0.0, worst_c2 = 0.0;
  for (int series = 0; series < 50; ++series) {
    const int len =
        series < 5 ? 2 + series : 2 + static_cast<int>(rng() % 38);
    MonthlySeries m{"u", {year(rng), month(rng)}, {}};
    for (int i = 0; i < len; ++i)
      m.values.push_back(rng() % 6 == 0 ? 0.0 : value(rng));

    const auto fit = disagg_spline_fit(m, map);
    const std::size_t base = *map.entry_index(m.start);
    std::size_t n_weeks = 0;
    for (int i = 0; i < len; ++i)
      n_weeks += map.entries()[base + i].weeks.size();
    std::vector<double> at(n_weeks);
    for (std::size_t j = 0; j < n_weeks; ++j)
      at[j] = static_cast<double>(j);

    const auto want = oracles::spline_eval_moment(fit.knot_x, fit.knot_y, at);
    for (std::size_t j = 0; j < at.size(); ++j)
      worst_sample =
          std::max(worst_sample, rel_err(fit.eval(at[j]), want[j]));

    for (std::size_t i = 1; i + 1 < fit.knot_x.size(); ++i) {
      const double x = fit.knot_x[i];
      const auto& l = fit.pieces[i - 1];
      const double t = x - fit.knot_x[i - 1];
      const double v = l.a + t * (l.b + t * (l.c + t * l.d));
      const double d1 = l.b + t * (2 * l.c + t * 3 * l.d);
      const double d2 = 2 * l.c + 6 * l.d * t;
      const auto& rpiece = fit.pieces[i];
      const double scale =
          std::max({1.0, std::abs(v), std::abs(d1), std::abs(d2)});
      worst_c2 = std::max(worst_c2, std::abs(v - rpiece.a) / scale);
      worst_c2 = std::max(worst_c2, std::abs(d1 - rpiece.b) / scale);
      worst_c2 = std::max(worst_c2, std::abs(d2 - 2 * rpiece.c) / scale);
    }
  }
  rep.report(5, worst_sample <= 1e-9 && worst_c2 <= 1e-9, "spline fidelity",
             fmt("50 series, worst sample err %.2e, worst C2 residual %.2e",
                 worst_sample, worst_c2));
}

// ---------------------------------------------------------------------
// criterion 6: method ranking on the fixed corpora
void criterion_ranking(Reporter& rep) {
  const auto map = MonthWeekMap::build(2015, 2016);
  const std::vector<MethodKind> methods = {MethodKind::make_linear(),
                                           MethodKind::make_spline()};
  auto median_r2 = [](const ValidationResult& res, Method m) {
    std::vector<double> v;
    for (const auto& r : res.records)
      if (r.method.kind == m && r.r2) v.push_back(*r.r2);
    return median_of(std::move(v));
  };

  BenchConfig smooth;
  smooth.corpus = Corpus::smooth;
  const auto smooth_res = run_bench(smooth, map, methods, 2);
  const double sm_lin = median_r2(smooth_res, Method::linear);
  const double sm_spl = median_r2(smooth_res, Method::spline);

  BenchConfig sparse;
  sparse.corpus = Corpus::sparse;
  const auto sparse_res = run_bench(sparse, map, methods, 2);
  const double sp_lin = median_r2(sparse_res, Method::linear);
  const double sp_spl = median_r2(sparse_res, Method::spline);

  const bool ok = sm_spl > sm_lin && sp_lin >= sp_spl;
  rep.report(6, ok, "method ranking",
             fmt("smooth median r2 spline %.4f > linear %.4f; sparse "
                 "linear %.4f >= spline %.4f",
                 sm_spl, sm_lin, sp_lin, sp_spl));
}

// ---------------------------------------------------------------------
// criterion 7: jitter with zero noise is bit-identical to linear
void criterion_degenerate(Reporter& rep) {
  const auto map = MonthWeekMap::build(1999, 2021);
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> value(0.0, 1e4);
  std::uniform_int_distribution<int> year(1999, 2019);
  std::uniform_int_distribution<int> month(1, 12);

  std::size_t mismatches = 0;
  for (int r = 0; r < 100; ++r) {
    MonthlySeries m{"u", {year(rng), month(rng)}, {}};
    const int len = 1 + static_cast<int>(rng() % 24);
    for (int i = 0; i < len; ++i)
      m.values.push_back(rng() % 5 == 0 ? 0.0 : value(rng));
    const auto lin = disaggregate_linear(m, map);
    const auto jit = disaggregate_jitter(m, map, rng(), 0.0);
    if (lin.values.size() != jit.values.size() ||
        std::memcmp(lin.values.data(), jit.values.data(),
                    lin.values.size() * sizeof(double)) != 0)
      ++mismatches;
  }
  rep.report(7, mismatches == 0, "degenerate equivalence",
             fmt("100 inputs, %zu bitwise mismatches", mismatches));
}

// ---------------------------------------------------------------------
// criterion 8: full-scale throughput and parallel trend
void criterion_throughput(Reporter& rep) {
  const auto map = MonthWeekMap::build(1999, 2021);
  const std::size_t n_weeks = map.total_weeks();
  const EpiWeekId start = map.weeks().front();

  // 645 units with one seasonal outbreak per year over 23 years.
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<WeeklySeries> truth;
  std::vector<MonthlySeries> monthly;
  truth.reserve(645);
  monthly.reserve(645);
  std::vector<std::size_t> year_offsets;
  for (int y = 1999; y <= 2021; ++y)
    year_offsets.push_back(map.find(MonthKey{y, 1})->offset);

  for (int unit = 0; unit < 645; ++unit) {
    char name[16];
    std::snprintf(name, sizeof(name), "unit_%04d", unit);
    std::vector<double> values(n_weeks, 2.0 * u(rng));
    for (const std::size_t off : year_offsets) {
      const double peak = static_cast<double>(off) + 8.0 + 30.0 * u(rng);
      const double height = 20.0 + 280.0 * u(rng);
      const double width = 2.5 + 5.0 * u(rng);
      const std::size_t lo = off > 30 ? off - 30 : 0;
      const std::size_t hi = std::min(n_weeks, off + 85);
      for (std::size_t j = lo; j < hi; ++j) {
        const double t = (static_cast<double>(j) - peak) / width;
        values[j] += height * std::exp(-0.5 * t * t);
      }
    }
    for (double& v : values) v = std::max(0.0, v + u(rng) - 0.5);
    WeeklySeries w{name, start, std::move(values)};
    monthly.push_back(aggregate_to_monthly(w, map));
    truth.push_back(std::move(w));
  }

  const std::vector<MethodKind> methods = {MethodKind::make_linear(),
                                           MethodKind::make_jitter(42),
                                           MethodKind::make_spline()};

  const auto t1 = Clock::now();
  const auto serial = run_validation(monthly, truth, map, methods, 1);
  const double dt1 = seconds_since(t1);

  bool parallel_ok = true;
  std::string parallel_note = "single hardware thread, trend not measured";
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw >= 2) {
    const auto t2 = Clock::now();
    const auto parallel = run_validation(monthly, truth, map, methods, 2);
    const double dt2 = seconds_since(t2);
    parallel_ok = dt2 < 0.95 * dt1 &&
                  parallel.records.size() == serial.records.size();
    for (std::size_t i = 0; parallel_ok && i < serial.records.size(); ++i)
      parallel_ok =
          serial.records[i].unit_id == parallel.records[i].unit_id &&
          serial.records[i].mae == parallel.records[i].mae;
    parallel_note = fmt("2-thread run %.2f s, speedup %.2fx", dt2, dt1 / dt2);
  }

  const bool ok = serial.records.size() == 645 * 3 &&
                  serial.skipped.empty() && dt1 < 10.0 && parallel_ok;
  rep.report(8, ok, "throughput",
             fmt("645 units x 23 years x 3 methods: %zu records in %.2f s "
                 "single-threaded; %s",
                 serial.records.size(), dt1, parallel_note.c_str()));
}

// ---------------------------------------------------------------------
// criterion 9: byte-identical reports across reruns
void criterion_determinism(Reporter& rep) {
  const fs::path dir =
      fs::temp_directory_path() / "epidisagg_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  const auto map = MonthWeekMap::build(2015, 2016);
  const std::vector<MethodKind> methods = {MethodKind::make_linear(),
                                           MethodKind::make_jitter(9),
                                           MethodKind::make_spline()};

  // validate twice from the same synthetic inputs
  BenchConfig cfg;
  cfg.corpus = Corpus::smooth;
  cfg.n_units = 25;
  cfg.seed = 99;
  const auto data = gen_corpus(cfg, map);
  for (const char* run : {"v1", "v2"}) {
    const auto result =
        run_validation(data.monthly, data.truth, map, methods, 2);
    emit_reports(result.records, summarize(result.records, methods),
                 dir / run);
  }
  const bool validate_ok = slurp(dir / "v1" / "metrics_by_unit.csv") ==
                               slurp(dir / "v2" / "metrics_by_unit.csv") &&
                           slurp(dir / "v1" / "summary_stats.csv") ==
                               slurp(dir / "v2" / "summary_stats.csv");

  // bench twice end to end
  for (const char* run : {"b1", "b2"}) {
    const auto result = run_bench(cfg, map, methods, 2);
    emit_reports(result.records, summarize(result.records, methods),
                 dir / run);
  }
  const bool bench_ok = slurp(dir / "b1" / "metrics_by_unit.csv") ==
                            slurp(dir / "b2" / "metrics_by_unit.csv") &&
                        slurp(dir / "b1" / "summary_stats.csv") ==
                            slurp(dir / "b2" / "summary_stats.csv");

  rep.report(9, validate_ok && bench_ok, "determinism",
             fmt("validate rerun %s, bench rerun %s",
                 validate_ok ? "identical" : "DIFFERS",
                 bench_ok ? "identical" : "DIFFERS"));
}

// ---------------------------------------------------------------------
// criterion 10: dataset package tree layout
void criterion_package(Reporter& rep) {
  const fs::path dir =
      fs::temp_directory_path() / "epidisagg_acceptance_package";
  fs::remove_all(dir);
  const auto map = MonthWeekMap::build(2020, 2020);

  DatasetPackage pkg;
  pkg.states.push_back(StateGroup{"35", "Sao Paulo", {"3500105", "3550308"}});
  for (const auto& unit : pkg.states[0].unit_ids) {
    MonthlySeries m{unit, {2020, 1}, std::vector<double>(12, 10.0)};
    pkg.target.push_back(disaggregate_spline(m, map));
  }
  for (const char* cov : {"Densidade_demografica", "Temperatura_maxima"}) {
    std::vector<WeeklySeries> series;
    for (const auto& unit : pkg.states[0].unit_ids) {
      MonthlySeries m{unit, {2020, 1}, std::vector<double>(12, 1.5)};
      series.push_back(propagate_covariate(m, map));
    }
    pkg.covariates.emplace_back(cov, std::move(series));
  }
  const fs::path root = dir / "DengueDataset";
  emit_dataset_package(pkg, root);

  const std::vector<fs::path> expected = {
      root / "README.md",
      root / "LICENSE",
      root / "data" / "Dengue by state 35 - Sao Paulo" / "weekly.csv",
      root / "target" / "Dengue by state 35 - Sao Paulo.csv",
      root / "features" / "Densidade_demografica_cubic.csv",
      root / "features" / "Temperatura_maxima_cubic.csv",
  };
  std::ostringstream missing;
  for (const auto& p : expected)
    if (!fs::is_regular_file(p)) missing << ' ' << p.string();
  const bool dirs_ok =
      fs::is_directory(root / "data" / "Dengue by state 35 - Sao Paulo") &&
      fs::is_directory(root / "target") &&
      fs::is_directory(root / "features");

  const std::string bad = missing.str();
  rep.report(10, bad.empty() && dirs_ok, "package layout",
             bad.empty() ? "tree matches the published structure"
                         : "missing:" + bad);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  auto wanted = [&](int n) {
    return selected.empty() ||
           std::find(selected.begin(), selected.end(), n) != selected.end();
  };

  Reporter rep;
  if (wanted(1)) criterion_conservation(rep);
  if (wanted(2)) criterion_calendar(rep);
  if (wanted(3)) criterion_metric_oracles(rep);
  if (wanted(4)) criterion_property_fuzz(rep);
  if (wanted(5)) criterion_spline_fidelity(rep);
  if (wanted(6)) criterion_ranking(rep);
  if (wanted(7)) criterion_degenerate(rep);
  if (wanted(8)) criterion_throughput(rep);
  if (wanted(9)) criterion_determinism(rep);
  if (wanted(10)) criterion_package(rep);

  if (rep.failures == 0) {
    std::puts("acceptance: all criteria passed");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", rep.failures);
  return 1;
}
