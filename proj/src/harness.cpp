#include "epidisagg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "epidisagg/rng.hpp"

namespace epidisagg {

namespace {

// Smooth-corpus parameter ranges (peak position as a fraction of the span).
constexpr double kPeakFracLo = 0.15, kPeakFracHi = 0.85;
constexpr double kWidthLo = 3.0, kWidthHi = 8.0;
constexpr double kHeightLo = 50.0, kHeightHi = 300.0;
constexpr double kBaselineHi = 5.0;
constexpr double kNoiseFrac = 0.02;  // of peak height

// Sparse-corpus parameters.
constexpr double kZeroProb = 0.85;
constexpr double kEventLo = 1.0, kEventHi = 5.0;

std::string unit_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "unit_%04d", i);
  return buf;
}

}  // namespace

WeeklySeries gen_outbreak_series(const OutbreakSpec& spec,
                                 std::size_t n_weeks, EpiWeekId start,
                                 std::string unit_id) {
  if (n_weeks == 0)
    throw std::invalid_argument("outbreak: need at least one week");
  if (!(spec.width > 0) || !std::isfinite(spec.width))
    throw std::invalid_argument("outbreak: width must be positive");
  if (!std::isfinite(spec.peak_week) || !std::isfinite(spec.peak_height) ||
      !std::isfinite(spec.baseline) || !std::isfinite(spec.noise_sd) ||
      spec.peak_height < 0 || spec.baseline < 0 || spec.noise_sd < 0)
    throw std::invalid_argument("outbreak: invalid spec");

  Rng rng(spec.seed);
  WeeklySeries out{std::move(unit_id), start, std::vector<double>(n_weeks)};
  for (std::size_t j = 0; j < n_weeks; ++j) {
    const double t = (static_cast<double>(j) - spec.peak_week) / spec.width;
    const double v = spec.baseline +
                     spec.peak_height * std::exp(-0.5 * t * t) +
                     spec.noise_sd * rng.normal();
    out.values[j] = std::max(0.0, v);
  }
  return out;
}

WeeklySeries gen_sparse_series(double zero_prob, double event_height,
                               std::size_t n_weeks, std::uint64_t seed,
                               EpiWeekId start, std::string unit_id) {
  if (n_weeks == 0)
    throw std::invalid_argument("sparse: need at least one week");
  if (!(zero_prob >= 0.0 && zero_prob <= 1.0))
    throw std::invalid_argument("sparse: zero_prob outside [0, 1]");
  if (!std::isfinite(event_height) || event_height < 0)
    throw std::invalid_argument("sparse: invalid event height");

  Rng rng(seed);
  WeeklySeries out{std::move(unit_id), start, std::vector<double>(n_weeks)};
  for (double& v : out.values)
    v = rng.uniform01() < zero_prob ? 0.0 : event_height;
  return out;
}

MonthlySeries aggregate_to_monthly(const WeeklySeries& w,
                                   const MonthWeekMap& map) {
  if (w.values.empty())
    throw std::invalid_argument("aggregate: empty weekly series");
  const auto start_idx = map.week_index(w.start);
  if (!start_idx)
    throw std::invalid_argument("aggregate: week " + to_string(w.start) +
                                " not covered by the calendar map");

  const auto& entries = map.entries();
  const auto first =
      std::find_if(entries.begin(), entries.end(),
                   [&](const MonthWeekMap::Entry& e) {
                     return e.offset == *start_idx;
                   });
  if (first == entries.end())
    throw std::invalid_argument(
        "aggregate: series does not start on a month boundary");

  MonthlySeries out{w.unit_id, first->month, {}};
  std::size_t consumed = 0;
  for (auto it = first; it != entries.end() && consumed < w.values.size();
       ++it) {
    const std::size_t n = it->weeks.size();
    if (consumed + n > w.values.size())
      throw std::invalid_argument(
          "aggregate: series ends inside month " + to_string(it->month));
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += w.values[consumed + j];
    out.values.push_back(sum);
    consumed += n;
  }
  if (consumed != w.values.size())
    throw std::invalid_argument(
        "aggregate: series extends past the calendar map");
  return out;
}

BenchData gen_corpus(const BenchConfig& cfg, const MonthWeekMap& map) {
  if (cfg.n_units < 1)
    throw std::invalid_argument("bench: need at least one unit");
  if (cfg.first_year < map.first_year() || cfg.last_year > map.last_year())
    throw std::invalid_argument("bench: years not covered by the map");

  const std::size_t n_weeks = map.total_weeks();
  const EpiWeekId start = map.weeks().front();

  Rng param_rng(cfg.seed);
  BenchData data;
  data.truth.reserve(cfg.n_units);
  data.monthly.reserve(cfg.n_units);
  for (int i = 0; i < cfg.n_units; ++i) {
    const std::string id = unit_name(i);
    const std::uint64_t sub_seed = param_rng.next_u64();
    WeeklySeries truth;
    if (cfg.corpus == Corpus::smooth) {
      OutbreakSpec spec;
      spec.peak_week = (kPeakFracLo + (kPeakFracHi - kPeakFracLo) *
                                          param_rng.uniform01()) *
                       static_cast<double>(n_weeks);
      spec.width = kWidthLo + (kWidthHi - kWidthLo) * param_rng.uniform01();
      spec.peak_height =
          kHeightLo + (kHeightHi - kHeightLo) * param_rng.uniform01();
      spec.baseline = kBaselineHi * param_rng.uniform01();
      spec.noise_sd = kNoiseFrac * spec.peak_height;
      spec.seed = sub_seed;
      truth = gen_outbreak_series(spec, n_weeks, start, id);
    } else {
      const double height =
          kEventLo + (kEventHi - kEventLo) * param_rng.uniform01();
      truth = gen_sparse_series(kZeroProb, height, n_weeks, sub_seed, start,
                                id);
    }
    data.monthly.push_back(aggregate_to_monthly(truth, map));
    data.truth.push_back(std::move(truth));
  }
  return data;
}

ValidationResult run_bench(const BenchConfig& cfg, const MonthWeekMap& map,
                           std::span<const MethodKind> methods,
                           int threads) {
  const BenchData data = gen_corpus(cfg, map);
  return run_validation(data.monthly, data.truth, map, methods, threads);
}

}  // namespace epidisagg
