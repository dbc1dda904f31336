#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "epidisagg/epicalendar.hpp"
#include "epidisagg/pipeline.hpp"
#include "epidisagg/series.hpp"

namespace epidisagg {

/// Parameters of a seeded bell-shaped synthetic outbreak.
struct OutbreakSpec {
  double peak_week = 20;
  double peak_height = 100;
  double width = 5;  // weeks, Gaussian sigma
  double baseline = 0;
  double noise_sd = 0;
  std::uint64_t seed = 0;
};

/// Gaussian bump plus baseline plus seeded noise, clipped at zero.
WeeklySeries gen_outbreak_series(const OutbreakSpec& spec,
                                 std::size_t n_weeks, EpiWeekId start,
                                 std::string unit_id = {});

/// i.i.d. zero-inflated events: each week is 0 with probability zero_prob,
/// otherwise event_height.
WeeklySeries gen_sparse_series(double zero_prob, double event_height,
                               std::size_t n_weeks, std::uint64_t seed,
                               EpiWeekId start, std::string unit_id = {});

/// Sum weekly values month by month. The series must start on a month
/// boundary of the map and cover whole months.
MonthlySeries aggregate_to_monthly(const WeeklySeries& w,
                                   const MonthWeekMap& map);

enum class Corpus { smooth, sparse };

/// Fixed synthetic corpus configuration. The generator parameter ranges
/// are versioned constants so bench runs are reproducible.
struct BenchConfig {
  Corpus corpus = Corpus::smooth;
  int n_units = 100;
  std::uint64_t seed = 42;
  int first_year = 2015;
  int last_year = 2016;
};

struct BenchData {
  std::vector<WeeklySeries> truth;
  std::vector<MonthlySeries> monthly;
};

/// Generate the synthetic weekly ground truth and its monthly aggregation.
BenchData gen_corpus(const BenchConfig& cfg, const MonthWeekMap& map);

/// Disaggregate the corpus with every method and score against the ground
/// truth; same record/report shapes as run_validation.
ValidationResult run_bench(const BenchConfig& cfg, const MonthWeekMap& map,
                           std::span<const MethodKind> methods,
                           int threads = 1);

}  // namespace epidisagg
