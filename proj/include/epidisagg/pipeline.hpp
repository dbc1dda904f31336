#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epidisagg/epicalendar.hpp"
#include "epidisagg/metrics.hpp"
#include "epidisagg/series.hpp"

namespace epidisagg {

/// Descriptive statistics of one metric across units. Infinite entries
/// (KL support mismatch) propagate into mean/std/max; quantiles are taken
/// over the finite values and n_inf discloses how many were infinite.
struct DescriptiveStats {
  double mean = 0;
  double std_dev = 0;
  double min = 0;
  double q25 = 0;
  double median = 0;
  double q75 = 0;
  double max = 0;
  std::size_t count = 0;
  std::size_t n_inf = 0;
};

/// Configuration of one batch run. check() enforces the structural
/// invariants before any file is touched.
struct RunConfig {
  std::string input_path;
  std::string reference_path;  // empty for plain disaggregation runs
  std::string out_path;
  std::vector<MethodKind> methods;
  bool covariate_mode = false;  // propagate instead of conserving
  int threads = 1;

  void check() const;
};

struct UnitNote {
  std::string unit_id;
  std::string reason;
};

struct ValidationResult {
  std::vector<MetricsRecord> records;
  std::vector<UnitNote> skipped;   // units that produced no records
  std::vector<UnitNote> warnings;  // units with partial results (e.g. no r2)
};

/// Disaggregate every referenced unit with every method and score it
/// against the weekly reference. Units are processed independently (and in
/// parallel when threads > 1); output order does not depend on threads.
ValidationResult run_validation(std::span<const MonthlySeries> monthly,
                                std::span<const WeeklySeries> reference,
                                const MonthWeekMap& map,
                                std::span<const MethodKind> methods,
                                int threads = 1);

/// Metric column names accepted by aggregate_stats, in report order.
std::span<const std::string_view> metric_names();

DescriptiveStats aggregate_stats(std::span<const MetricsRecord> records,
                                 std::string_view metric, Method method);

struct SummaryRow {
  std::string metric;
  Method method = Method::linear;
  DescriptiveStats stats;
};

/// One SummaryRow per metric x method with at least one value.
std::vector<SummaryRow> summarize(std::span<const MetricsRecord> records,
                                  std::span<const MethodKind> methods);

/// Write metrics_by_unit.csv and summary_stats.csv under outdir.
void emit_reports(std::span<const MetricsRecord> records,
                  std::span<const SummaryRow> summary,
                  const std::filesystem::path& outdir);

struct StateGroup {
  std::string code;
  std::string name;
  std::vector<std::string> unit_ids;
};

struct DatasetPackage {
  std::vector<StateGroup> states;
  std::vector<WeeklySeries> target;
  // covariate name -> per-unit weekly series (propagated, not conserved)
  std::vector<std::pair<std::string, std::vector<WeeklySeries>>> covariates;
};

/// Write the published dataset layout under outdir: README.md, LICENSE,
/// data/Dengue by state {code} - {name}/, target/, features/*_cubic.csv.
void emit_dataset_package(const DatasetPackage& pkg,
                          const std::filesystem::path& outdir);

}  // namespace epidisagg
