#include "epidisagg/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "epidisagg/csv.hpp"
#include "epidisagg/disagg.hpp"
#include "epidisagg/rng.hpp"

namespace epidisagg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

// Jitter seeds are decorrelated across units by mixing the unit id into
// the configured seed; the stream stays a pure function of (config, unit).
MethodKind per_unit_method(const MethodKind& m, const std::string& unit_id) {
  MethodKind out = m;
  if (m.kind == Method::jitter) out.seed = mix_seed(m.seed, fnv1a(unit_id));
  return out;
}

struct UnitOutcome {
  std::vector<MetricsRecord> records;
  std::vector<UnitNote> skipped;
  std::vector<UnitNote> warnings;
};

UnitOutcome validate_unit(const MonthlySeries* monthly,
                          const WeeklySeries& ref, const MonthWeekMap& map,
                          std::span<const MethodKind> methods) {
  UnitOutcome out;
  if (!monthly) {
    out.skipped.push_back({ref.unit_id, "no monthly input series"});
    return out;
  }
  if (ref.values.size() < 2) {
    out.skipped.push_back({ref.unit_id, "reference shorter than two weeks"});
    return out;
  }
  const auto ref_idx = map.week_index(ref.start);
  if (!ref_idx) {
    out.skipped.push_back(
        {ref.unit_id, "reference start " + to_string(ref.start) +
                          " outside the calendar map"});
    return out;
  }

  bool warned_constant = false;
  for (const MethodKind& method : methods) {
    WeeklySeries weekly;
    try {
      weekly = disaggregate(*monthly, map,
                            per_unit_method(method, monthly->unit_id));
    } catch (const std::invalid_argument& e) {
      // A unit either yields one record per method or is skipped whole.
      out.records.clear();
      out.warnings.clear();
      out.skipped.push_back({ref.unit_id, e.what()});
      return out;
    }
    const auto out_idx = map.week_index(weekly.start);
    const long long rel = static_cast<long long>(*ref_idx) -
                          static_cast<long long>(*out_idx);
    if (rel < 0 ||
        rel + static_cast<long long>(ref.values.size()) >
            static_cast<long long>(weekly.values.size())) {
      out.records.clear();
      out.warnings.clear();
      out.skipped.push_back(
          {ref.unit_id, "reference weeks not covered by monthly span"});
      return out;
    }
    const std::span<const double> pred(
        weekly.values.data() + rel, ref.values.size());
    MetricsRecord rec =
        evaluate_series(ref.unit_id, method, pred, ref.values);
    if (!rec.r2 && !warned_constant) {
      out.warnings.push_back(
          {ref.unit_id, "constant reference; r2 undefined"});
      warned_constant = true;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << text;
  if (!out) throw ParseError(path, "write failed");
}

std::string metric_field(const MetricsRecord& r, std::string_view metric,
                         bool* present) {
  *present = true;
  if (metric == "mae") return format_double(r.mae);
  if (metric == "rmse") return format_double(r.rmse);
  if (metric == "r2") {
    if (!r.r2) {
      *present = false;
      return "";
    }
    return format_double(*r.r2);
  }
  if (metric == "kl") return format_double(r.kl);
  if (metric == "jsd") return format_double(r.jsd);
  if (metric == "dtw") return format_double(r.dtw);
  if (metric == "dtw_norm") return format_double(r.dtw_norm);
  if (metric == "ks_d") return format_double(r.ks_d);
  if (metric == "ks_p") return format_double(r.ks_p);
  throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

double metric_value(const MetricsRecord& r, std::string_view metric,
                    bool* present) {
  *present = true;
  if (metric == "mae") return r.mae;
  if (metric == "rmse") return r.rmse;
  if (metric == "r2") {
    if (r.r2) return *r.r2;
    *present = false;
    return 0.0;
  }
  if (metric == "kl") return r.kl;
  if (metric == "jsd") return r.jsd;
  if (metric == "dtw") return r.dtw;
  if (metric == "dtw_norm") return r.dtw_norm;
  if (metric == "ks_d") return r.ks_d;
  if (metric == "ks_p") return r.ks_p;
  throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

std::filesystem::path ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ParseError(dir, "cannot create directory: " + ec.message());
  return dir;
}

std::string state_dir_name(const StateGroup& s) {
  return "Dengue by state " + s.code + " - " + s.name;
}

}  // namespace

void RunConfig::check() const {
  if (input_path.empty() || out_path.empty())
    throw std::invalid_argument("run config: input and output paths required");
  if (methods.empty() && !covariate_mode)
    throw std::invalid_argument("run config: no methods selected");
  for (const MethodKind& m : methods)
    if (!(m.noise_frac >= 0.0))
      throw std::invalid_argument("run config: noise_frac must be >= 0");
}

ValidationResult run_validation(std::span<const MonthlySeries> monthly,
                                std::span<const WeeklySeries> reference,
                                const MonthWeekMap& map,
                                std::span<const MethodKind> methods,
                                int threads) {
  if (methods.empty())
    throw std::invalid_argument("run_validation: no methods selected");
  if (threads < 1) threads = 1;

  std::map<std::string_view, const MonthlySeries*> by_unit;
  for (const MonthlySeries& m : monthly) by_unit[m.unit_id] = &m;

  std::vector<UnitOutcome> outcomes(reference.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < reference.size(); i += stride) {
      const auto it = by_unit.find(reference[i].unit_id);
      outcomes[i] =
          validate_unit(it == by_unit.end() ? nullptr : it->second,
                        reference[i], map, methods);
    }
  };
  if (threads == 1 || reference.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    const std::size_t n = std::min<std::size_t>(
        static_cast<std::size_t>(threads), reference.size());
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t)
      pool.emplace_back(work, t, n);
    for (std::thread& t : pool) t.join();
  }

  ValidationResult result;
  for (UnitOutcome& o : outcomes) {
    std::move(o.records.begin(), o.records.end(),
              std::back_inserter(result.records));
    std::move(o.skipped.begin(), o.skipped.end(),
              std::back_inserter(result.skipped));
    std::move(o.warnings.begin(), o.warnings.end(),
              std::back_inserter(result.warnings));
  }
  // Monthly units without a reference are reported, mirroring the skipped
  // list of the paired comparison.
  std::set<std::string_view> referenced;
  for (const WeeklySeries& r : reference) referenced.insert(r.unit_id);
  for (const MonthlySeries& m : monthly)
    if (!referenced.contains(m.unit_id))
      result.skipped.push_back({m.unit_id, "no weekly reference series"});
  return result;
}

std::span<const std::string_view> metric_names() {
  static constexpr std::array<std::string_view, 9> kNames = {
      "mae", "rmse", "r2",   "kl",   "jsd",
      "dtw", "dtw_norm", "ks_d", "ks_p"};
  return kNames;
}

DescriptiveStats aggregate_stats(std::span<const MetricsRecord> records,
                                 std::string_view metric, Method method) {
  std::vector<double> values;
  for (const MetricsRecord& r : records) {
    if (r.method.kind != method) continue;
    bool present = true;
    const double v = metric_value(r, metric, &present);
    if (present) values.push_back(v);
  }
  if (values.empty())
    throw std::invalid_argument("aggregate_stats: no values for metric '" +
                                std::string(metric) + "'");

  DescriptiveStats s;
  s.count = values.size();
  std::vector<double> finite;
  finite.reserve(values.size());
  for (double v : values) {
    if (std::isinf(v))
      ++s.n_inf;
    else
      finite.push_back(v);
  }
  std::sort(finite.begin(), finite.end());

  if (s.n_inf > 0) {
    s.mean = kInf;
    s.std_dev = kInf;
    s.max = kInf;
  } else {
    double mean = 0.0;
    for (double v : finite) mean += v;
    mean /= static_cast<double>(finite.size());
    double ss = 0.0;
    for (double v : finite) ss += (v - mean) * (v - mean);
    s.mean = mean;
    s.std_dev = finite.size() > 1
                    ? std::sqrt(ss / static_cast<double>(finite.size() - 1))
                    : 0.0;
    s.max = finite.back();
  }
  if (finite.empty()) {
    s.min = kInf;
    s.q25 = kInf;
    s.median = kInf;
    s.q75 = kInf;
  } else {
    s.min = finite.front();
    s.q25 = quantile_sorted(finite, 0.25);
    s.median = quantile_sorted(finite, 0.50);
    s.q75 = quantile_sorted(finite, 0.75);
  }
  return s;
}

std::vector<SummaryRow> summarize(std::span<const MetricsRecord> records,
                                  std::span<const MethodKind> methods) {
  std::vector<Method> kinds;
  for (const MethodKind& m : methods)
    if (std::find(kinds.begin(), kinds.end(), m.kind) == kinds.end())
      kinds.push_back(m.kind);

  std::vector<SummaryRow> rows;
  for (const std::string_view metric : metric_names())
    for (const Method kind : kinds) {
      try {
        rows.push_back(SummaryRow{std::string(metric), kind,
                                  aggregate_stats(records, metric, kind)});
      } catch (const std::invalid_argument&) {
        // no values for this pair (e.g. r2 undefined everywhere); omit row
      }
    }
  return rows;
}

void emit_reports(std::span<const MetricsRecord> records,
                  std::span<const SummaryRow> summary,
                  const std::filesystem::path& outdir) {
  ensure_dir(outdir);

  std::vector<const MetricsRecord*> ordered;
  ordered.reserve(records.size());
  for (const MetricsRecord& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const MetricsRecord* a, const MetricsRecord* b) {
              return std::tie(a->unit_id, a->method.kind) <
                     std::tie(b->unit_id, b->method.kind);
            });

  {
    const auto path = outdir / "metrics_by_unit.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path, "cannot open file for writing");
    out << "unit_id,method,mae,rmse,r2,kl,jsd,dtw,dtw_norm,ks_d,ks_p\n";
    for (const MetricsRecord* r : ordered) {
      out << r->unit_id << ',' << method_name(r->method.kind);
      for (const std::string_view metric : metric_names()) {
        bool present = true;
        out << ',' << metric_field(*r, metric, &present);
      }
      out << '\n';
    }
    if (!out) throw ParseError(path, "write failed");
  }
  {
    const auto path = outdir / "summary_stats.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path, "cannot open file for writing");
    out << "metric,method,mean,std,min,q25,median,q75,max,count,n_inf\n";
    for (const SummaryRow& row : summary) {
      const DescriptiveStats& s = row.stats;
      out << row.metric << ',' << method_name(row.method) << ','
          << format_double(s.mean) << ',' << format_double(s.std_dev) << ','
          << format_double(s.min) << ',' << format_double(s.q25) << ','
          << format_double(s.median) << ',' << format_double(s.q75) << ','
          << format_double(s.max) << ',' << s.count << ',' << s.n_inf
          << '\n';
    }
    if (!out) throw ParseError(path, "write failed");
  }
}

void emit_dataset_package(const DatasetPackage& pkg,
                          const std::filesystem::path& outdir) {
  ensure_dir(outdir);
  ensure_dir(outdir / "data");
  ensure_dir(outdir / "target");
  ensure_dir(outdir / "features");

  std::map<std::string_view, const WeeklySeries*> target_by_unit;
  for (const WeeklySeries& s : pkg.target) target_by_unit[s.unit_id] = &s;

  std::map<std::string_view,
           std::map<std::string_view, const WeeklySeries*>>
      covariate_by_unit;
  for (const auto& [name, series] : pkg.covariates) {
    auto& m = covariate_by_unit[name];
    for (const WeeklySeries& s : series) m[s.unit_id] = &s;
  }

  write_text_file(outdir / "README.md",
                  "# DengueDataset\n"
                  "\n"
                  "Municipal dengue hospitalization rates at epidemiological-"
                  "week resolution,\n"
                  "reconstructed from monthly series with monthly totals "
                  "preserved, plus\n"
                  "weekly-aligned covariates.\n"
                  "\n"
                  "Layout:\n"
                  "- `data/Dengue by state {code} - {name}/weekly.csv`: "
                  "target and covariates per state\n"
                  "- `target/`: target-only series per state\n"
                  "- `features/{Covariate}_cubic.csv`: one file per "
                  "covariate, all units\n"
                  "\n"
                  "All CSV files use `.` as the decimal separator. Weekly "
                  "rows are keyed by\n"
                  "`unit_id,epi_year,epi_week` (Sunday-start weeks).\n");
  write_text_file(outdir / "LICENSE",
                  "Placeholder license. The data publisher sets the final "
                  "dataset license\nbefore distribution.\n");

  for (const StateGroup& state : pkg.states) {
    const auto state_dir = ensure_dir(outdir / "data" / state_dir_name(state));
    const auto data_path = state_dir / "weekly.csv";
    std::ofstream data(data_path, std::ios::binary);
    if (!data) throw ParseError(data_path, "cannot open file for writing");
    data << "unit_id,epi_year,epi_week,target";
    for (const auto& [name, series] : pkg.covariates) data << ',' << name;
    data << '\n';

    std::vector<WeeklySeries> state_target;
    for (const std::string& unit : state.unit_ids) {
      const auto it = target_by_unit.find(unit);
      if (it == target_by_unit.end())
        throw std::invalid_argument("package: missing target series for '" +
                                    unit + "'");
      const WeeklySeries& target = *it->second;
      state_target.push_back(target);

      // column order must follow the header, i.e. pkg.covariates order
      std::vector<const WeeklySeries*> covs;
      for (const auto& [name, series] : pkg.covariates) {
        (void)series;
        const auto& by_unit = covariate_by_unit.at(name);
        const auto cit = by_unit.find(unit);
        if (cit == by_unit.end())
          throw std::invalid_argument("package: covariate '" + name +
                                      "' is missing unit '" + unit + "'");
        if (!(cit->second->start == target.start) ||
            cit->second->values.size() != target.values.size())
          throw std::invalid_argument("package: covariate '" + name +
                                      "' does not align with the target for "
                                      "unit '" +
                                      unit + "'");
        covs.push_back(cit->second);
      }
      EpiWeekId w = target.start;
      for (std::size_t i = 0; i < target.values.size(); ++i) {
        data << unit << ',' << w.epi_year << ',' << w.week << ','
             << format_double(target.values[i]);
        for (const WeeklySeries* cov : covs)
          data << ',' << format_double(cov->values[i]);
        data << '\n';
        w = epiweek_add(w, 1);
      }
    }
    if (!data) throw ParseError(data_path, "write failed");
    write_weekly_csv(outdir / "target" / (state_dir_name(state) + ".csv"),
                     state_target);
  }

  if (pkg.covariates.empty())
    std::cerr << "warning: no covariates supplied; features/ left empty\n";
  for (const auto& [name, series] : pkg.covariates) {
    std::string stem = name;
    constexpr std::string_view kSuffix = "_cubic";
    if (stem.size() > kSuffix.size() && stem.ends_with(kSuffix))
      stem.resize(stem.size() - kSuffix.size());
    write_weekly_csv(outdir / "features" / (stem + "_cubic.csv"), series);
  }
}

}  // namespace epidisagg
