// epidisagg - monthly-to-weekly epidemiological time-series toolkit.
//
// Subcommands:
//   disagg    reconstruct weekly series from a monthly CSV
//   validate  score reconstructions against a weekly reference
//   bench     validate on a seeded synthetic corpus
//   package   write the DengueDataset directory layout
//   calendar  print the month -> epi-week partition of a year

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "epidisagg/csv.hpp"
#include "epidisagg/disagg.hpp"
#include "epidisagg/harness.hpp"
#include "epidisagg/pipeline.hpp"

namespace {

using namespace epidisagg;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

// Calendar map spanning all months of the given series.
MonthWeekMap map_for(const std::vector<MonthlySeries>& monthly) {
  if (monthly.empty())
    throw std::invalid_argument("input contains no series");
  int lo = monthly.front().start.year;
  int hi = lo;
  for (const MonthlySeries& m : monthly) {
    lo = std::min(lo, m.start.year);
    hi = std::max(hi,
                  month_add(m.start, static_cast<int>(m.values.size()) - 1)
                      .year);
  }
  return MonthWeekMap::build(lo, hi);
}

std::vector<MethodKind> parse_methods(const std::vector<std::string>& names,
                                      std::uint64_t seed, double noise_frac) {
  std::vector<MethodKind> methods;
  for (const std::string& n : names) {
    const auto m = method_from_name(n);
    if (!m) throw std::invalid_argument("unknown method '" + n + "'");
    MethodKind kind{*m, 0, 0.0};
    if (*m == Method::jitter) kind = MethodKind::make_jitter(seed, noise_frac);
    methods.push_back(kind);
  }
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  return methods;
}

int cmd_disagg(const std::string& input, const std::string& method_name_arg,
               std::uint64_t seed, double noise_frac, bool covariate,
               const std::string& out) {
  RunConfig cfg;
  cfg.input_path = input;
  cfg.out_path = out;
  cfg.covariate_mode = covariate;
  if (!covariate) cfg.methods = parse_methods({method_name_arg}, seed, noise_frac);
  cfg.check();

  const auto monthly = load_monthly_csv(cfg.input_path, cfg.covariate_mode);
  const MonthWeekMap map = map_for(monthly);

  std::vector<WeeklySeries> weekly;
  weekly.reserve(monthly.size());
  for (const MonthlySeries& m : monthly)
    weekly.push_back(cfg.covariate_mode
                         ? propagate_covariate(m, map)
                         : disaggregate(m, map, cfg.methods.front()));
  write_weekly_csv(cfg.out_path, weekly);
  std::cout << "wrote " << cfg.out_path << " (" << weekly.size()
            << " units)\n";
  return 0;
}

int report_validation(const ValidationResult& result,
                      const std::vector<MethodKind>& methods,
                      const std::string& out) {
  for (const UnitNote& w : result.warnings)
    std::cerr << "warning: unit '" << w.unit_id << "': " << w.reason << "\n";
  for (const UnitNote& s : result.skipped)
    std::cerr << "skipped unit '" << s.unit_id << "': " << s.reason << "\n";
  if (result.records.empty()) {
    std::cerr << "error: no unit produced metrics\n";
    return kExitValidation;
  }
  const auto summary = summarize(result.records, methods);
  emit_reports(result.records, summary, out);
  std::cout << "wrote " << out << "/metrics_by_unit.csv and " << out
            << "/summary_stats.csv (" << result.records.size()
            << " records)\n";
  return 0;
}

int cmd_validate(const std::string& input, const std::string& reference,
                 const std::vector<std::string>& method_names,
                 std::uint64_t seed, double noise_frac, int threads,
                 const std::string& out) {
  RunConfig cfg;
  cfg.input_path = input;
  cfg.reference_path = reference;
  cfg.out_path = out;
  cfg.methods = parse_methods(method_names, seed, noise_frac);
  cfg.threads = threads;
  cfg.check();

  const auto monthly = load_monthly_csv(cfg.input_path);
  const auto ref = load_weekly_csv(cfg.reference_path);
  const MonthWeekMap map = map_for(monthly);
  const auto result =
      run_validation(monthly, ref, map, cfg.methods, cfg.threads);
  return report_validation(result, cfg.methods, cfg.out_path);
}

int cmd_bench(const std::string& corpus, int n, std::uint64_t seed,
              int first_year, int last_year, int threads,
              const std::string& out) {
  BenchConfig cfg;
  if (corpus == "smooth")
    cfg.corpus = Corpus::smooth;
  else if (corpus == "sparse")
    cfg.corpus = Corpus::sparse;
  else
    throw std::invalid_argument("corpus must be 'smooth' or 'sparse'");
  cfg.n_units = n;
  cfg.seed = seed;
  cfg.first_year = first_year;
  cfg.last_year = last_year;

  const MonthWeekMap map = MonthWeekMap::build(cfg.first_year, cfg.last_year);
  const std::vector<MethodKind> methods = {
      MethodKind::make_linear(), MethodKind::make_jitter(seed),
      MethodKind::make_spline()};
  const auto result = run_bench(cfg, map, methods, threads);
  return report_validation(result, methods, out);
}

int cmd_package(const std::string& target_path, const std::string& features,
                const std::string& states_path, const std::string& out) {
  DatasetPackage pkg;
  pkg.target = load_weekly_csv(target_path);

  if (!features.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(features))
      if (e.is_regular_file() && e.path().extension() == ".csv")
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      pkg.covariates.emplace_back(f.stem().string(),
                                  load_weekly_csv(f, true));
  }

  if (!states_path.empty()) {
    // unit_id,state_code,state_name rows; units grouped in file order.
    std::ifstream in(states_path);
    if (!in) throw ParseError(states_path, "cannot open file");
    std::string line;
    std::getline(in, line);
    if (line != "unit_id,state_code,state_name")
      throw ParseError(states_path, 1,
                       "expected header 'unit_id,state_code,state_name'");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError(states_path, "expected 3 fields: " + line);
      const std::string unit = line.substr(0, c1);
      const std::string code = line.substr(c1 + 1, c2 - c1 - 1);
      const std::string name = line.substr(c2 + 1);
      auto it = std::find_if(pkg.states.begin(), pkg.states.end(),
                             [&](const StateGroup& s) {
                               return s.code == code && s.name == name;
                             });
      if (it == pkg.states.end()) {
        pkg.states.push_back(StateGroup{code, name, {}});
        it = pkg.states.end() - 1;
      }
      it->unit_ids.push_back(unit);
    }
  } else {
    StateGroup all{"00", "All", {}};
    for (const WeeklySeries& s : pkg.target) all.unit_ids.push_back(s.unit_id);
    pkg.states.push_back(std::move(all));
  }

  emit_dataset_package(pkg, out);
  std::cout << "wrote dataset package under " << out << "\n";
  return 0;
}

int cmd_calendar(int year) {
  const MonthWeekMap map = MonthWeekMap::build(year, year);
  std::cout << "epi-year " << year << ": " << weeks_in_epiyear(year)
            << " weeks\n";
  for (const auto& entry : map.entries()) {
    std::cout << to_string(entry.month) << " (" << entry.weeks.size()
              << " weeks):";
    for (const EpiWeekId& w : entry.weeks) std::cout << ' ' << to_string(w);
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monthly-to-weekly epidemiological series toolkit"};
  app.require_subcommand(1);

  std::string input, reference, out, method = "spline", corpus = "smooth";
  std::string target_path, features, states_path;
  std::vector<std::string> methods = {"linear", "jitter", "spline"};
  std::uint64_t seed = 42;
  double noise_frac = 0.05;
  bool covariate = false;
  int threads = 1, n_units = 100, year = 2024;
  int first_year = 2015, last_year = 2016;

  CLI::App* disagg = app.add_subcommand("disagg", "reconstruct weekly series");
  disagg->add_option("--input", input, "monthly CSV")->required();
  disagg->add_option("--method", method, "linear|jitter|spline");
  disagg->add_option("--seed", seed, "jitter seed");
  disagg->add_option("--noise-frac", noise_frac, "jitter noise fraction");
  disagg->add_flag("--covariate", covariate,
                   "propagate values instead of conserving sums");
  disagg->add_option("--out", out, "output weekly CSV")->required();

  CLI::App* validate =
      app.add_subcommand("validate", "score methods against a reference");
  validate->add_option("--input", input, "monthly CSV")->required();
  validate->add_option("--reference", reference, "weekly reference CSV")
      ->required();
  validate->add_option("--methods", methods, "methods to run")
      ->delimiter(',');
  validate->add_option("--seed", seed, "jitter seed");
  validate->add_option("--noise-frac", noise_frac, "jitter noise fraction");
  validate->add_option("--threads", threads, "parallel unit workers");
  validate->add_option("--out", out, "report directory")->required();

  CLI::App* bench =
      app.add_subcommand("bench", "validate on a synthetic corpus");
  bench->add_option("--corpus", corpus, "smooth|sparse");
  bench->add_option("--n", n_units, "number of units");
  bench->add_option("--seed", seed, "corpus seed");
  bench->add_option("--first-year", first_year, "first calendar year");
  bench->add_option("--last-year", last_year, "last calendar year");
  bench->add_option("--threads", threads, "parallel unit workers");
  bench->add_option("--out", out, "report directory")->required();

  CLI::App* package =
      app.add_subcommand("package", "write the dataset package tree");
  package->add_option("--target", target_path, "weekly target CSV")
      ->required();
  package->add_option("--features", features,
                      "directory of weekly covariate CSVs");
  package->add_option("--states", states_path,
                      "unit_id,state_code,state_name CSV");
  package->add_option("--out", out, "package root directory")->required();

  CLI::App* calendar =
      app.add_subcommand("calendar", "print the month/week partition");
  calendar->add_option("--year", year, "calendar year")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (disagg->parsed())
      return cmd_disagg(input, method, seed, noise_frac, covariate, out);
    if (validate->parsed())
      return cmd_validate(input, reference, methods, seed, noise_frac,
                          threads, out);
    if (bench->parsed())
      return cmd_bench(corpus, n_units, seed, first_year, last_year, threads,
                       out);
    if (package->parsed())
      return cmd_package(target_path, features, states_path, out);
    if (calendar->parsed()) return cmd_calendar(year);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
