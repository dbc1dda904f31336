#include "epidisagg/disagg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "epidisagg/rng.hpp"

namespace epidisagg {

namespace {

// Consecutive map entries covering the months of a series.
std::span<const MonthWeekMap::Entry> month_slice(const MonthlySeries& m,
                                                 const MonthWeekMap& map) {
  if (m.values.empty())
    throw std::invalid_argument("series '" + m.unit_id + "' is empty");
  const auto idx = map.entry_index(m.start);
  if (!idx || *idx + m.values.size() > map.entries().size())
    throw std::invalid_argument(
        "series '" + m.unit_id + "' starting " + to_string(m.start) + " (" +
        std::to_string(m.values.size()) +
        " months) is not covered by the calendar map");
  return std::span(map.entries()).subspan(*idx, m.values.size());
}

void check_additive_values(const MonthlySeries& m) {
  for (double v : m.values)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("series '" + m.unit_id +
                                  "' has a negative or non-finite value");
}

// Shared uniform-baseline path; rng == nullptr is the noiseless (linear)
// case and performs bit-identical arithmetic to jitter with noise_frac 0.
WeeklySeries disagg_uniform(const MonthlySeries& m, const MonthWeekMap& map,
                            Rng* rng, double noise_frac) {
  const auto months = month_slice(m, map);
  check_additive_values(m);

  WeeklySeries out{m.unit_id, months.front().weeks.front(), {}};
  std::vector<double> base;
  for (std::size_t i = 0; i < months.size(); ++i) {
    const double total = m.values[i];
    const std::size_t n = months[i].weeks.size();
    const double mean = total / static_cast<double>(n);
    const double sigma = noise_frac * mean;
    base.assign(n, mean);
    if (rng)
      for (double& v : base) v = std::max(0.0, v + sigma * rng->normal());
    const auto fixed = renormalize_month(base, total);
    out.values.insert(out.values.end(), fixed.begin(), fixed.end());
  }
  return out;
}

}  // namespace

std::vector<double> renormalize_month(std::span<const double> base,
                                      double total) {
  if (base.empty()) throw std::invalid_argument("renormalize: empty month");
  if (!std::isfinite(total) || total < 0.0)
    throw std::invalid_argument("renormalize: negative or non-finite total");
  double sum = 0.0;
  for (double b : base) {
    if (!std::isfinite(b) || b < 0.0)
      throw std::invalid_argument("renormalize: negative or non-finite base");
    sum += b;
  }

  std::vector<double> out(base.size());
  if (total == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
  } else if (sum == 0.0) {
    std::fill(out.begin(), out.end(),
              total / static_cast<double>(base.size()));
  } else {
    const double phi = total / sum;
    for (std::size_t j = 0; j < base.size(); ++j) out[j] = base[j] * phi;
  }
  return out;
}

WeeklySeries disaggregate_linear(const MonthlySeries& m,
                                 const MonthWeekMap& map) {
  return disagg_uniform(m, map, nullptr, 0.0);
}

WeeklySeries disaggregate_jitter(const MonthlySeries& m,
                                 const MonthWeekMap& map, std::uint64_t seed,
                                 double noise_frac) {
  if (!std::isfinite(noise_frac) || noise_frac < 0.0)
    throw std::invalid_argument("jitter: noise_frac must be >= 0");
  Rng rng(seed);
  return disagg_uniform(m, map, &rng, noise_frac);
}

SplineFit disagg_spline_fit(const MonthlySeries& m, const MonthWeekMap& map) {
  const auto months = month_slice(m, map);
  check_additive_values(m);
  if (m.values.size() < 2)
    throw std::invalid_argument("spline disaggregation for '" + m.unit_id +
                                "' needs at least two months");

  // Knots at month centers in series-local week coordinates, plus the first
  // value duplicated one month-width before the start to stabilize the
  // left boundary.
  const std::size_t base_offset = months.front().offset;
  std::vector<double> kx(m.values.size() + 1), ky(m.values.size() + 1);
  for (std::size_t i = 0; i < months.size(); ++i) {
    const double offset =
        static_cast<double>(months[i].offset - base_offset);
    const double n = static_cast<double>(months[i].weeks.size());
    kx[i + 1] = offset + (n - 1.0) / 2.0;
    ky[i + 1] = m.values[i];
  }
  kx[0] = kx[1] - static_cast<double>(months.front().weeks.size());
  ky[0] = m.values.front();
  return fit_cubic_spline(kx, ky);
}

WeeklySeries disaggregate_spline(const MonthlySeries& m,
                                 const MonthWeekMap& map) {
  const SplineFit fit = disagg_spline_fit(m, map);
  const auto months = month_slice(m, map);

  WeeklySeries out{m.unit_id, months.front().weeks.front(), {}};
  std::vector<double> base;
  std::size_t week = 0;
  for (std::size_t i = 0; i < months.size(); ++i) {
    const std::size_t n = months[i].weeks.size();
    base.resize(n);
    for (std::size_t j = 0; j < n; ++j, ++week)
      base[j] = std::max(0.0, fit.eval(static_cast<double>(week)));
    const auto fixed = renormalize_month(base, m.values[i]);
    out.values.insert(out.values.end(), fixed.begin(), fixed.end());
  }
  return out;
}

WeeklySeries propagate_covariate(const MonthlySeries& m,
                                 const MonthWeekMap& map) {
  const auto months = month_slice(m, map);
  for (double v : m.values)
    if (!std::isfinite(v))
      throw std::invalid_argument("series '" + m.unit_id +
                                  "' has a non-finite value");

  WeeklySeries out{m.unit_id, months.front().weeks.front(), {}};
  for (std::size_t i = 0; i < months.size(); ++i)
    out.values.insert(out.values.end(), months[i].weeks.size(), m.values[i]);
  return out;
}

WeeklySeries disaggregate(const MonthlySeries& m, const MonthWeekMap& map,
                          const MethodKind& method) {
  switch (method.kind) {
    case Method::linear:
      return disaggregate_linear(m, map);
    case Method::jitter:
      return disaggregate_jitter(m, map, method.seed, method.noise_frac);
    case Method::spline:
      return disaggregate_spline(m, map);
  }
  throw std::invalid_argument("unknown method");
}

double compute_rate(double hospitalizations, double population) {
  if (!std::isfinite(population) || population <= 0.0)
    throw std::invalid_argument("rate: population must be positive");
  if (!std::isfinite(hospitalizations) || hospitalizations < 0.0)
    throw std::invalid_argument("rate: hospitalizations must be >= 0");
  return hospitalizations / population;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::linear:
      return "linear";
    case Method::jitter:
      return "jitter";
    case Method::spline:
      return "spline";
  }
  return "unknown";
}

std::optional<Method> method_from_name(std::string_view name) {
  if (name == "linear") return Method::linear;
  if (name == "jitter") return Method::jitter;
  if (name == "spline") return Method::spline;
  return std::nullopt;
}

}  // namespace epidisagg
