#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epidisagg/epicalendar.hpp"
#include "epidisagg/series.hpp"
#include "epidisagg/spline.hpp"

namespace epidisagg {

/// Scale one month's weekly baseline so it sums to the monthly total.
/// total == 0 yields zeros; a zero baseline under a positive total falls
/// back to a uniform split. Negative inputs are rejected.
std::vector<double> renormalize_month(std::span<const double> base,
                                      double total);

/// Uniform split of each monthly total across its epi-weeks.
WeeklySeries disaggregate_linear(const MonthlySeries& m,
                                 const MonthWeekMap& map);

/// Uniform split plus seeded Gaussian noise with standard deviation
/// noise_frac times the month's mean weekly value; negatives are clipped
/// to zero before the conservation step. noise_frac == 0 reproduces the
/// linear method exactly.
WeeklySeries disaggregate_jitter(const MonthlySeries& m,
                                 const MonthWeekMap& map, std::uint64_t seed,
                                 double noise_frac = 0.05);

/// Cubic-spline reconstruction: knots at month centers on the week axis
/// (the first monthly value duplicated one month before the start), sampled
/// at integer week indices, clipped at zero, then renormalized per month.
WeeklySeries disaggregate_spline(const MonthlySeries& m,
                                 const MonthWeekMap& map);

/// The spline underlying disaggregate_spline, in series-local week
/// coordinates (week 0 = first week of the first month).
SplineFit disagg_spline_fit(const MonthlySeries& m, const MonthWeekMap& map);

/// Copy each monthly value to all of its epi-weeks. No conservation: meant
/// for non-additive covariates.
WeeklySeries propagate_covariate(const MonthlySeries& m,
                                 const MonthWeekMap& map);

/// Dispatch on MethodKind.
WeeklySeries disaggregate(const MonthlySeries& m, const MonthWeekMap& map,
                          const MethodKind& method);

/// Hospitalization rate: cases over population.
double compute_rate(double hospitalizations, double population);

}  // namespace epidisagg
