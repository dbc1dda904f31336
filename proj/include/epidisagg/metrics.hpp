#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epidisagg/series.hpp"

namespace epidisagg {

double mae(std::span<const double> x, std::span<const double> y);
double rmse(std::span<const double> x, std::span<const double> y);

/// Coefficient of determination of pred against obs. Undefined (nullopt)
/// when the observed series has zero variance.
std::optional<double> r_squared(std::span<const double> pred,
                                std::span<const double> obs);

/// Quantile with linear interpolation between order statistics.
/// `sorted` must be ascending and non-empty; q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

/// Silverman's rule-of-thumb KDE bandwidth with a floor of 0.1:
/// max(1.06 * min(sd, IQR/1.34) * n^(-1/5), 0.1).
double silverman_bandwidth(std::span<const double> sample);

/// Discrete probability mass on a fixed grid (normalized to sum 1).
struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> mass;
};

/// Uniform evaluation grid covering both samples plus 3 bandwidths of
/// kernel tail on each side.
std::vector<double> kde_grid(std::span<const double> x,
                             std::span<const double> y, double bandwidth,
                             std::size_t n_points = 512);

/// Gaussian-kernel density evaluated on the grid and normalized to a
/// discrete distribution.
DensityEstimate kde_pdf(std::span<const double> sample, double bandwidth,
                        std::span<const double> grid);

/// Kullback-Leibler divergence KL(p || q); +infinity where q lacks support
/// that p has. Requires identical grids.
double kl_divergence(const DensityEstimate& p, const DensityEstimate& q);

/// Jensen-Shannon divergence; always finite, in [0, ln 2], symmetric.
double jsd(const DensityEstimate& p, const DensityEstimate& q);

struct DtwResult {
  double raw = 0;
  double normalized = 0;  // raw / (len x + len y)
};

/// Dynamic time warping with |x_i - y_j| local cost and unit steps.
DtwResult dtw(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double d = 0;
  double p = 1;
};

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value
/// Q(lambda) = 2 sum_k (-1)^(k-1) exp(-2 k^2 lambda^2), clamped to (0, 1].
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// One full evaluation row for a reconstructed weekly series against an
/// observed reference.
struct MetricsRecord {
  std::string unit_id;
  MethodKind method;
  double mae = 0;
  double rmse = 0;
  std::optional<double> r2;
  double kl = 0;
  double jsd = 0;
  double dtw = 0;
  double dtw_norm = 0;
  double ks_d = 0;
  double ks_p = 1;
};

/// Compute every metric for one unit/method pair. The KDE bandwidth is
/// taken from the observed series alone, and KL is oriented as
/// KL(observed || reconstructed) so missing reconstructed support shows up
/// as +infinity.
MetricsRecord evaluate_series(std::string unit_id, const MethodKind& method,
                              std::span<const double> pred,
                              std::span<const double> obs);

}  // namespace epidisagg
