#include "epidisagg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace epidisagg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("metric: empty input");
  if (x.size() != y.size())
    throw std::invalid_argument("metric: length mismatch");
}

void check_same_grid(const DensityEstimate& p, const DensityEstimate& q) {
  if (p.grid.size() != q.grid.size() || p.grid != q.grid)
    throw std::invalid_argument("divergence: density grids differ");
  if (p.mass.size() != p.grid.size() || q.mass.size() != q.grid.size())
    throw std::invalid_argument("divergence: malformed density");
}

// KL(p || m) over raw mass vectors with 0 * ln(0/m) = 0.
double kl_raw(const std::vector<double>& p, const std::vector<double>& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) return kInf;
      acc += p[i] * std::log(p[i] / q[i]);
    }
  }
  return std::max(acc, 0.0);  // guard against rounding below zero
}

}  // namespace

double mae(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
  return acc / static_cast<double>(x.size());
}

double rmse(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(x.size()));
}

std::optional<double> r_squared(std::span<const double> pred,
                                std::span<const double> obs) {
  check_pair(pred, obs);
  if (obs.size() < 2)
    throw std::invalid_argument("r_squared: need at least two points");
  double mean = 0.0;
  for (double v : obs) mean += v;
  mean /= static_cast<double>(obs.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double r = obs[i] - pred[i];
    const double t = obs[i] - mean;
    ss_res += r * r;
    ss_tot += t * t;
  }
  if (ss_tot == 0.0) return std::nullopt;
  return 1.0 - ss_res / ss_tot;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("quantile: q outside [0, 1]");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double silverman_bandwidth(std::span<const double> sample) {
  if (sample.empty())
    throw std::invalid_argument("bandwidth: empty sample");
  const std::size_t n = sample.size();
  double mean = 0.0;
  for (double v : sample) {
    if (!std::isfinite(v))
      throw std::invalid_argument("bandwidth: non-finite sample");
    mean += v;
  }
  mean /= static_cast<double>(n);
  double sd = 0.0;
  if (n > 1) {
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr =
      quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double b = 1.06 * std::min(sd, iqr / 1.34) *
                   std::pow(static_cast<double>(n), -0.2);
  return std::max(b, 0.1);
}

double kl_divergence(const DensityEstimate& p, const DensityEstimate& q) {
  check_same_grid(p, q);
  return kl_raw(p.mass, q.mass);
}

double jsd(const DensityEstimate& p, const DensityEstimate& q) {
  check_same_grid(p, q);
  std::vector<double> m(p.mass.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = 0.5 * (p.mass[i] + q.mass[i]);
  const double v = 0.5 * (kl_raw(p.mass, m) + kl_raw(q.mass, m));
  return std::clamp(v, 0.0, std::numbers::ln2);
}

DtwResult dtw(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("dtw: empty input");
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());

  // Anti-diagonal sweep: cells of one diagonal are independent, so the
  // inner loop carries no dependency. A holds diagonal k-2, B holds k-1,
  // indexed by i with cell (i, k-i). Later diagonals only ever read one
  // slot past the written range, so padding those two slots with infinity
  // replaces a full clear.
  std::vector<double> a(n + 1, kInf), b(n + 1, kInf), c(n + 1, kInf);
  a[0] = 0.0;
  const double* xv = x.data();
  const double* yv = y.data();
  for (int k = 2; k <= n + m; ++k) {
    const int ilo = std::max(1, k - m);
    const int ihi = std::min(n, k - 1);
    c[ilo - 1] = kInf;
    if (ihi < n) c[ihi + 1] = kInf;
    for (int i = ilo; i <= ihi; ++i) {
      const double d = std::abs(xv[i - 1] - yv[k - i - 1]);
      c[i] = d + std::min(std::min(b[i - 1], b[i]), a[i - 1]);
    }
    std::swap(a, b);
    std::swap(b, c);
  }
  const double raw = b[n];
  return DtwResult{raw, raw / static_cast<double>(n + m)};
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("ks: empty input");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    double v;
    if (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j]))
      v = xs[i];
    else
      v = ys[j];
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n -
                             static_cast<double>(j) / m));
  }

  double p = 1.0;
  if (d > 0.0) {
    const double lambda = d * std::sqrt(n * m / (n + m));
    double acc = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term =
          sign * std::exp(-2.0 * static_cast<double>(k) *
                          static_cast<double>(k) * lambda * lambda);
      acc += term;
      if (std::abs(term) < 1e-18) break;
      sign = -sign;
    }
    p = 2.0 * acc;
  }
  p = std::min(p, 1.0);
  p = std::max(p, std::numeric_limits<double>::min());
  return KsResult{d, p};
}

MetricsRecord evaluate_series(std::string unit_id, const MethodKind& method,
                              std::span<const double> pred,
                              std::span<const double> obs) {
  check_pair(pred, obs);
  if (obs.size() < 2)
    throw std::invalid_argument("evaluate: need at least two weeks");

  MetricsRecord rec;
  rec.unit_id = std::move(unit_id);
  rec.method = method;
  rec.mae = mae(pred, obs);
  rec.rmse = rmse(pred, obs);
  rec.r2 = r_squared(pred, obs);

  const double bandwidth = silverman_bandwidth(obs);
  const auto grid = kde_grid(pred, obs, bandwidth);
  const DensityEstimate recon_density = kde_pdf(pred, bandwidth, grid);
  const DensityEstimate obs_density = kde_pdf(obs, bandwidth, grid);
  rec.kl = kl_divergence(obs_density, recon_density);
  rec.jsd = jsd(obs_density, recon_density);

  const DtwResult dt = dtw(pred, obs);
  rec.dtw = dt.raw;
  rec.dtw_norm = dt.normalized;

  const KsResult ks = ks_two_sample(pred, obs);
  rec.ks_d = ks.d;
  rec.ks_p = ks.p;
  return rec;
}

}  // namespace epidisagg
