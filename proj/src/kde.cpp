#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epidisagg/metrics.hpp"

namespace epidisagg {

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.size() < 2)
    throw std::invalid_argument("kde: grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]))
      throw std::invalid_argument("kde: non-finite grid point");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("kde: grid not strictly increasing");
  }
}

// Sorted (value, multiplicity) pairs; repeated values share kernel work.
struct WeightedSample {
  std::vector<double> value;
  std::vector<double> weight;
};

WeightedSample dedup(std::span<const double> sample) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  WeightedSample w;
  for (double v : sorted) {
    if (!w.value.empty() && w.value.back() == v)
      w.weight.back() += 1.0;
    else {
      w.value.push_back(v);
      w.weight.push_back(1.0);
    }
  }
  return w;
}

// Kernel sums on a uniform grid. exp(-c (g - x)^2) at consecutive grid
// points differs by a factor that is itself geometric in the step, so each
// sample needs three exp() calls and two multiplies per grid point,
// marching outward from the grid point nearest the sample until the kernel
// underflows.
void accumulate_uniform(const WeightedSample& s, double c, double lo,
                        double step, std::vector<double>& out) {
  const long long last = static_cast<long long>(out.size()) - 1;
  const double ratio_step = std::exp(-2.0 * c * step * step);
  for (std::size_t k = 0; k < s.value.size(); ++k) {
    const double x = s.value[k];
    const double w = s.weight[k];
    long long i0 = std::llround((x - lo) / step);
    i0 = std::clamp<long long>(i0, 0, last);
    const double t0 = (lo + step * static_cast<double>(i0)) - x;

    const double peak = std::exp(-c * t0 * t0);
    out[static_cast<std::size_t>(i0)] += w * peak;

    double e = peak;
    double ratio = std::exp(-c * (2.0 * step * t0 + step * step));
    for (long long i = i0 + 1; i <= last; ++i) {
      e *= ratio;
      ratio *= ratio_step;
      if (e < 1e-320) break;
      out[static_cast<std::size_t>(i)] += w * e;
    }
    e = peak;
    ratio = std::exp(-c * (-2.0 * step * t0 + step * step));
    for (long long i = i0 - 1; i >= 0; --i) {
      e *= ratio;
      ratio *= ratio_step;
      if (e < 1e-320) break;
      out[static_cast<std::size_t>(i)] += w * e;
    }
  }
}

void accumulate_direct(const WeightedSample& s, double c,
                       std::span<const double> grid,
                       std::vector<double>& out) {
  for (std::size_t k = 0; k < s.value.size(); ++k)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i] - s.value[k];
      out[i] += s.weight[k] * std::exp(-c * t * t);
    }
}

}  // namespace

std::vector<double> kde_grid(std::span<const double> x,
                             std::span<const double> y, double bandwidth,
                             std::size_t n_points) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("kde_grid: empty sample");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw std::invalid_argument("kde_grid: bandwidth must be positive");
  if (n_points < 2)
    throw std::invalid_argument("kde_grid: need at least two points");
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const double lo = std::min(*xmin, *ymin) - 3.0 * bandwidth;
  const double hi = std::max(*xmax, *ymax) + 3.0 * bandwidth;
  std::vector<double> grid(n_points);
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i)
    grid[i] = lo + step * static_cast<double>(i);
  return grid;
}

DensityEstimate kde_pdf(std::span<const double> sample, double bandwidth,
                        std::span<const double> grid) {
  if (sample.empty()) throw std::invalid_argument("kde: empty sample");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw std::invalid_argument("kde: bandwidth must be positive");
  check_grid(grid);
  for (double v : sample)
    if (!std::isfinite(v))
      throw std::invalid_argument("kde: non-finite sample");

  const WeightedSample s = dedup(sample);
  const double c = 1.0 / (2.0 * bandwidth * bandwidth);
  std::vector<double> mass(grid.size(), 0.0);

  const double step = grid[1] - grid[0];
  bool uniform = true;
  for (std::size_t i = 2; i < grid.size(); ++i)
    if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-9 * step) {
      uniform = false;
      break;
    }
  if (uniform)
    accumulate_uniform(s, c, grid[0], step, mass);
  else
    accumulate_direct(s, c, grid, mass);

  double total = 0.0;
  for (double v : mass) total += v;
  if (total <= 0.0) {
    // Spread so extreme relative to the bandwidth that every kernel
    // underflowed between grid points; fall back to nearest-point mass.
    std::fill(mass.begin(), mass.end(), 0.0);
    for (std::size_t k = 0; k < s.value.size(); ++k) {
      auto it = std::lower_bound(grid.begin(), grid.end(), s.value[k]);
      if (it == grid.end()) --it;
      if (it != grid.begin() && s.value[k] - *(it - 1) < *it - s.value[k])
        --it;
      mass[static_cast<std::size_t>(it - grid.begin())] += s.weight[k];
      total += s.weight[k];
    }
  }
  for (double& v : mass) v /= total;

  DensityEstimate d;
  d.grid.assign(grid.begin(), grid.end());
  d.mass = std::move(mass);
  return d;
}

}  // namespace epidisagg
