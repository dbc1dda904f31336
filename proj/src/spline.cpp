#include "epidisagg/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epidisagg {

namespace {

std::size_t piece_index(const std::vector<double>& knot_x, double x) {
  // upper_bound - 1, clamped so out-of-range x uses a boundary piece
  const auto it = std::upper_bound(knot_x.begin(), knot_x.end(), x);
  const std::ptrdiff_t i = (it - knot_x.begin()) - 1;
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(knot_x.size()) - 2;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, last));
}

// Thomas elimination for a tridiagonal system; diag/rhs are clobbered.
std::vector<double> solve_tridiagonal(std::vector<double> sub,
                                      std::vector<double> diag,
                                      std::vector<double> sup,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
  return x;
}

// Knot slopes of the not-a-knot spline. The boundary rows fold the
// third-derivative continuity conditions at the second and second-to-last
// knots into the tridiagonal system.
std::vector<double> notaknot_slopes(std::span<const double> x,
                                    const std::vector<double>& h,
                                    const std::vector<double>& slope) {
  const std::size_t n = x.size();
  std::vector<double> sub(n, 0), diag(n, 0), sup(n, 0), rhs(n, 0);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    sub[i] = h[i];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i - 1];
    rhs[i] = 3.0 * (h[i] * slope[i - 1] + h[i - 1] * slope[i]);
  }

  if (n == 3) {
    // Parabola through three points.
    diag[0] = 1.0;
    sup[0] = 1.0;
    rhs[0] = 2.0 * slope[0];
    sub[2] = 1.0;
    diag[2] = 1.0;
    rhs[2] = 2.0 * slope[1];
  } else {
    const double d0 = x[2] - x[0];
    diag[0] = h[1];
    sup[0] = d0;
    rhs[0] = ((h[0] + 2.0 * d0) * h[1] * slope[0] + h[0] * h[0] * slope[1]) /
             d0;
    const double dn = x[n - 1] - x[n - 3];
    sub[n - 1] = dn;
    diag[n - 1] = h[n - 3];
    rhs[n - 1] = (h[n - 2] * h[n - 2] * slope[n - 3] +
                  (2.0 * dn + h[n - 2]) * h[n - 3] * slope[n - 2]) /
                 dn;
  }
  return solve_tridiagonal(std::move(sub), std::move(diag), std::move(sup),
                           std::move(rhs));
}

}  // namespace

double SplineFit::eval(double x) const {
  const std::size_t i = piece_index(knot_x, x);
  const Piece& p = pieces[i];
  const double t = x - knot_x[i];
  return p.a + t * (p.b + t * (p.c + t * p.d));
}

double SplineFit::deriv(double x) const {
  const std::size_t i = piece_index(knot_x, x);
  const Piece& p = pieces[i];
  const double t = x - knot_x[i];
  return p.b + t * (2.0 * p.c + t * 3.0 * p.d);
}

double SplineFit::second_deriv(double x) const {
  const std::size_t i = piece_index(knot_x, x);
  const Piece& p = pieces[i];
  const double t = x - knot_x[i];
  return 2.0 * p.c + 6.0 * p.d * t;
}

SplineFit fit_cubic_spline(std::span<const double> x,
                           std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("spline: x/y length mismatch");
  if (n < 2) throw std::invalid_argument("spline: need at least two knots");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw std::invalid_argument("spline: non-finite knot");
    if (i > 0 && !(x[i] > x[i - 1]))
      throw std::invalid_argument("spline: knots not strictly increasing");
  }

  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    slope[i] = (y[i + 1] - y[i]) / h[i];
  }

  std::vector<double> k;
  if (n == 2)
    k = {slope[0], slope[0]};
  else
    k = notaknot_slopes(x, h, slope);

  SplineFit fit;
  fit.knot_x.assign(x.begin(), x.end());
  fit.knot_y.assign(y.begin(), y.end());
  fit.pieces.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    SplineFit::Piece& p = fit.pieces[i];
    p.a = y[i];
    p.b = k[i];
    p.c = (3.0 * slope[i] - 2.0 * k[i] - k[i + 1]) / h[i];
    p.d = (k[i] + k[i + 1] - 2.0 * slope[i]) / (h[i] * h[i]);
  }
  return fit;
}

}  // namespace epidisagg
