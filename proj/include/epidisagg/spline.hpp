#pragma once

#include <span>
#include <vector>

namespace epidisagg {

/// Piecewise cubic interpolant. Pieces store local coefficients:
/// s(x) = a + b*t + c*t^2 + d*t^3 with t = x - knot_x[i] on
/// [knot_x[i], knot_x[i+1]]. Evaluation outside the knot range extends the
/// boundary polynomials.
struct SplineFit {
  struct Piece {
    double a = 0, b = 0, c = 0, d = 0;
  };

  std::vector<double> knot_x;
  std::vector<double> knot_y;
  std::vector<Piece> pieces;  // knot count - 1

  double eval(double x) const;
  double deriv(double x) const;
  double second_deriv(double x) const;
};

/// Interpolating cubic spline with not-a-knot boundary conditions.
/// Three knots degenerate to the interpolating parabola, two to a line.
SplineFit fit_cubic_spline(std::span<const double> x,
                           std::span<const double> y);

}  // namespace epidisagg
