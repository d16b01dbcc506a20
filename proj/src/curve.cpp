#include "monospline/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "monospline/errors.hpp"
#include "monospline/polynomial.hpp"

namespace monospline {

ParametricCurve::ParametricCurve(std::array<double, 4> x_coeffs, std::array<double, 4> y_coeffs)
    : x_(x_coeffs), y_(y_coeffs) {
  // x'(t) = x1 + 2 x2 t + 3 x3 t^2: minimum at an endpoint or at the vertex.
  double min_dx = std::min(x(0.0, 1), x(1.0, 1));
  if (x_[3] != 0.0) {
    const double vertex = -x_[2] / (3.0 * x_[3]);
    if (vertex > 0.0 && vertex < 1.0) min_dx = std::min(min_dx, x(vertex, 1));
  }
  if (!(min_dx > 0.0)) throw DomainError("parametric curve abscissa is not strictly increasing");
}

double ParametricCurve::x(double t, int order) const { return poly_eval_derivative(x_, t, order); }
double ParametricCurve::y(double t, int order) const { return poly_eval_derivative(y_, t, order); }

double ParametricCurve::parameter_at(double xv) const {
  const double x0 = x_min();
  const double x1 = x_max();
  if (!(xv >= x0 && xv <= x1)) {
    throw DomainError("x = " + std::to_string(xv) + " outside the curve range");
  }
  if (xv == x0) return 0.0;
  if (xv == x1) return 1.0;
  const double tol = 1e-13 * (1.0 + std::abs(xv));
  double lo = 0.0;
  double hi = 1.0;
  double mid = 0.5;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = x(mid) - xv;
    if (std::abs(f) <= tol) break;
    (f < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

double ParametricCurve::graph_deriv1_at(double t) const { return y(t, 1) / x(t, 1); }

double ParametricCurve::graph_deriv2_at(double t) const {
  const double dx = x(t, 1);
  return (y(t, 2) * dx - y(t, 1) * x(t, 2)) / (dx * dx * dx);
}

double curve_eval(const ParametricCurve& curve, double x) { return curve_eval(curve, x, 0); }

double curve_eval(const ParametricCurve& curve, double x, int order) {
  const double t = curve.parameter_at(x);
  switch (order) {
    case 0:
      return curve.y(t);
    case 1:
      return curve.graph_deriv1_at(t);
    case 2:
      return curve.graph_deriv2_at(t);
    default:
      throw DomainError("curve derivative order must be in [0, 2]");
  }
}

namespace {

// Maximum of f over [0, 1]: dense scan, then golden section around the best
// sample.
double scan_max(const std::function<double(double)>& f) {
  constexpr int kScan = 4096;
  int best_k = 0;
  double best = f(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double v = f(static_cast<double>(k) / kScan);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  double lo = std::max(0.0, static_cast<double>(best_k - 1) / kScan);
  double hi = std::min(1.0, static_cast<double>(best_k + 1) / kScan);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace

double sup_abs_deriv2(const ParametricCurve& curve) {
  return scan_max([&](double t) { return std::abs(curve.graph_deriv2_at(t)); });
}

double min_deriv1(const ParametricCurve& curve) {
  return -scan_max([&](double t) { return -curve.graph_deriv1_at(t); });
}

}  // namespace monospline
