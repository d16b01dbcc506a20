#include "monospline/classical.hpp"

#include <algorithm>
#include <cmath>

#include "monospline/errors.hpp"

namespace monospline {

PiecewisePolynomial whitney_interpolant(const TwoPointData& d) {
  d.validate();
  const double a = d.a;
  const double b = d.b;
  const double c = d.c;
  // a x phi + (1 - phi)(b (x - 1) + c), expanded in the power basis.
  return PiecewisePolynomial::single(
      0.0, 1.0, {0.0, a, 3.0 * (c - b), -3.0 * a + 5.0 * b - 2.0 * c, 2.0 * (a - b)});
}

bool in_whitney_range(const TwoPointData& d) { return d.c >= std::max(d.a, d.b); }

double whitney_blend(double x, int order) {
  static const Coeffs phi{1.0, 0.0, -3.0, 2.0};
  return poly_eval_derivative(phi, x, order);
}

double whitney_deriv1_identity(const TwoPointData& d, double x) {
  const double D = (d.a - d.b) * x - (d.c - d.b);
  return d.b + (d.a - d.b) * whitney_blend(x) + D * whitney_blend(x, 1);
}

std::optional<std::string> bezier_range_violation(const TwoPointData& d) {
  d.validate();
  if (d.a == d.b) return "bezier requires a != b";
  const double lo = std::min(d.a, d.b);
  const double hi = std::max(d.a, d.b);
  if (!(lo < d.c && d.c < hi)) return "bezier requires min(a,b) < c < max(a,b)";
  return std::nullopt;
}

BezierControl bezier_control(const TwoPointData& d) {
  if (auto why = bezier_range_violation(d)) throw RangeError(*why);
  const double T = (d.b - d.c) / (d.b - d.a);
  return {T, d.a * T};
}

ParametricCurve bezier_interpolant(const TwoPointData& d) {
  const auto [T, m] = bezier_control(d);
  return ParametricCurve({0.0, 3.0 * T, -3.0 * T, 1.0}, {0.0, 3.0 * m, -3.0 * m, d.c});
}

double bezier_peak_curvature(const TwoPointData& d) {
  if (auto why = bezier_range_violation(d)) throw RangeError(*why);
  const double gap = d.b - d.a;
  return std::abs((2.0 / 3.0) * gap * gap * gap / ((d.b - d.c) * (d.c - d.a)));
}

namespace {

double bernstein_tol(const TwoPointData& d) { return 1e-12 * (d.a + d.b + d.c); }

}  // namespace

std::optional<std::string> bernstein_range_violation(const TwoPointData& d, double lambda) {
  d.validate();
  if (!(lambda > 0.0) || !std::isfinite(lambda)) return "bernstein requires lambda > 0";
  const double gap = std::abs(d.b - d.a);
  const double tol = bernstein_tol(d);
  if (gap > 0.0 && lambda * gap > (d.a + d.b) + tol) {
    return "bernstein requires lambda <= (a+b)/|b-a|";
  }
  if (std::abs(d.c - 0.5 * (d.a + d.b)) > 0.25 * lambda * gap + tol) {
    return "bernstein requires |c - (a+b)/2| <= (lambda/4)|b-a|";
  }
  return std::nullopt;
}

double bernstein_default_lambda(const TwoPointData& d) {
  d.validate();
  const double gap = std::abs(d.b - d.a);
  if (gap == 0.0) {
    if (std::abs(d.c - 0.5 * (d.a + d.b)) > bernstein_tol(d)) {
      throw RangeError("bernstein requires |c - (a+b)/2| <= (lambda/4)|b-a|");
    }
    return 1.0;
  }
  const double lambda_max = (d.a + d.b) / gap;
  const double lambda_min = 4.0 * std::abs(d.c - 0.5 * (d.a + d.b)) / gap;
  const double lambda = std::max(std::min(1.0, lambda_max), lambda_min);
  if (auto why = bernstein_range_violation(d, lambda)) throw RangeError(*why);
  return lambda;
}

namespace {

BernsteinResult bernstein_from(const BernsteinSolution& sol) {
  const double a = sol.m0, m1 = sol.m1, m2 = sol.m2, b = sol.m3;
  // v = sum m_k B_{k,3} in the power basis.
  const Coeffs v{a, 3.0 * (m1 - a), 3.0 * (a - 2.0 * m1 + m2), -a + 3.0 * m1 - 3.0 * m2 + b};
  return {sol, PiecewisePolynomial::single(0.0, 1.0, poly_antiderivative(v, 0.0))};
}

}  // namespace

BernsteinResult bernstein_interpolant(const TwoPointData& d, double lambda) {
  if (auto why = bernstein_range_violation(d, lambda)) throw RangeError(*why);
  const double a = d.a;
  const double b = d.b;
  const double S = std::max(0.0, 4.0 * d.c - a - b);
  const double w = lambda * std::abs(b - a);

  double m1 = a + b > 0.0 ? S * a / (a + b) : 0.5 * S;
  // m1 + m2 = S with m1 in [max(0, a-w), a+w] and m2 in [max(0, b-w), b+w].
  const double lo = std::max(std::max(0.0, a - w), S - (b + w));
  const double hi = std::min(a + w, S - std::max(0.0, b - w));
  if (lo > hi + bernstein_tol(d)) throw RangeError("bernstein box constraints are empty");
  m1 = std::clamp(m1, lo, std::max(lo, hi));
  const double m2 = S - m1;

  return bernstein_from(BernsteinSolution{a, m1, m2, b, lambda});
}

BernsteinResult bernstein_proportional(const TwoPointData& d) {
  d.validate();
  const double S = 4.0 * d.c - d.a - d.b;
  const double m1 = d.a + d.b > 0.0 ? S * d.a / (d.a + d.b) : 0.5 * S;
  return bernstein_from(BernsteinSolution{d.a, m1, S - m1, d.b, 0.0});
}

}  // namespace monospline
