#pragma once

#include <optional>
#include <string>

#include "monospline/curve.hpp"
#include "monospline/piecewise.hpp"
#include "monospline/twopoint.hpp"

namespace monospline {

// Whitney blend F(x) = a x phi(x) + (1 - phi(x)) (b (x - 1) + c) with
// phi = 1 - 3x^2 + 2x^3, expanded to a single quartic piece on [0, 1].
// Defined for all data; monotonicity and the 6 M* bound hold when
// in_whitney_range(d).
PiecewisePolynomial whitney_interpolant(const TwoPointData& d);
bool in_whitney_range(const TwoPointData& d);

// The blend function and the derivative identity F' = b + (a-b) phi + D phi'
// with D(x) = (a - b) x - (c - b).
double whitney_blend(double x, int order = 0);
double whitney_deriv1_identity(const TwoPointData& d, double x);

// Empty when the cubic Bezier construction applies (a != b and
// min(a,b) < c < max(a,b)); otherwise the violated inequality.
std::optional<std::string> bezier_range_violation(const TwoPointData& d);

// Cubic Bezier with the doubled interior control point (T, m) at the
// intersection of the endpoint tangents: x(t) = 3T t(1-t) + t^3,
// y(t) = 3m t(1-t) + c t^3, T = (b - c)/(b - a), m = a T.
ParametricCurve bezier_interpolant(const TwoPointData& d);

// (T, m) of the construction above.
struct BezierControl {
  double T = 0.0;
  double m = 0.0;
};
BezierControl bezier_control(const TwoPointData& d);

// |G''(x(T))| = (2/3) |b - a|^3 / ((b - c)(c - a)).
double bezier_peak_curvature(const TwoPointData& d);

struct BernsteinSolution {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double lambda = 0.0;
};

// Empty when (d, lambda) satisfy 0 < lambda <= (a+b)/|b-a| and
// |c - (a+b)/2| <= (lambda/4)|b - a|; otherwise the violated inequality.
std::optional<std::string> bernstein_range_violation(const TwoPointData& d, double lambda);

// min(1, (a+b)/|b-a|) raised to the smallest lambda meeting the range
// restriction when possible; RangeError otherwise.
double bernstein_default_lambda(const TwoPointData& d);

struct BernsteinResult {
  BernsteinSolution solution;
  PiecewisePolynomial interpolant;
};

// G(t) = integral of sum m_k B_{k,3}; m1, m2 from the proportional split of
// S = 4c - a - b projected onto the admissible box along m1 + m2 = S.
BernsteinResult bernstein_interpolant(const TwoPointData& d, double lambda);

// The proportional split m1 = S a/(a+b), m2 = S - m1 with S = 4c - a - b and
// no box projection; defined for all data but certified for nothing (m1 or
// m2 may be negative). lambda is reported as 0.
BernsteinResult bernstein_proportional(const TwoPointData& d);

}  // namespace monospline
