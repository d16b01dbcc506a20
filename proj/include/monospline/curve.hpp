#pragma once

#include <array>

namespace monospline {

/// Cubic parametric curve t -> (x(t), y(t)), t in [0, 1], with x' > 0 so the
/// curve is the graph of a function of x.
class ParametricCurve {
 public:
  // Power-basis coefficients, lowest degree first. Throws DomainError unless
  // x'(t) > 0 on [0, 1].
  ParametricCurve(std::array<double, 4> x_coeffs, std::array<double, 4> y_coeffs);

  const std::array<double, 4>& x_coeffs() const noexcept { return x_; }
  const std::array<double, 4>& y_coeffs() const noexcept { return y_; }

  double x(double t, int order = 0) const;
  double y(double t, int order = 0) const;
  double x_min() const { return x(0.0); }
  double x_max() const { return x(1.0); }

  // Parameter t with |x(t) - x| <= 1e-13 (1 + |x|), by bisection.
  double parameter_at(double x) const;

  // Derivatives of the graph function G with G(x(t)) = y(t), as functions of t.
  double graph_deriv1_at(double t) const;
  double graph_deriv2_at(double t) const;

 private:
  std::array<double, 4> x_;
  std::array<double, 4> y_;
};

// y(t*) with x(t*) = x; DomainError when x is outside [x(0), x(1)].
double curve_eval(const ParametricCurve& curve, double x);

// Graph derivative of order 0..2 at abscissa x.
double curve_eval(const ParametricCurve& curve, double x, int order);

// Sup of |G''| and min of G' over the curve. The graph derivatives are
// rational in t, so these use a 4096-point scan refined by golden section.
double sup_abs_deriv2(const ParametricCurve& curve);
double min_deriv1(const ParametricCurve& curve);

}  // namespace monospline
