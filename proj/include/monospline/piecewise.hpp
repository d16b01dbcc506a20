#pragma once

#include <cstddef>
#include <vector>

#include "monospline/polynomial.hpp"

namespace monospline {

/// Piecewise polynomial on [t_0, t_m] with breakpoints t_0 < ... < t_m.
///
/// Piece j is stored in the local variable u = t - t_j, lowest degree first,
/// with degree at most kMaxDegree. Construction checks that the breakpoints
/// are strictly increasing and that adjacent pieces agree in value at every
/// interior breakpoint to 1e-12 * (1 + |value|).
///
/// Evaluation is right-continuous at interior breakpoints and uses the
/// left-limit at t_m.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coeffs> pieces);

  static PiecewisePolynomial single(double lo, double hi, Coeffs piece);
  static PiecewisePolynomial zero(double lo, double hi) { return single(lo, hi, {0.0}); }

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<Coeffs>& pieces() const noexcept { return pieces_; }
  std::size_t num_pieces() const noexcept { return pieces_.size(); }
  double lower() const noexcept { return breakpoints_.front(); }
  double upper() const noexcept { return breakpoints_.back(); }
  double width(std::size_t j) const { return breakpoints_[j + 1] - breakpoints_[j]; }
  int max_degree() const;

  // Index of the piece used for evaluation at t (right-continuous).
  std::size_t piece_index(double t) const;

  // order-th derivative (order <= 3) at t; throws DomainError outside the domain.
  double eval(double t, int order = 0) const;
  // Left-limit of the order-th derivative; equals eval() at the lower end.
  double eval_left(double t, int order = 0) const;

  PiecewisePolynomial derivative() const;
  PiecewisePolynomial antiderivative(double start_value = 0.0) const;

  // Restriction to [lo, hi] (inside the domain). Pieces wholly inside are
  // copied verbatim; a piece cut on the left is re-expanded about lo.
  PiecewisePolynomial restrict(double lo, double hi) const;

  // Joins two functions with left.upper() == right.lower().
  static PiecewisePolynomial concat(const PiecewisePolynomial& left,
                                    const PiecewisePolynomial& right);

 private:
  std::vector<double> breakpoints_;
  std::vector<Coeffs> pieces_;
};

struct SmoothnessReport {
  double max_value_jump = 0.0;
  double max_deriv1_jump = 0.0;
  double max_deriv2_jump = 0.0;
  double min_deriv1 = 0.0;
  double sup_abs_deriv2 = 0.0;
};

// Exact sup of |p''| over the domain: per piece, endpoints plus the real roots
// of p''' (at most quadratic). At breakpoints both one-sided limits count.
double sup_abs_deriv2(const PiecewisePolynomial& pp);

// Exact min of p' over the domain: endpoints plus real roots of p'' (at most
// cubic).
double min_deriv1(const PiecewisePolynomial& pp);

SmoothnessReport smoothness_report(const PiecewisePolynomial& pp);

// Maps a function on [0, 1] to [x0, x1]: F(x) = f0 + h G((x - x0) / h).
// Pieces that collapse under rounding are dropped.
PiecewisePolynomial map_to_interval(const PiecewisePolynomial& local, double x0, double x1, double f0);

}  // namespace monospline
