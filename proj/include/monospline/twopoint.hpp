#pragma once

#include <span>
#include <string>
#include <vector>

#include "monospline/execution.hpp"
#include "monospline/piecewise.hpp"

namespace monospline {

/// Normalized two-point datum on [0, 1]: G(0) = 0, G(1) = c, G'(0) = a,
/// G'(1) = b.
struct TwoPointData {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  // Throws DomainError unless a, b, c are finite and nonnegative.
  void validate() const;
};

/// A nonnegative curvature value or the distinguished INFINITE value.
class CurvatureValue {
 public:
  constexpr CurvatureValue() = default;
  static CurvatureValue finite(double v);
  static constexpr CurvatureValue infinite() { return CurvatureValue(true); }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }
  // Throws std::logic_error when infinite.
  double value() const;
  // value() or +inf; for reporting only.
  double as_double() const noexcept;

  CurvatureValue scaled(double factor) const;

  friend bool operator==(const CurvatureValue&, const CurvatureValue&) = default;
  friend bool operator<(const CurvatureValue& lhs, const CurvatureValue& rhs);

  // "inf" or the shortest round-trip decimal.
  std::string to_string() const;

 private:
  constexpr explicit CurvatureValue(bool inf) : infinite_(inf) {}
  bool infinite_ = false;
  double value_ = 0.0;
};

CurvatureValue max(const CurvatureValue& lhs, const CurvatureValue& rhs);

/// Piecewise-linear nonnegative velocity v = G' on [0, 1].
class VelocityProfile {
 public:
  // Throws std::invalid_argument if a piece has degree > 1.
  explicit VelocityProfile(PiecewisePolynomial pp);
  const PiecewisePolynomial& function() const noexcept { return pp_; }

 private:
  PiecewisePolynomial pp_;
};

// (a^2 + b^2) / (2 (a + b)), with 0/0 = 0.
double c0_threshold(const TwoPointData& d);

enum class MstarBranch {
  kZero,        // a = b = c = 0
  kInfeasible,  // c = 0 < a + b
  kPlateau,     // 0 < c < c0
  kBoundary,    // c == c0
  kTent,        // c > c0
};

const char* branch_name(MstarBranch branch);
MstarBranch mstar_branch(const TwoPointData& d);

// Minimal sup|G''| over monotone C^{1,1} interpolants of d. At c == c0 the
// second branch is evaluated.
CurvatureValue mstar(const TwoPointData& d);

// max{0, a - M t, b - M (1 - t)} and min{a + M t, b + M (1 - t)} as explicit
// piecewise-linear profiles. Require M >= |b - a| (InfeasibleError otherwise).
VelocityProfile lower_envelope(const TwoPointData& d, double M);
VelocityProfile upper_envelope(const TwoPointData& d, double M);

// Exact integral over [0, 1] (trapezoid per linear piece).
double envelope_integral(const VelocityProfile& v);

// The piecewise-quadratic minimizer with sup|G''| = mstar(d). Empty pieces are
// dropped; a = b = c = 0 gives the zero polynomial. InfeasibleError for
// c = 0 < a + b.
PiecewisePolynomial optimal_interpolant(const TwoPointData& d);

// Brute-force M* by bisection on discrete reachability bands over an n-point
// grid (n >= 100). Independent of the closed-form formula.
CurvatureValue mstar_oracle(const TwoPointData& d, int n);

// mstar_oracle over a batch; the parallel path splits the batch with OpenMP.
std::vector<CurvatureValue> mstar_oracle_batch(std::span<const TwoPointData> data, int n,
                                               Execution exec = Execution::kParallel);

}  // namespace monospline
