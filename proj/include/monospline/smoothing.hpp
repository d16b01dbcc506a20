#pragma once

#include <optional>
#include <vector>

#include "monospline/piecewise.hpp"
#include "monospline/twopoint.hpp"

namespace monospline {

struct MollifyConfig {
  std::optional<double> delta;  // empty: AUTO
  double excess_tolerance = 1e-12;
};

// Second-order jet at a point.
struct JetTriple {
  double value = 0.0;
  double deriv1 = 0.0;
  double deriv2 = 0.0;
};

JetTriple jet_at(const PiecewisePolynomial& pp, double x);

struct Corner {
  double position = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
};

// Interior breakpoints of a velocity profile where the slope changes.
std::vector<Corner> corner_set(const VelocityProfile& v);

struct MollifyResult {
  PiecewisePolynomial interpolant;  // G, C^2, degree <= 5
  PiecewisePolynomial spliced;      // w_delta: v_M with quadratic corner splices
  PiecewisePolynomial velocity;     // v_delta = w_delta - E eta
  std::vector<Corner> corners;
  double M = 0.0;
  double delta = 0.0;
  double excess = 0.0;  // signed E_delta = integral(w_delta) - c
  double bump_lo = 0.0;  // bump window J (empty when excess == 0)
  double bump_hi = 0.0;
};

// Largest delta accepted by mollify_c2 for d (0 when v_M has no corners).
double mollify_max_delta(const TwoPointData& d);

// C^2 interpolant with sup|G''| <= 1.2 M*(d), obtained by splicing the
// corners of the optimal velocity profile with quadratics and restoring the
// mass with the bump 30 s^2 (1-s)^2 on a window of length 4 delta.
MollifyResult mollify_c2_detailed(const TwoPointData& d, const MollifyConfig& cfg = {});
PiecewisePolynomial mollify_c2(const TwoPointData& d, const MollifyConfig& cfg = {});

// The mollified interpolant built directly on [x0, x1], equal to
// f0 + h G((x - x0) / h) up to rounding. Splices are sized from the global
// breakpoints, which keeps F'' continuous when delta is tiny against |x0|.
PiecewisePolynomial mollify_mapped(const TwoPointData& d, double x0, double x1, double f0,
                                   const MollifyConfig& cfg = {});

// Window constant: delta <= kPatchKappa * d / M.
inline constexpr double kPatchKappa = 1.0 / 64.0;
// A posteriori curvature certificate: sup|F''| <= kPatchCurvatureFactor * M.
inline constexpr double kPatchCurvatureFactor = 10.0;

// Largest delta accepted by c2_patch for this pair.
double c2_patch_max_delta(const PiecewisePolynomial& left, const PiecewisePolynomial& right, double x2);

// delta rounded down so that x2 - delta and x2 + delta are exact, making both
// window halves exactly delta wide; 0 if nothing representable remains.
double c2_patch_half_width(double x2, double delta);

// Replaces [x2 - delta, x2 + delta] by the quintic matching both second-order
// jets plus a correction through (x2, f2), stored as two quintic pieces split
// at x2. left lives on [x1, x2], right on [x2, x3]; both must agree in value
// and slope d > 0 at x2. delta is snapped with c2_patch_half_width.
PiecewisePolynomial c2_patch(const PiecewisePolynomial& left, const PiecewisePolynomial& right,
                             double x2, double delta);

}  // namespace monospline
