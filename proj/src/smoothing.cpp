#include "monospline/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monospline/errors.hpp"

namespace monospline {

JetTriple jet_at(const PiecewisePolynomial& pp, double x) {
  return {pp.eval(x, 0), pp.eval(x, 1), pp.eval(x, 2)};
}

std::vector<Corner> corner_set(const VelocityProfile& v) {
  const auto& pp = v.function();
  std::vector<Corner> out;
  for (std::size_t j = 0; j + 1 < pp.num_pieces(); ++j) {
    const double left = poly_eval_derivative(pp.pieces()[j], 0.0, 1);
    const double right = poly_eval_derivative(pp.pieces()[j + 1], 0.0, 1);
    if (std::abs(right - left) > 1e-12 * (std::abs(left) + std::abs(right))) {
      out.push_back({pp.breakpoints()[j + 1], left, right});
    }
  }
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Plan {
  PiecewisePolynomial optimal;
  std::vector<Corner> corners;
  double M = 0.0;
  bool convex = false;    // lower-envelope profile: splices lie above v_M
  bool mirrored = false;  // bump window near t = 0
  double max_delta = 0.0;
};

Plan make_plan(const TwoPointData& d) {
  Plan plan{optimal_interpolant(d), {}, 0.0, false, false, 0.0};
  plan.M = sup_abs_deriv2(plan.optimal);
  if (plan.M == 0.0) return plan;
  plan.corners = corner_set(VelocityProfile(plan.optimal.derivative()));
  if (plan.corners.empty()) return plan;

  for (const auto& c : plan.corners) plan.convex = plan.convex || c.right_slope > c.left_slope;
  plan.mirrored = plan.convex && d.b == 0.0;

  double bound = kInf;
  double first = kInf;
  double last = -kInf;
  for (std::size_t i = 0; i < plan.corners.size(); ++i) {
    const double tau = plan.corners[i].position;
    bound = std::min(bound, 0.5 * std::min(tau, 1.0 - tau));
    for (std::size_t j = i + 1; j < plan.corners.size(); ++j) {
      bound = std::min(bound, 0.25 * std::abs(tau - plan.corners[j].position));
    }
    first = std::min(first, tau);
    last = std::max(last, tau);
  }
  // The bump window [1-6δ, 1-2δ] (or [2δ, 6δ]) must clear every splice window.
  bound = std::min(bound, plan.mirrored ? first / 7.0 : (1.0 - last) / 7.0);
  // Nonnegativity floor on the bump window for lower-envelope profiles.
  if (plan.convex) bound = std::min(bound, (plan.mirrored ? d.a : d.b) / (16.0 * plan.M));
  plan.max_delta = bound;
  return plan;
}

// B(s) = 30 s^2 (1 - s)^2.
const Coeffs kBump{0.0, 0.0, 30.0, -60.0, 30.0};

}  // namespace

double mollify_max_delta(const TwoPointData& d) { return make_plan(d).max_delta; }

namespace {

struct Built {
  PiecewisePolynomial spliced;
  PiecewisePolynomial velocity;
  PiecewisePolynomial interpolant;
  double excess;
  double j0;
  double j1;
};

// Splices the corners of the piecewise-linear velocity vm on [x0, x1] and
// subtracts the excess with a bump. Widths are taken from the represented
// breakpoints so every splice reaches its right slope exactly.
Built build(const PiecewisePolynomial& vm, const std::vector<Corner>& corners, double delta, bool mirrored,
            bool with_bump, double start_value) {
  const double x0 = vm.lower();
  const double x1 = vm.upper();
  auto splice_width = [&](const Corner& c) { return (c.position + delta) - (c.position - delta); };
  double excess = 0.0;
  if (with_bump) {
    for (const auto& c : corners) {
      const double w = splice_width(c);
      excess += (c.right_slope - c.left_slope) * w * w / 24.0;
    }
  }
  const double j0 = mirrored ? x0 + 2.0 * delta : x1 - 6.0 * delta;
  const double j1 = mirrored ? x0 + 6.0 * delta : x1 - 2.0 * delta;

  std::vector<double> cuts{x0, x1};
  for (const auto& c : corners) {
    cuts.push_back(c.position - delta);
    cuts.push_back(c.position + delta);
  }
  if (excess != 0.0) {
    cuts.push_back(j0);
    cuts.push_back(j1);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Coeffs> spliced;
  std::vector<Coeffs> velocity;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double mid = 0.5 * (lo + cuts[k + 1]);
    Coeffs piece;
    const auto window = std::find_if(corners.begin(), corners.end(), [&](const Corner& c) {
      return mid > c.position - delta && mid < c.position + delta;
    });
    if (window != corners.end()) {
      const double start = window->position - delta;
      const Coeffs q{vm.eval(start), window->left_slope,
                     (window->right_slope - window->left_slope) / (2.0 * splice_width(*window))};
      piece = poly_shift(q, lo - start);
    } else {
      piece = {vm.eval(lo), vm.eval(mid, 1)};
    }
    spliced.push_back(piece);
    if (excess != 0.0 && mid > j0 && mid < j1) {
      const double width = j1 - j0;
      const Coeffs eta = poly_compose_affine(kBump, 1.0 / width, (lo - j0) / width);
      piece = poly_add(piece, poly_scale(eta, -excess / width));
    }
    velocity.push_back(std::move(piece));
  }
  PiecewisePolynomial w(cuts, std::move(spliced));
  PiecewisePolynomial v(cuts, std::move(velocity));
  PiecewisePolynomial G = v.antiderivative(start_value);
  return {std::move(w), std::move(v), std::move(G), excess, j0, j1};
}

double checked_delta(const Plan& plan, const MollifyConfig& cfg) {
  if (!cfg.delta) return plan.max_delta;
  if (!(*cfg.delta > 0.0) || *cfg.delta > plan.max_delta * (1.0 + 1e-12)) {
    throw ConfigError("mollify delta must lie in (0, " + std::to_string(plan.max_delta) + "]");
  }
  return *cfg.delta;
}

bool needs_bump(const Plan& plan, double delta, const TwoPointData& d, const MollifyConfig& cfg) {
  double excess = 0.0;
  for (const auto& c : plan.corners) excess += (c.right_slope - c.left_slope) * delta * delta / 6.0;
  return std::abs(excess) > cfg.excess_tolerance * (1.0 + d.c);
}

}  // namespace

MollifyResult mollify_c2_detailed(const TwoPointData& d, const MollifyConfig& cfg) {
  Plan plan = make_plan(d);
  if (plan.corners.empty()) {
    if (cfg.delta && !(*cfg.delta > 0.0)) throw ConfigError("mollify delta must be > 0");
    auto v = plan.optimal.derivative();
    return {plan.optimal, v, v, {}, plan.M, 0.0, 0.0, 0.0, 0.0};
  }
  const double delta = checked_delta(plan, cfg);
  Built b = build(plan.optimal.derivative(), plan.corners, delta, plan.mirrored, needs_bump(plan, delta, d, cfg), 0.0);
  const bool bump = b.excess != 0.0;
  return {std::move(b.interpolant), std::move(b.spliced), std::move(b.velocity), plan.corners, plan.M, delta,
          b.excess, bump ? b.j0 : 0.0, bump ? b.j1 : 0.0};
}

PiecewisePolynomial mollify_mapped(const TwoPointData& d, double x0, double x1, double f0,
                                   const MollifyConfig& cfg) {
  Plan plan = make_plan(d);
  const PiecewisePolynomial optimal = map_to_interval(plan.optimal, x0, x1, f0);
  if (plan.corners.empty()) return optimal;
  const double delta = checked_delta(plan, cfg);
  const double h = x1 - x0;
  const auto vm = optimal.derivative();
  const auto corners = corner_set(VelocityProfile(vm));
  return build(vm, corners, h * delta, plan.mirrored, needs_bump(plan, delta, d, cfg), f0).interpolant;
}

PiecewisePolynomial mollify_c2(const TwoPointData& d, const MollifyConfig& cfg) {
  return mollify_c2_detailed(d, cfg).interpolant;
}

namespace {

struct PatchInputs {
  double x1 = 0.0;
  double x3 = 0.0;
  double f2 = 0.0;
  double slope = 0.0;
  double M = 0.0;
  double max_delta = 0.0;
};

PatchInputs check_patch_inputs(const PiecewisePolynomial& left, const PiecewisePolynomial& right,
                               double x2) {
  if (left.upper() != x2 || right.lower() != x2) {
    throw PreconditionError("c2_patch: left must end and right must start at x2");
  }
  PatchInputs in;
  in.x1 = left.lower();
  in.x3 = right.upper();
  const double fl = left.eval_left(x2, 0);
  const double fr = right.eval(x2, 0);
  if (std::abs(fl - fr) > 1e-10 * (1.0 + std::abs(fl))) throw PreconditionError("c2_patch: values differ at x2");
  const double dl = left.eval_left(x2, 1);
  const double dr = right.eval(x2, 1);
  if (std::abs(dl - dr) > 1e-10 * (1.0 + std::abs(dl))) throw PreconditionError("c2_patch: slopes differ at x2");
  in.f2 = fl;
  in.slope = 0.5 * (dl + dr);
  if (!(in.slope > 0.0)) throw UnsupportedError("c2_patch: node slope must be > 0");
  const double mono_tol = -1e-12 * (1.0 + in.slope);
  if (min_deriv1(left) < mono_tol || min_deriv1(right) < mono_tol) {
    throw PreconditionError("c2_patch: inputs must be monotone");
  }
  in.M = std::max(sup_abs_deriv2(left), sup_abs_deriv2(right));
  in.max_delta = std::min(0.5 * (x2 - in.x1), 0.5 * (in.x3 - x2));
  if (in.M > 0.0) in.max_delta = std::min(in.max_delta, kPatchKappa * in.slope / in.M);
  return in;
}

// F(hi) - F(lo) summed piece by piece with the constant terms dropped, so the
// result keeps relative accuracy when hi - lo is tiny against |F|.
double increment(const PiecewisePolynomial& pp, double lo, double hi) {
  const auto& bp = pp.breakpoints();
  double total = 0.0;
  for (std::size_t j = 0; j < pp.num_pieces(); ++j) {
    const double s = std::max(lo, bp[j]);
    const double e = std::min(hi, bp[j + 1]);
    if (!(e > s)) continue;
    const double u1 = s - bp[j];
    const double u2 = e - bp[j];
    const Coeffs& c = pp.pieces()[j];
    // u2^k - u1^k = (u2 - u1) * sum_m u2^m u1^(k-1-m)
    double sum = 0.0;
    double pow_sum = 1.0;  // sum_m u2^m u1^(k-1-m) for the current k
    double u2k = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      sum += c[k] * pow_sum;
      u2k *= u2;
      pow_sum = pow_sum * u1 + u2k;
    }
    total += (u2 - u1) * sum;
  }
  return total;
}

// Two-piece C^2 quintic stand-in for t^3 (1-t)^3 on [0, 1/2] and its mirror:
// zero second-order jets at 0, value 1/64, slope 0 and curvature -3/8 at 1/2.
const Coeffs kHalfCorrection{0.0, 0.0, 0.0, 0.875, -2.25, 1.5};

}  // namespace

double c2_patch_half_width(double x2, double delta) {
  if (!(delta > 0.0)) return 0.0;
  const double m = std::abs(x2);
  if (m == 0.0) return delta;
  // A multiple of ulp(x2) no larger than 2|x2| keeps x2 - s exact; x2 + s can
  // only fail on parity after crossing at most two binades, so a few
  // decrements settle it.
  const double unit = std::nextafter(m, kInf) - m;
  double snapped = std::floor(std::min(delta, 2.0 * m) / unit) * unit;
  while (snapped > 0.0 && ((x2 + snapped) - x2 != snapped || x2 - (x2 - snapped) != snapped)) {
    snapped -= unit;
  }
  return std::max(snapped, 0.0);
}

double c2_patch_max_delta(const PiecewisePolynomial& left, const PiecewisePolynomial& right, double x2) {
  return check_patch_inputs(left, right, x2).max_delta;
}

PiecewisePolynomial c2_patch(const PiecewisePolynomial& left, const PiecewisePolynomial& right,
                             double x2, double delta) {
  const PatchInputs in = check_patch_inputs(left, right, x2);
  if (!(delta > 0.0) || delta > in.max_delta * (1.0 + 1e-12)) {
    throw ConfigError("c2_patch: delta must lie in (0, " + std::to_string(in.max_delta) + "]");
  }
  delta = c2_patch_half_width(x2, delta);
  if (!(delta > 0.0)) throw ConfigError("c2_patch: delta is below the resolution at x2");
  const double a = x2 - delta;
  const double b = x2 + delta;
  const double H = 2.0 * delta;
  const double A0 = left.eval_left(a, 0);
  const double A1 = left.eval_left(a, 1);
  const double A2 = left.eval_left(a, 2);
  const double B1 = right.eval(b, 1);
  const double B2 = right.eval(b, 2);

  // Quintic Hermite interpolant of both jets, local variable u = x - a.
  const double rise_left = increment(left, a, x2);
  const double rise = rise_left + increment(right, x2, b);
  const double R0 = rise - (A1 * H + 0.5 * A2 * H * H);
  const double R1 = B1 - (A1 + A2 * H);
  const double R2 = B2 - A2;
  const double H2 = H * H;
  const Coeffs P{A0,
                 A1,
                 0.5 * A2,
                 (10.0 * R0 - 4.0 * R1 * H + 0.5 * R2 * H2) / (H2 * H),
                 (-15.0 * R0 + 7.0 * R1 * H - R2 * H2) / (H2 * H2),
                 (6.0 * R0 - 3.0 * R1 * H + 0.5 * R2 * H2) / (H2 * H2 * H)};

  Coeffs P_rise = P;
  P_rise[0] = 0.0;
  const double alpha = 64.0 * (rise_left - poly_eval(P_rise, delta));
  const Coeffs left_fix = poly_scale(poly_compose_affine(kHalfCorrection, 1.0 / H, 0.0), alpha);
  const Coeffs right_fix = poly_scale(poly_compose_affine(kHalfCorrection, -1.0 / H, 0.5), alpha);
  const Coeffs p_left = poly_add(P, left_fix);
  Coeffs p_right = poly_add(poly_shift(P, delta), right_fix);
  // Pin the shared value at x2 to the left half so the join is exact.
  p_right[0] = poly_eval(p_left, delta);

  PiecewisePolynomial window({a, x2, b}, {p_left, p_right});
  PiecewisePolynomial out = PiecewisePolynomial::concat(left.restrict(in.x1, a), window);
  out = PiecewisePolynomial::concat(out, right.restrict(b, in.x3));

  const double curvature = sup_abs_deriv2(out);
  if (curvature > kPatchCurvatureFactor * in.M + 1e-9 * (1.0 + in.slope)) {
    throw std::runtime_error("c2_patch: curvature certificate failed");
  }
  if (min_deriv1(out) < -1e-12 * (1.0 + in.slope)) {
    throw std::runtime_error("c2_patch: monotonicity certificate failed");
  }
  return out;
}

}  // namespace monospline
