#include "monospline/twopoint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monospline/errors.hpp"

namespace monospline {

void TwoPointData::validate() const {
  for (double v : {a, b, c}) {
    if (!std::isfinite(v)) throw DomainError("two-point data must be finite");
    if (v < 0.0) throw DomainError("two-point data must be nonnegative");
  }
}

CurvatureValue CurvatureValue::finite(double v) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError("curvature must be finite and >= 0");
  CurvatureValue out;
  out.value_ = v;
  return out;
}

double CurvatureValue::value() const {
  if (infinite_) throw std::logic_error("curvature value is infinite");
  return value_;
}

double CurvatureValue::as_double() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

CurvatureValue CurvatureValue::scaled(double factor) const {
  if (infinite_) return *this;
  return finite(value_ * factor);
}

bool operator<(const CurvatureValue& lhs, const CurvatureValue& rhs) {
  if (lhs.infinite_) return false;
  if (rhs.infinite_) return true;
  return lhs.value_ < rhs.value_;
}

std::string CurvatureValue::to_string() const {
  if (infinite_) return "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, res.ptr);
}

CurvatureValue max(const CurvatureValue& lhs, const CurvatureValue& rhs) {
  return lhs < rhs ? rhs : lhs;
}

VelocityProfile::VelocityProfile(PiecewisePolynomial pp) : pp_(std::move(pp)) {
  if (pp_.max_degree() > 1) throw std::invalid_argument("velocity profile must be piecewise linear");
}

double c0_threshold(const TwoPointData& d) {
  const double s = d.a + d.b;
  if (s == 0.0) return 0.0;
  return (d.a * d.a + d.b * d.b) / (2.0 * s);
}

const char* branch_name(MstarBranch branch) {
  switch (branch) {
    case MstarBranch::kZero:
      return "zero data";
    case MstarBranch::kInfeasible:
      return "infeasible c=0";
    case MstarBranch::kPlateau:
      return "plateau c<c0";
    case MstarBranch::kBoundary:
      return "boundary c=c0";
    case MstarBranch::kTent:
      return "tent c>c0";
  }
  return "unknown";
}

MstarBranch mstar_branch(const TwoPointData& d) {
  d.validate();
  if (d.c == 0.0) return d.a + d.b == 0.0 ? MstarBranch::kZero : MstarBranch::kInfeasible;
  const double c0 = c0_threshold(d);
  if (d.c < c0) return MstarBranch::kPlateau;
  if (d.c == c0) return MstarBranch::kBoundary;
  return MstarBranch::kTent;
}

CurvatureValue mstar(const TwoPointData& d) {
  switch (mstar_branch(d)) {
    case MstarBranch::kZero:
      return CurvatureValue::finite(0.0);
    case MstarBranch::kInfeasible:
      return CurvatureValue::infinite();
    case MstarBranch::kPlateau:
      return CurvatureValue::finite((d.a * d.a + d.b * d.b) / (2.0 * d.c));
    case MstarBranch::kBoundary:
    case MstarBranch::kTent:
      break;
  }
  const double e = 2.0 * d.c - d.a - d.b;
  return CurvatureValue::finite(std::abs(e) + std::hypot(e, d.b - d.a));
}

namespace {

struct Line {
  double value0;  // value at t = 0
  double slope;
  double at(double t) const { return value0 + slope * t; }
};

// Pointwise max (upper = false) or min (upper = true) of lines on [0, 1].
PiecewisePolynomial envelope_of(const std::vector<Line>& lines, bool take_min) {
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].slope - lines[j].slope;
      if (ds == 0.0) continue;
      const double t = (lines[j].value0 - lines[i].value0) / ds;
      if (t > 0.0 && t < 1.0) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto active = [&](double t) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const double v = lines[i].at(t);
      const double bv = lines[best].at(t);
      if (take_min ? v < bv : v > bv) best = i;
    }
    return best;
  };

  std::vector<double> bps{0.0};
  std::vector<std::size_t> which;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const std::size_t line = active(0.5 * (cuts[k] + cuts[k + 1]));
    if (!which.empty() && which.back() == line) {
      bps.back() = cuts[k + 1];
    } else {
      which.push_back(line);
      bps.push_back(cuts[k + 1]);
    }
  }
  std::vector<Coeffs> pieces;
  for (std::size_t k = 0; k < which.size(); ++k) {
    const Line& l = lines[which[k]];
    // Start each piece at the envelope value so pieces join exactly.
    const double start = k == 0 ? l.at(0.0) : poly_eval(pieces.back(), bps[k] - bps[k - 1]);
    pieces.push_back({start, l.slope});
  }
  return PiecewisePolynomial(std::move(bps), std::move(pieces));
}

void check_envelope_slope(const TwoPointData& d, double M) {
  d.validate();
  if (!std::isfinite(M) || M < 0.0) throw DomainError("envelope slope bound must be finite and >= 0");
  const double gap = std::abs(d.b - d.a);
  if (M < gap * (1.0 - 1e-12)) {
    throw InfeasibleError("endpoint slopes unreachable: M < |b - a|");
  }
}

}  // namespace

VelocityProfile lower_envelope(const TwoPointData& d, double M) {
  check_envelope_slope(d, M);
  return VelocityProfile(envelope_of({{0.0, 0.0}, {d.a, -M}, {d.b - M, M}}, false));
}

VelocityProfile upper_envelope(const TwoPointData& d, double M) {
  check_envelope_slope(d, M);
  return VelocityProfile(envelope_of({{d.a, M}, {d.b + M, -M}}, true));
}

double envelope_integral(const VelocityProfile& v) {
  const auto& pp = v.function();
  double total = 0.0;
  for (std::size_t j = 0; j < pp.num_pieces(); ++j) {
    const double w = pp.width(j);
    total += 0.5 * w * (poly_eval(pp.pieces()[j], 0.0) + poly_eval(pp.pieces()[j], w));
  }
  return total;
}

namespace {

struct Quadratic {
  double c2, c1, c0;  // c2 t^2 + c1 t + c0 in the global variable
  double at(double t) const { return (c2 * t + c1) * t + c0; }
  double slope(double t) const { return 2.0 * c2 * t + c1; }
};

PiecewisePolynomial assemble_quadratics(const std::vector<double>& cuts,
                                        const std::vector<Quadratic>& parts) {
  // Pieces narrower than a few ulps are absorbed by the piece before them
  // (or after, at t = 0); the jets move by at most M times that width.
  // Keeping them would leave corners that no splice of positive width fits.
  constexpr double kMinWidth = 64.0 * std::numeric_limits<double>::epsilon();
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (cuts[k + 1] - cuts[k] >= kMinWidth) kept.push_back(k);
  }
  if (kept.empty()) {
    std::size_t widest = 0;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] > cuts[widest + 1] - cuts[widest]) widest = k;
    }
    kept.push_back(widest);
  }
  std::vector<double> bps{0.0};
  std::vector<Coeffs> pieces;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Quadratic& q = parts[kept[i]];
    const double lo = bps.back();
    pieces.push_back({q.at(lo), q.slope(lo), q.c2});
    bps.push_back(i + 1 < kept.size() ? cuts[kept[i + 1]] : 1.0);
  }
  return PiecewisePolynomial(std::move(bps), std::move(pieces));
}

}  // namespace

PiecewisePolynomial optimal_interpolant(const TwoPointData& d) {
  const auto m = mstar(d);
  if (m.is_infinite()) throw InfeasibleError("c = 0 with a + b > 0 admits no monotone interpolant");
  const double M = m.value();
  const double a = d.a;
  const double b = d.b;
  const double c = d.c;
  if (M == 0.0) return PiecewisePolynomial::single(0.0, 1.0, {0.0, a});

  if (c >= 0.5 * (a + b)) {
    const double t0 = std::clamp(0.5 + (b - a) / (2.0 * M), 0.0, 1.0);
    return assemble_quadratics({0.0, t0, 1.0}, {{M / 2.0, a, 0.0}, {-M / 2.0, M + b, c - b - M / 2.0}});
  }
  if (c >= c0_threshold(d)) {
    const double t0 = std::clamp(0.5 - (b - a) / (2.0 * M), 0.0, 1.0);
    return assemble_quadratics({0.0, t0, 1.0}, {{-M / 2.0, a, 0.0}, {M / 2.0, b - M, c - b + M / 2.0}});
  }
  const double tau1 = std::clamp(a / M, 0.0, 1.0);
  const double tau2 = std::clamp(1.0 - b / M, tau1, 1.0);
  // M/2 (t-1)^2 + b (t-1) + (a^2+b^2)/(2M), expanded about t = 0.
  const double tail0 = M / 2.0 - b + (a * a + b * b) / (2.0 * M);
  return assemble_quadratics({0.0, tau1, tau2, 1.0},
                             {{-M / 2.0, a, 0.0}, {0.0, 0.0, a * a / (2.0 * M)}, {M / 2.0, b - M, tail0}});
}

CurvatureValue mstar_oracle(const TwoPointData& d, int n) {
  if (n < 100) throw DomainError("oracle grid needs n >= 100");
  d.validate();
  const double a = d.a;
  const double b = d.b;
  const double c = d.c;
  if (c == 0.0 && a + b > 0.0) return CurvatureValue::infinite();

  const double range = a + b + 4.0 * c + 1.0;
  // On the plateau branch the band drops from a to 0 within a/M* ~ c/(a+b);
  // the grid is refined so that this stays resolved (capped at 2^22 points).
  const double resolve = c > 0.0 ? std::ceil(8.0 * (a + b) / c) + 1.0 : 0.0;
  const long points = std::max<long>(n, static_cast<long>(std::min(resolve, 4194304.0)));
  const double step = 1.0 / static_cast<double>(points - 1);

  // Feasible iff the discrete lower band holds at most mass c and the upper
  // band at least c.
  auto feasible = [&](double M) {
    double lower_mass = 0.0;
    double upper_mass = 0.0;
    double prev_lo = 0.0;
    double prev_hi = 0.0;
    for (long k = 0; k < points; ++k) {
      const double t = k == points - 1 ? 1.0 : step * static_cast<double>(k);
      const double lo = std::max({0.0, a - M * t, b - M * (1.0 - t)});
      const double hi = std::min(a + M * t, b + M * (1.0 - t));
      if (lo > hi) return false;
      if (k > 0) {
        lower_mass += 0.5 * step * (prev_lo + lo);
        upper_mass += 0.5 * step * (prev_hi + hi);
      }
      prev_lo = lo;
      prev_hi = hi;
    }
    return lower_mass <= c && c <= upper_mass;
  };

  double lo = std::abs(b - a);
  double hi = range;
  // a + b + 4c + 1 is not always enough: on the plateau branch M* grows like
  // 1/c. Double until feasible.
  int doublings = 0;
  while (!feasible(hi)) {
    if (++doublings > 200) return CurvatureValue::infinite();  // c below the grid resolution
    lo = hi;
    hi *= 2.0;
  }
  const double tol = hi * std::ldexp(1.0, -40);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return CurvatureValue::finite(hi);
}

std::vector<CurvatureValue> mstar_oracle_batch(std::span<const TwoPointData> data, int n, Execution exec) {
  std::vector<CurvatureValue> out(data.size());
  const auto count = static_cast<long>(data.size());
  if (exec == Execution::kParallel) {
    for (const auto& d : data) d.validate();
    if (n < 100) throw DomainError("oracle grid needs n >= 100");
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] = mstar_oracle(data[static_cast<std::size_t>(i)], n);
    }
  } else {
    for (long i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] = mstar_oracle(data[static_cast<std::size_t>(i)], n);
    }
  }
  return out;
}

}  // namespace monospline
