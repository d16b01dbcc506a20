#include "monospline/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "monospline/errors.hpp"

namespace monospline {

namespace {

constexpr double kContinuityTol = 1e-12;

void check_order(int order) {
  if (order < 0 || order > 3) throw DomainError("derivative order must be in [0, 3]");
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coeffs> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("piecewise polynomial needs at least one piece");
  if (breakpoints_.size() != pieces_.size() + 1) {
    throw std::invalid_argument("breakpoint count must be piece count + 1");
  }
  for (double t : breakpoints_) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite breakpoint");
  }
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] < breakpoints_[j + 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
  for (auto& p : pieces_) {
    if (p.empty()) p.push_back(0.0);
    while (p.size() > static_cast<std::size_t>(kMaxDegree + 1) && p.back() == 0.0) p.pop_back();
    if (p.size() > static_cast<std::size_t>(kMaxDegree + 1)) {
      throw std::invalid_argument("piece degree exceeds " + std::to_string(kMaxDegree));
    }
    for (double c : p) {
      if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
    }
  }
  for (std::size_t j = 0; j + 1 < pieces_.size(); ++j) {
    const double left = poly_eval(pieces_[j], width(j));
    const double right = pieces_[j + 1][0];
    if (std::abs(left - right) > kContinuityTol * (1.0 + std::abs(right))) {
      throw std::invalid_argument("value discontinuity at breakpoint " + std::to_string(j + 1));
    }
  }
}

PiecewisePolynomial PiecewisePolynomial::single(double lo, double hi, Coeffs piece) {
  return PiecewisePolynomial({lo, hi}, {std::move(piece)});
}

int PiecewisePolynomial::max_degree() const {
  int deg = 0;
  for (const auto& p : pieces_) deg = std::max(deg, poly_degree(p));
  return deg;
}

std::size_t PiecewisePolynomial::piece_index(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = static_cast<std::ptrdiff_t>(it - breakpoints_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(pieces_.size()) - 1));
}

double PiecewisePolynomial::eval(double t, int order) const {
  check_order(order);
  if (!(t >= lower() && t <= upper())) {
    throw DomainError("t = " + std::to_string(t) + " outside [" + std::to_string(lower()) + ", " +
                      std::to_string(upper()) + "]");
  }
  const std::size_t j = piece_index(t);
  return poly_eval_derivative(pieces_[j], t - breakpoints_[j], order);
}

double PiecewisePolynomial::eval_left(double t, int order) const {
  check_order(order);
  if (!(t >= lower() && t <= upper())) throw DomainError("t outside the domain");
  if (t == lower()) return eval(t, order);
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto j = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return poly_eval_derivative(pieces_[j], t - breakpoints_[j], order);
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  std::vector<Coeffs> d;
  d.reserve(pieces_.size());
  for (const auto& p : pieces_) d.push_back(poly_derivative(p));
  return PiecewisePolynomial(breakpoints_, std::move(d));
}

PiecewisePolynomial PiecewisePolynomial::antiderivative(double start_value) const {
  std::vector<Coeffs> out;
  out.reserve(pieces_.size());
  double acc = start_value;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    out.push_back(poly_antiderivative(pieces_[j], acc));
    acc = poly_eval(out.back(), width(j));
  }
  return PiecewisePolynomial(breakpoints_, std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::restrict(double lo, double hi) const {
  if (!(lo >= lower() && hi <= upper() && lo < hi)) throw DomainError("restrict: bad interval");
  std::vector<double> bps{lo};
  std::vector<Coeffs> out;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const double a = breakpoints_[j];
    const double b = breakpoints_[j + 1];
    if (b <= lo || a >= hi) continue;
    if (a >= lo) {
      out.push_back(pieces_[j]);
    } else {
      out.push_back(poly_shift(pieces_[j], lo - a));
    }
    bps.push_back(std::min(b, hi));
  }
  return PiecewisePolynomial(std::move(bps), std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::concat(const PiecewisePolynomial& left,
                                                const PiecewisePolynomial& right) {
  if (left.upper() != right.lower()) throw std::invalid_argument("concat: domains do not touch");
  std::vector<double> bps = left.breakpoints_;
  bps.insert(bps.end(), right.breakpoints_.begin() + 1, right.breakpoints_.end());
  std::vector<Coeffs> pieces = left.pieces_;
  pieces.insert(pieces.end(), right.pieces_.begin(), right.pieces_.end());
  return PiecewisePolynomial(std::move(bps), std::move(pieces));
}

namespace {

// Candidate local abscissae in [0, w] for extrema of the derivative of order
// `order` of piece p: the endpoints and the real roots of the next derivative.
std::vector<double> extremum_candidates(const Coeffs& p, double w, int order) {
  // Work in s = u / w so coefficients are O(values) regardless of w.
  Coeffs scaled(p);
  double pw = 1.0;
  for (auto& c : scaled) {
    c *= pw;
    pw *= w;
  }
  Coeffs next = scaled;
  for (int k = 0; k <= order; ++k) next = poly_derivative(next);
  std::vector<double> cand{0.0, w};
  if (poly_degree(next) >= 1) {
    for (double s : real_roots(next)) {
      if (s > 0.0 && s < 1.0) cand.push_back(s * w);
    }
  }
  return cand;
}

}  // namespace

double sup_abs_deriv2(const PiecewisePolynomial& pp) {
  double best = 0.0;
  for (std::size_t j = 0; j < pp.num_pieces(); ++j) {
    const auto& p = pp.pieces()[j];
    for (double u : extremum_candidates(p, pp.width(j), 2)) {
      best = std::max(best, std::abs(poly_eval_derivative(p, u, 2)));
    }
  }
  return best;
}

double min_deriv1(const PiecewisePolynomial& pp) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pp.num_pieces(); ++j) {
    const auto& p = pp.pieces()[j];
    for (double u : extremum_candidates(p, pp.width(j), 1)) {
      best = std::min(best, poly_eval_derivative(p, u, 1));
    }
  }
  return best;
}

SmoothnessReport smoothness_report(const PiecewisePolynomial& pp) {
  SmoothnessReport r;
  for (std::size_t j = 0; j + 1 < pp.num_pieces(); ++j) {
    const auto& left = pp.pieces()[j];
    const auto& right = pp.pieces()[j + 1];
    const double w = pp.width(j);
    r.max_value_jump = std::max(r.max_value_jump, std::abs(poly_eval(left, w) - right[0]));
    r.max_deriv1_jump = std::max(r.max_deriv1_jump, std::abs(poly_eval_derivative(left, w, 1) -
                                                             poly_eval_derivative(right, 0.0, 1)));
    r.max_deriv2_jump = std::max(r.max_deriv2_jump, std::abs(poly_eval_derivative(left, w, 2) -
                                                             poly_eval_derivative(right, 0.0, 2)));
  }
  r.min_deriv1 = min_deriv1(pp);
  r.sup_abs_deriv2 = sup_abs_deriv2(pp);
  return r;
}

PiecewisePolynomial map_to_interval(const PiecewisePolynomial& local, double x0, double x1, double f0) {
  const double h = x1 - x0;
  std::vector<double> bps{x0};
  std::vector<Coeffs> pieces;
  const auto& t = local.breakpoints();
  for (std::size_t j = 0; j < local.num_pieces(); ++j) {
    const double hi = j + 1 == local.num_pieces() ? x1 : x0 + h * t[j + 1];
    if (!(hi > bps.back())) continue;  // piece collapsed under rounding
    Coeffs c = local.pieces()[j];
    double scale = h;
    for (auto& ck : c) {
      ck *= scale;
      scale /= h;
    }
    c[0] += f0;
    pieces.push_back(std::move(c));
    bps.push_back(hi);
  }
  return PiecewisePolynomial(std::move(bps), std::move(pieces));
}

}  // namespace monospline
