#include "monospline/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace monospline {

double poly_eval(std::span<const double> p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double poly_eval_derivative(std::span<const double> p, double x, int order) {
  if (order == 0) return poly_eval(p, x);
  double acc = 0.0;
  const int n = static_cast<int>(p.size());
  for (int k = n - 1; k >= order; --k) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(k - j);
    acc = acc * x + falling * p[static_cast<std::size_t>(k)];
  }
  return acc;
}

Coeffs poly_derivative(std::span<const double> p) {
  if (p.size() <= 1) return {0.0};
  Coeffs d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

Coeffs poly_antiderivative(std::span<const double> p, double constant) {
  Coeffs q(p.size() + 1);
  q[0] = constant;
  for (std::size_t k = 0; k < p.size(); ++k) q[k + 1] = p[k] / static_cast<double>(k + 1);
  return q;
}

Coeffs poly_compose_affine(std::span<const double> p, double scale, double offset) {
  // Horner in the polynomial ring: acc <- acc * (scale*u + offset) + p_k.
  Coeffs acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Coeffs next(acc.size() + 1, 0.0);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j] += acc[j] * offset;
      next[j + 1] += acc[j] * scale;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  if (acc.empty()) acc.push_back(0.0);
  acc.resize(p.empty() ? 1 : p.size());
  return acc;
}

Coeffs poly_add(std::span<const double> p, std::span<const double> q) {
  Coeffs r(std::max(p.size(), q.size()), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) r[k] += p[k];
  for (std::size_t k = 0; k < q.size(); ++k) r[k] += q[k];
  return r;
}

Coeffs poly_scale(std::span<const double> p, double s) {
  Coeffs r(p.begin(), p.end());
  for (auto& c : r) c *= s;
  return r;
}

int poly_degree(std::span<const double> p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    if (p[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

namespace {

constexpr double kLeadingTol = 1e-14;
constexpr double kDiscriminantTol = 1e-14;

double polish(std::span<const double> p, double x) {
  for (int it = 0; it < 3; ++it) {
    const double f = poly_eval(p, x);
    const double df = poly_eval_derivative(p, x, 1);
    if (df == 0.0 || !std::isfinite(df)) break;
    const double step = f / df;
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

std::vector<double> finish(std::vector<double> roots) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (!std::isfinite(r)) continue;
    if (!out.empty() && std::abs(r - out.back()) <= 1e-12 * (1.0 + std::abs(r))) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<double> quadratic_roots(double c0, double c1, double c2) {
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
  if (scale == 0.0) return {};
  if (std::abs(c2) <= kLeadingTol * scale) {
    if (std::abs(c1) <= kLeadingTol * scale) return {};
    return {-c0 / c1};
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  const double disc_scale = std::max(c1 * c1, std::abs(4.0 * c2 * c0));
  if (std::abs(disc) <= kDiscriminantTol * disc_scale) return {-c1 / (2.0 * c2)};
  if (disc < 0.0) return {};
  // Citardauq-style evaluation avoids cancellation for the small root.
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  std::vector<double> roots{q / c2};
  if (q != 0.0) roots.push_back(c0 / q);
  return finish(std::move(roots));
}

std::vector<double> cubic_roots(double c0, double c1, double c2, double c3) {
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3)});
  if (scale == 0.0) return {};
  if (std::abs(c3) <= kLeadingTol * scale) return quadratic_roots(c0, c1, c2);

  const double A = c2 / c3;
  const double B = c1 / c3;
  const double C = c0 / c3;
  // x = t - A/3 gives t^3 + p t + q = 0.
  const double p = B - A * A / 3.0;
  const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
  const double shift = -A / 3.0;
  const double half_q = q / 2.0;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  const double disc_scale = std::max(half_q * half_q, std::abs(third_p * third_p * third_p));

  std::vector<double> roots;
  if (disc_scale == 0.0 || std::abs(disc) <= kDiscriminantTol * disc_scale) {
    // Repeated root: t = cbrt(q/2) twice, -2 cbrt(q/2) once.
    const double u = std::cbrt(half_q);
    roots = {-2.0 * u + shift, u + shift};
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-half_q + s);
    const double v = std::cbrt(-half_q - s);
    roots = {u + v + shift};
  } else {
    const double r = std::sqrt(-third_p);
    const double cos_arg = std::clamp(-half_q / (r * r * r), -1.0, 1.0);
    const double phi = std::acos(cos_arg);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(2.0 * r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0) + shift);
    }
  }
  const double coeffs[] = {c0, c1, c2, c3};
  for (auto& r : roots) r = polish(coeffs, r);
  return finish(std::move(roots));
}

std::vector<double> real_roots(std::span<const double> p) {
  const int deg = poly_degree(p);
  auto at = [&](int k) { return k < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(k)] : 0.0; };
  switch (deg) {
    case -1:
    case 0:
      return {};
    case 1:
      return {-at(0) / at(1)};
    case 2:
      return quadratic_roots(at(0), at(1), at(2));
    case 3:
      return cubic_roots(at(0), at(1), at(2), at(3));
    default:
      throw std::invalid_argument("real_roots: degree > 3 not supported");
  }
}

}  // namespace monospline
