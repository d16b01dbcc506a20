#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace monospline {

// Dense polynomial coefficients, lowest degree first.
using Coeffs = std::vector<double>;

inline constexpr int kMaxDegree = 5;

double poly_eval(std::span<const double> p, double x);

// Value of the order-th derivative at x.
double poly_eval_derivative(std::span<const double> p, double x, int order);

Coeffs poly_derivative(std::span<const double> p);

// Antiderivative with the given constant term.
Coeffs poly_antiderivative(std::span<const double> p, double constant = 0.0);

// q(u) = p(scale * u + offset), computed with Horner-style composition.
Coeffs poly_compose_affine(std::span<const double> p, double scale, double offset);

// q(u) = p(u + offset); re-expansion about a new origin.
inline Coeffs poly_shift(std::span<const double> p, double offset) {
  return poly_compose_affine(p, 1.0, offset);
}

Coeffs poly_add(std::span<const double> p, std::span<const double> q);
Coeffs poly_scale(std::span<const double> p, double s);

// Degree ignoring exact trailing zeros; -1 for the zero polynomial.
int poly_degree(std::span<const double> p);

// Real roots of c0 + c1 x + c2 x^2 (+ c3 x^3), sorted ascending, repeated
// roots reported once. Near-zero leading coefficients (relative 1e-14) fall
// back to the lower degree. Discriminants within 1e-14 of zero (relative to
// the coefficient scale) are treated as double roots.
std::vector<double> quadratic_roots(double c0, double c1, double c2);
std::vector<double> cubic_roots(double c0, double c1, double c2, double c3);

// Roots of a polynomial of degree <= 3 given as coefficients.
std::vector<double> real_roots(std::span<const double> p);

}  // namespace monospline
