#include <doctest.h>

#include "monospline/classical.hpp"
#include "monospline/errors.hpp"
#include "support.hpp"

using namespace monospline;

namespace {

double M(const TwoPointData& d) { return mstar(d).value(); }

// Parametric second derivative (y'' x' - y' x'') / x'^3.
double graph_d2(const ParametricCurve& c, double t) {
  const double x1 = c.x(t, 1), x2 = c.x(t, 2), y1 = c.y(t, 1), y2 = c.y(t, 2);
  return (y2 * x1 - y1 * x2) / (x1 * x1 * x1);
}

TwoPointData whitney_triple(test::Rng& rng) {
  const double a = rng.uniform(0.0, 5.0), b = rng.uniform(0.0, 5.0);
  return {a, b, std::max(a, b) + rng.uniform(0.0, 5.0)};
}

TwoPointData bezier_triple(test::Rng& rng) {
  double a = rng.uniform(0.0, 5.0), b = rng.uniform(0.0, 5.0);
  while (std::abs(a - b) < 1e-3) b = rng.uniform(0.0, 5.0);
  const double lo = std::min(a, b), hi = std::max(a, b);
  return {a, b, lo + (hi - lo) * rng.uniform(0.01, 0.99)};
}

}  // namespace

TEST_CASE("whitney examples") {
  const auto f = whitney_interpolant({0, 0, 1});
  for (double x : {0.0, 0.3, 0.6, 1.0}) CHECK(f.eval(x) == doctest::Approx(3 * x * x - 2 * x * x * x));
  CHECK(sup_abs_deriv2(f) / M({0, 0, 1}) == doctest::Approx(1.5));
  const auto id = whitney_interpolant({1, 1, 1});
  CHECK(sup_abs_deriv2(id) <= 1e-14);
  CHECK(id.eval(0.4) == doctest::Approx(0.4));
  CHECK(min_deriv1(whitney_interpolant({3, 0.1, 1.55})) < 0.0);
  CHECK_FALSE(in_whitney_range({3, 0.1, 1.55}));
  CHECK(in_whitney_range({1, 2, 2}));
}

TEST_CASE("whitney in range: monotone with the 6 M* certificate; derivative identity") {
  test::Rng rng(31);
  for (int k = 0; k < 500; ++k) {
    const auto d = whitney_triple(rng);
    const auto f = whitney_interpolant(d);
    const double scale = 1.0 + d.a + d.b + d.c;
    CHECK(min_deriv1(f) >= -1e-12);
    CHECK(sup_abs_deriv2(f) <= 6 * M(d) + 1e-9);
    CHECK(std::abs(f.eval(1.0) - d.c) <= 1e-12 * scale);
    CHECK(std::abs(f.eval(0.0, 1) - d.a) <= 1e-12 * scale);
    CHECK(std::abs(f.eval(1.0, 1) - d.b) <= 1e-12 * scale);
    if (k < 50) {
      for (int j = 0; j < 100; ++j) {
        const double x = j / 99.0;
        CHECK(std::abs(whitney_deriv1_identity(d, x) - f.eval(x, 1)) <= 1e-11 * scale);
      }
    }
  }
  CHECK(whitney_blend(0.0) == 1.0);
  CHECK(whitney_blend(1.0) == 0.0);
  CHECK(whitney_blend(0.5, 1) == doctest::Approx(-1.5));
}

TEST_CASE("bezier examples") {
  auto ctl = bezier_control({0, 2, 1});
  CHECK(ctl.T == doctest::Approx(0.5));
  CHECK(ctl.m == 0.0);
  const auto c = bezier_interpolant({0, 2, 1});
  for (double t : {0.1, 0.5, 0.9}) CHECK(c.x(t) == doctest::Approx(1.5 * t * (1 - t) + t * t * t));
  ctl = bezier_control({2, 0, 1});
  CHECK(ctl.T == doctest::Approx(0.5));
  CHECK(ctl.m == doctest::Approx(1.0));
  CHECK(bezier_range_violation({1, 1, 1}).has_value());
  CHECK(bezier_range_violation({0, 2, 2}).has_value());  // strict: c = max(a, b) is out
  CHECK_THROWS_AS(bezier_interpolant({1, 1, 1}), RangeError);
  CHECK_THROWS_AS(bezier_peak_curvature({0.2, 0.3, 5}), RangeError);
}

TEST_CASE("bezier peak curvature") {
  CHECK(bezier_peak_curvature({0, 2, 1}) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
  CHECK(bezier_peak_curvature({0, 2, 1.9}) == doctest::Approx((2.0 / 3.0) * 8.0 / (0.1 * 1.9)).epsilon(1e-12));
  test::Rng rng(32);
  for (int k = 0; k < 200; ++k) {
    const auto d = bezier_triple(rng);
    const auto c = bezier_interpolant(d);
    const double T = bezier_control(d).T;
    const double want = (2.0 / 3.0) * std::pow(d.b - d.a, 3) / ((d.b - d.c) * (d.c - d.a));
    CHECK(test::close_rel(std::abs(graph_d2(c, T)), std::abs(want), 1e-8));
    CHECK(test::close_rel(bezier_peak_curvature(d), std::abs(want), 1e-12));
    CHECK(test::close_rel(bezier_peak_curvature({d.b, d.a, d.a + d.b - d.c}), bezier_peak_curvature(d), 1e-9));
    // interpolation and monotonicity
    const double scale = 1.0 + d.a + d.b + d.c;
    CHECK(std::abs(c.y(1.0) - d.c) <= 1e-12 * scale);
    CHECK(std::abs(c.x(1.0) - 1.0) <= 1e-12);
    CHECK(std::abs(c.graph_deriv1_at(0.0) - d.a) <= 1e-12 * scale);
    CHECK(std::abs(c.graph_deriv1_at(1.0) - d.b) <= 1e-12 * scale);
    for (int j = 0; j <= 1000; ++j) {
      const double t = j / 1000.0;
      CHECK(c.x(t, 1) > 0.0);
      CHECK(c.y(t, 1) >= -1e-12 * scale);
    }
  }
}

TEST_CASE("bernstein examples") {
  const auto id = bernstein_interpolant({1, 1, 1}, 1.0);
  CHECK(id.solution.m1 == doctest::Approx(1.0));
  CHECK(id.solution.m2 == doctest::Approx(1.0));
  CHECK(sup_abs_deriv2(id.interpolant) <= 1e-14);
  const auto r = bernstein_interpolant({0, 2, 1}, 1.0);
  CHECK(r.solution.m1 == doctest::Approx(0.0).scale(1.0));
  CHECK(r.solution.m2 == doctest::Approx(2.0));
  for (double t : {0.2, 0.5, 0.8}) CHECK(r.interpolant.eval(t) == doctest::Approx(2 * t * t * t - t * t * t * t));
  CHECK(sup_abs_deriv2(r.interpolant) == doctest::Approx(3.0));
  const auto mirror = bernstein_interpolant({2, 0, 1}, 1.0);
  CHECK(mirror.solution.m1 == doctest::Approx(2.0));
  CHECK(mirror.solution.m2 == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(bernstein_interpolant({0.2, 0.3, 5}, 1.0), RangeError);
  CHECK_THROWS_AS(bernstein_default_lambda({0.2, 0.3, 5}), RangeError);
  CHECK(bernstein_range_violation({1, 2, 1.5}, 4.0).has_value());  // lambda > (a+b)/|b-a| = 3
}

TEST_CASE("bernstein certificate on admissible pairs") {
  test::Rng rng(33);
  int tested = 0;
  while (tested < 200) {
    double a = rng.uniform(0.0, 5.0), b = rng.uniform(0.0, 5.0);
    if (std::abs(b - a) < 1e-6) continue;
    const double lmax = (a + b) / std::abs(b - a);
    const double lambda = rng.uniform(0.0, 1.0) * std::min(lmax, 4.0);
    if (!(lambda > 0.0)) continue;
    const double c = 0.5 * (a + b) + rng.uniform(-1.0, 1.0) * 0.25 * lambda * std::abs(b - a);
    const TwoPointData d{a, b, c};
    if (bernstein_range_violation(d, lambda)) continue;
    ++tested;
    const auto r = bernstein_interpolant(d, lambda);
    const auto& s = r.solution;
    const double scale = 1.0 + a + b + c;
    CHECK(std::abs(s.m1 + s.m2 - (4 * c - a - b)) <= 1e-12 * scale);
    CHECK(std::abs(s.m1 - a) <= lambda * std::abs(b - a) * (1 + 1e-12) + 1e-12);
    CHECK(std::abs(s.m2 - b) <= lambda * std::abs(b - a) * (1 + 1e-12) + 1e-12);
    CHECK(sup_abs_deriv2(r.interpolant) <= 3 * (2 * lambda + 1) * M(d) + 1e-9);
    for (int j = 0; j <= 1000; ++j) CHECK(r.interpolant.eval(j / 1000.0, 1) >= -1e-12 * scale);
    CHECK(std::abs(r.interpolant.eval(1.0) - c) <= 1e-12 * scale);
  }
  // default lambda is admissible when it exists
  const double l = bernstein_default_lambda({1, 2, 1.6});
  CHECK_FALSE(bernstein_range_violation({1, 2, 1.6}, l).has_value());
}

TEST_CASE("bernstein_proportional is uncertified outside the range") {
  const auto far = bernstein_proportional({0.2, 0.3, 5});
  CHECK(far.solution.m1 + far.solution.m2 == doctest::Approx(19.5));
  CHECK(far.interpolant.eval(1.0) == doctest::Approx(5.0));
  CHECK(min_deriv1(far.interpolant) >= 0.0);
  const auto small = bernstein_proportional({3, 4, 0.1});
  CHECK(small.interpolant.eval(1.0) == doctest::Approx(0.1));
  CHECK(min_deriv1(small.interpolant) < 0.0);
}
