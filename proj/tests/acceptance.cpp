// Acceptance criteria 1-9; one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "monospline/classical.hpp"
#include "monospline/global.hpp"
#include "monospline/smoothing.hpp"
#include "monospline/twopoint.hpp"

using namespace monospline;

namespace {

struct Outcome {
  long checks = 0;
  long failures = 0;
  std::string first;  // first failure detail
  double seconds = 0.0;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

std::string triple_text(const TwoPointData& d) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", d.a, d.b, d.c);
  return buf;
}

double rel_err(double x, double y) { return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  TwoPointData triple() {
    const double a = uniform(0, 5), b = uniform(0, 5);
    double c = uniform(0, 5);
    while (c <= 0) c = uniform(0, 5);
    return {a, b, c};
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<TwoPointData> random_triples(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<TwoPointData> out;
  for (int k = 0; k < n; ++k) out.push_back(rng.triple());
  return out;
}

// Parametric second derivative from the coordinate derivatives.
double parametric_d2(const ParametricCurve& c, double t) {
  const double x1 = c.x(t, 1), x2 = c.x(t, 2), y1 = c.y(t, 1), y2 = c.y(t, 2);
  return (y2 * x1 - y1 * x2) / (x1 * x1 * x1);
}

// Integral of pp' by 3-point Gauss-Legendre per piece (exact for degree <= 5).
double integral_of_derivative(const PiecewisePolynomial& pp) {
  const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double total = 0.0;
  for (std::size_t j = 0; j < pp.num_pieces(); ++j) {
    const double lo = pp.breakpoints()[j], hi = pp.breakpoints()[j + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int q = 0; q < 3; ++q) total += half * weights[q] * poly_eval_derivative(pp.pieces()[j], mid + half * nodes[q] - lo, 1);
  }
  return total;
}

double max_jump(const PiecewisePolynomial& pp, int order) {
  double j = 0.0;
  const auto& bp = pp.breakpoints();
  for (std::size_t k = 1; k + 1 < bp.size(); ++k) j = std::max(j, std::abs(pp.eval(bp[k], order) - pp.eval_left(bp[k], order)));
  return j;
}

// ---- criteria --------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto ds = random_triples(1001, 500);
  const auto oracle = mstar_oracle_batch(ds, 2000);
  for (std::size_t k = 0; k < ds.size(); ++k) {
    const double m = mstar(ds[k]).value();
    const double v = oracle[k].as_double();
    o.check(std::abs(m - v) <= std::max(0.02, 0.02 * m),
            triple_text(ds[k]) + ": M* " + std::to_string(m) + " oracle " + std::to_string(v));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (const auto& d : random_triples(1001, 500)) {
    const auto g = optimal_interpolant(d);
    const double m = mstar(d).value();
    const double scale = 1.0 + d.a + d.b + d.c;
    const std::string t = triple_text(d);
    o.check(rel_err(sup_abs_deriv2(g), m) <= 1e-10, t + ": sup|G''| != M*");
    o.check(std::abs(g.eval(0.0)) <= 1e-12 * scale && std::abs(g.eval(1.0) - d.c) <= 1e-12 * scale &&
                std::abs(g.eval(0.0, 1) - d.a) <= 1e-12 * scale && std::abs(g.eval(1.0, 1) - d.b) <= 1e-12 * scale,
            t + ": endpoint jets");
    o.check(min_deriv1(g) >= -1e-12 * (1.0 + d.a + d.b), t + ": min G' < 0");
  }
  const struct { TwoPointData d; double want; } spots[] = {{{0, 0, 1}, 4.0}, {{1, 1, 0.25}, 4.0}, {{1, 1, 0.5}, 2.0}};
  for (const auto& s : spots) {
    o.check(rel_err(sup_abs_deriv2(optimal_interpolant(s.d)), s.want) <= 1e-10, triple_text(s.d) + ": spot value");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  Rng rng(1003);
  for (int k = 0; k < 500; ++k) {
    const double a = rng.uniform(0, 5), b = rng.uniform(0, 5);
    const TwoPointData d{a, b, std::max(a, b) + rng.uniform(0, 5)};
    const auto f = whitney_interpolant(d);
    o.check(min_deriv1(f) >= -1e-12, triple_text(d) + ": whitney not monotone");
    o.check(sup_abs_deriv2(f) <= 6.0 * mstar(d).value() + 1e-9, triple_text(d) + ": whitney above 6 M*");
  }
  o.check(min_deriv1(whitney_interpolant({3, 0.1, 1.55})) < 0.0, "(3, 0.1, 1.55) should lose monotonicity");
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(1004);
  int tested = 0;
  while (tested < 200) {
    const double a = rng.uniform(0, 5), b = rng.uniform(0, 5);
    const double lo = std::min(a, b), hi = std::max(a, b);
    const TwoPointData d{a, b, lo + (hi - lo) * rng.uniform(0, 1)};
    if (bezier_range_violation(d)) continue;
    ++tested;
    const auto c = bezier_interpolant(d);
    const double T = (d.b - d.c) / (d.b - d.a);
    const double want = (2.0 / 3.0) * std::pow(d.b - d.a, 3) / ((d.b - d.c) * (d.c - d.a));
    o.check(rel_err(std::abs(parametric_d2(c, T)), std::abs(want)) <= 1e-8, triple_text(d) + ": peak curvature");
  }
  const auto spot = bezier_interpolant({0, 2, 1});
  o.check(rel_err(std::abs(parametric_d2(spot, 0.5)), 16.0 / 3.0) <= 1e-8, "(0, 2, 1): 16/3");
  o.check(rel_err(bezier_peak_curvature({0, 2, 1}), 16.0 / 3.0) <= 1e-8, "(0, 2, 1): formula 16/3");
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(1005);
  int tested = 0;
  while (tested < 200) {
    const double a = rng.uniform(0, 5), b = rng.uniform(0, 5);
    if (std::abs(b - a) < 1e-9) continue;
    const double lambda = rng.uniform(0, 1) * std::min((a + b) / std::abs(b - a), 4.0);
    const TwoPointData d{a, b, 0.5 * (a + b) + rng.uniform(-1, 1) * 0.25 * lambda * std::abs(b - a)};
    if (!(lambda > 0) || bernstein_range_violation(d, lambda)) continue;
    ++tested;
    const auto r = bernstein_interpolant(d, lambda);
    const std::string t = triple_text(d) + " lambda " + std::to_string(lambda);
    o.check(sup_abs_deriv2(r.interpolant) <= 3.0 * (2.0 * lambda + 1.0) * mstar(d).value() + 1e-9, t + ": curvature");
    bool nonneg = true;
    for (int j = 0; j <= 1000; ++j) nonneg = nonneg && r.interpolant.eval(j / 1000.0, 1) >= 0.0;
    o.check(nonneg, t + ": v < 0");
    const double S = 4.0 * d.c - d.a - d.b;
    o.check(std::abs(r.solution.m1 + r.solution.m2 - S) <= 1e-12 * (1.0 + d.a + d.b + d.c), t + ": m1 + m2");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const auto& d : random_triples(1006, 300)) {
    const auto g = mollify_c2(d);
    const std::string t = triple_text(d);
    const double scale = 1.0 + d.a + d.b + d.c;
    o.check(max_jump(g, 2) <= 1e-9, t + ": G'' jump");
    o.check(sup_abs_deriv2(g) <= 1.2 * mstar(d).value() + 1e-9, t + ": above 1.2 M*");
    o.check(std::abs(integral_of_derivative(g) - d.c) <= 1e-12 * scale, t + ": integral of G' != c");
    o.check(min_deriv1(g) >= -1e-12, t + ": min G' < 0");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  {
    const HermiteDataset ds{{0, 1, 2}, {0, 0, 1}, {}};
    const auto r = optimize_slopes(ds);
    o.check(std::abs(r.value.value() - 2.0) <= 1e-6, "(0,1,2)/(0,0,1): value");
    o.check(std::abs(r.slopes[0]) <= 1e-6 && std::abs(r.slopes[1]) <= 1e-6 && std::abs(r.slopes[2] - 2.0) <= 1e-6,
            "(0,1,2)/(0,0,1): slopes");
    const HermiteDataset two{{0, 1.5}, {0.5, 2}, {}};
    o.check(optimize_slopes(two).value.value() == 0.0, "two nodes: value");
  }
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    HermiteDataset ds;
    double x = 0.0, f = 0.0;
    for (int i = 0; i <= 1 + k % 4; ++i) {
      ds.nodes.push_back(x);
      ds.values.push_back(f);
      x += 0.5 + U(gen);
      f += U(gen) < 0.2 ? 0.0 : U(gen);
    }
    const double v = optimize_slopes(ds).value.value();
    const double w = seminorm_oracle(ds, 64).value();
    o.check(std::abs(v - w) <= std::max(0.05, 0.05 * w),
            "dataset " + std::to_string(k) + ": optimizer " + std::to_string(v) + " oracle " + std::to_string(w));
  }
  return o;
}

HermiteDataset random_dataset(Rng& rng, int intervals) {
  HermiteDataset ds;
  double x = rng.uniform(-3, 3), f = rng.uniform(-1, 1);
  for (int i = 0; i <= intervals; ++i) {
    ds.nodes.push_back(x);
    ds.values.push_back(f);
    x += rng.uniform(0.2, 2.0);
    f += rng.uniform(0, 1) < 0.2 ? 0.0 : rng.uniform(0, 2);
  }
  std::vector<double> d(ds.nodes.size());
  for (auto& v : d) v = rng.uniform(0, 3);
  for (std::size_t i = 0; i + 1 < ds.nodes.size(); ++i) {
    if (ds.values[i] == ds.values[i + 1]) d[i] = d[i + 1] = 0.0;
  }
  ds.slopes = d;
  return ds;
}

Outcome criterion8() {
  Outcome o;
  Rng rng(1008);
  for (int k = 0; k < 50; ++k) {
    const auto ds = random_dataset(rng, 1 + k % 8);
    const auto g = assemble(ds, Method::kOptimal);
    double want = 0.0;
    for (std::size_t i = 0; i < ds.num_intervals(); ++i) {
      const auto p = local_data(ds, i);
      want = std::max(want, mstar(p.data).value() / p.h);
    }
    const double got = g.sup_abs_deriv2();
    o.check(want == 0.0 ? got <= 1e-12 : rel_err(got, want) <= 1e-10,
            "dataset " + std::to_string(k) + ": " + std::to_string(got) + " vs " + std::to_string(want));
    double jump = 0.0;
    for (std::size_t i = 1; i + 1 < ds.nodes.size(); ++i) {
      jump = std::max(jump, std::abs(g.spline()->eval(ds.nodes[i], 1) - g.spline()->eval_left(ds.nodes[i], 1)));
    }
    o.check(jump <= 1e-12 * 4.0, "dataset " + std::to_string(k) + ": F' jump " + std::to_string(jump));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(1009);
  // Identity: patching a smooth function with itself.
  for (int k = 0; k < 50; ++k) {
    const double x2 = rng.uniform(-10, 10), f2 = rng.uniform(-5, 5), d = rng.uniform(0.5, 3), q = rng.uniform(-0.2, 0.2);
    const double h1 = rng.uniform(0.5, 2), h2 = rng.uniform(0.5, 2);
    const Coeffs right_c{f2, d, q};
    const Coeffs left_c = poly_shift(right_c, -h1);
    const auto left = PiecewisePolynomial::single(x2 - h1, x2, left_c);
    const auto right = PiecewisePolynomial::single(x2, x2 + h2, right_c);
    const auto p = c2_patch(left, right, x2, c2_patch_max_delta(left, right, x2));
    double err = 0.0;
    for (int j = 0; j <= 400; ++j) {
      const double x = j == 400 ? x2 + h2 : x2 - h1 + (h1 + h2) * j / 400.0;
      err = std::max(err, std::abs(p.eval(x) - poly_eval(right_c, x - x2)) / (1.0 + std::abs(f2)));
    }
    o.check(err <= 1e-13, "identity patch error " + std::to_string(err));
  }
  // Patched nodes of mollified assemblies: C^2, monotone, curvature <= 10 M.
  for (int k = 0; k < 100; ++k) {
    const TwoPointData l = rng.triple();
    TwoPointData r = rng.triple();
    r.a = l.b;
    if (!(l.b > 0)) continue;
    const double x1 = rng.uniform(-5, 5), h1 = rng.uniform(0.2, 2), h2 = rng.uniform(0.2, 2), f1 = rng.uniform(-2, 2);
    const auto left = mollify_mapped({l.a, l.b, l.c}, x1, x1 + h1, f1);
    const double x2 = left.upper();
    const auto right = mollify_mapped({r.a, r.b, r.c}, x2, x2 + h2, left.eval(x2));
    const double M = std::max(sup_abs_deriv2(left), sup_abs_deriv2(right));
    const double delta = c2_patch_max_delta(left, right, x2);
    const auto p = c2_patch(left, right, x2, delta);
    const double eff = c2_patch_half_width(x2, delta);
    double jump = 0.0;
    for (double x : {x2 - eff, x2, x2 + eff}) jump = std::max(jump, std::abs(p.eval(x, 2) - p.eval_left(x, 2)));
    const std::string t = triple_text(l) + " | " + triple_text(r);
    o.check(jump <= 1e-9, t + ": window jump " + std::to_string(jump));
    o.check(min_deriv1(p) >= -1e-12 * (1.0 + l.b), t + ": not monotone");
    o.check(sup_abs_deriv2(p) <= 10.0 * M + 1e-9, t + ": above 10 M");
  }
  return o;
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    double budget;  // seconds; 0 for none
    std::function<Outcome()> run;
  } criteria[] = {
      {1, "formula-oracle agreement", 60.0, criterion1}, {2, "optimality attainment", 0.0, criterion2},
      {3, "Whitney certificate", 0.0, criterion3},       {4, "Bezier peak curvature", 0.0, criterion4},
      {5, "Bernstein certificate", 0.0, criterion5},     {6, "C2 mollification", 0.0, criterion6},
      {7, "trace seminorm", 120.0, criterion7},          {8, "global assembly", 0.0, criterion8},
      {9, "C2 patching", 0.0, criterion9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget == 0.0 || o.seconds <= c.budget;
    const bool pass = o.failures == 0 && in_time;
    failed += !pass;
    std::printf("criterion %d (%s): %s  [%ld checks, %ld failed, %.2f s%s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.checks, o.failures, o.seconds, in_time ? "" : ", over time budget");
    if (o.failures) std::printf("    first failure: %s\n", o.first.c_str());
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
