#include "monospline/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "monospline/classical.hpp"
#include "monospline/errors.hpp"
#include "monospline/global.hpp"
#include "monospline/io.hpp"
#include "monospline/smoothing.hpp"

namespace monospline {

namespace {

using Outcome = std::optional<std::string>;
using Check = std::function<Outcome(const TwoPointData&, const MstarFunction&)>;

struct Property {
  const char* name;
  Check check;
};

std::string fmt(double v) { return format_shortest(v); }

bool close(double x, double y, double rel, double abs = 0.0) {
  return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y)) + abs;
}

double scale_of(const TwoPointData& d) { return 1.0 + d.a + d.b + d.c; }

Outcome check_homogeneity(const TwoPointData& d, const MstarFunction& m) {
  const double base = m(d).as_double();
  for (double lam : {0.5, 2.0, 10.0}) {
    const double scaled = m({lam * d.a, lam * d.b, lam * d.c}).as_double();
    if (!close(scaled, lam * base, 1e-12)) return "lambda=" + fmt(lam) + ": " + fmt(scaled) + " vs " + fmt(lam * base);
  }
  return std::nullopt;
}

Outcome check_symmetry(const TwoPointData& d, const MstarFunction& m) {
  const double x = m(d).as_double();
  const double y = m({d.b, d.a, d.c}).as_double();
  if (!close(x, y, 1e-14)) return fmt(x) + " vs swapped " + fmt(y);
  return std::nullopt;
}

Outcome check_midpoint_gap(const TwoPointData& d, const MstarFunction& m) {
  const double gap = std::abs(d.b - d.a);
  const double mid = 0.5 * (d.a + d.b);
  if (mid > 0.0) {
    const double at_mid = m({d.a, d.b, mid}).as_double();
    if (!close(at_mid, gap, 1e-12, 1e-15)) return "M*(a,b,(a+b)/2) = " + fmt(at_mid) + ", expected " + fmt(gap);
  }
  const double v = m(d).as_double();
  if (v < gap * (1.0 - 1e-12)) return "M* = " + fmt(v) + " below |b-a| = " + fmt(gap);
  return std::nullopt;
}

Outcome check_branch_continuity(const TwoPointData& d, const MstarFunction& m) {
  const double c0 = c0_threshold(d);
  const double eps = 1e-8;
  if (c0 <= 10.0 * eps) return std::nullopt;
  const double lo = m({d.a, d.b, c0 - eps}).as_double();
  const double hi = m({d.a, d.b, c0 + eps}).as_double();
  const double slope_scale = 1.0 + (d.a * d.a + d.b * d.b) / (c0 * c0);
  if (std::abs(lo - hi) > 10.0 * eps * slope_scale) return "jump " + fmt(std::abs(lo - hi)) + " across c0";
  return std::nullopt;
}

Outcome check_oracle(const TwoPointData& d, const MstarFunction& m) {
  constexpr int n = 1000;
  const double v = m(d).as_double();
  const double o = mstar_oracle(d, n).as_double();
  // the oracle's bracket grows past a + b + 4c + 1 on the plateau branch
  const double range = std::max(d.a + d.b + 4.0 * d.c + 1.0 - std::abs(d.b - d.a), o);
  const double tol = 5.0 * (range / n + range * std::ldexp(1.0, -40));
  if (std::abs(v - o) > tol) return "M* = " + fmt(v) + ", oracle " + fmt(o);
  return std::nullopt;
}

Outcome check_attainment(const TwoPointData& d, const MstarFunction& m) {
  const auto G = optimal_interpolant(d);
  const double M = m(d).as_double();
  const double sup = sup_abs_deriv2(G);
  if (!close(sup, M, 1e-10, 1e-14)) return "sup|G''| = " + fmt(sup) + " vs M* " + fmt(M);
  const double s = scale_of(d);
  if (std::abs(G.eval(0.0)) > 1e-12 * s || std::abs(G.eval(1.0) - d.c) > 1e-12 * s ||
      std::abs(G.eval(0.0, 1) - d.a) > 1e-12 * s || std::abs(G.eval(1.0, 1) - d.b) > 1e-12 * s) {
    return std::string("endpoint jets do not match");
  }
  if (min_deriv1(G) < -1e-12 * (1.0 + d.a + d.b)) return "negative slope " + fmt(min_deriv1(G));
  return std::nullopt;
}

Outcome check_envelopes(const TwoPointData& d, const MstarFunction& m) {
  const double M = m(d).as_double();
  const auto lo = lower_envelope(d, M).function();
  const auto hi = upper_envelope(d, M).function();
  const auto v = optimal_interpolant(d).derivative();
  for (int k = 0; k <= 200; ++k) {
    const double t = k / 200.0;
    const double vt = v.eval(t);
    if (vt < lo.eval(t) - 1e-10 || vt > hi.eval(t) + 1e-10) return "profile leaves the band at t=" + fmt(t);
  }
  return std::nullopt;
}

Outcome check_spline_core(const TwoPointData& d, const MstarFunction&) {
  const auto G = optimal_interpolant(d);
  const auto dG = G.derivative();
  const double M = sup_abs_deriv2(G);
  const double h = 1e-6;
  for (int k = 1; k < 20; ++k) {
    const double t = k / 20.0 + 0.0123;
    if (t - h <= 0.0 || t + h >= 1.0) continue;
    const double fd = (G.eval(t + h) - G.eval(t - h)) / (2.0 * h);
    const double exact = dG.eval(t);
    if (std::abs(fd - exact) > 1e-6 * (1.0 + std::abs(exact)) + M * h) {
      return "finite difference " + fmt(fd) + " vs derivative " + fmt(exact) + " at t=" + fmt(t);
    }
  }
  double sampled = 0.0;
  for (int k = 0; k <= 1000; ++k) sampled = std::max(sampled, std::abs(G.eval(k / 1000.0, 2)));
  if (sampled > M * (1.0 + 1e-12)) return "sampled |G''| " + fmt(sampled) + " above sup " + fmt(M);
  const auto report = smoothness_report(G);
  if (report.max_value_jump > 1e-12 * scale_of(d)) return "value jump " + fmt(report.max_value_jump);
  return std::nullopt;
}

Outcome check_whitney(const TwoPointData& d, const MstarFunction& m) {
  if (!in_whitney_range(d)) return std::nullopt;
  const auto F = whitney_interpolant(d);
  const double M = m(d).as_double();
  if (min_deriv1(F) < -1e-12) return "min F' = " + fmt(min_deriv1(F));
  if (sup_abs_deriv2(F) > 6.0 * M + 1e-9) return "sup|F''| = " + fmt(sup_abs_deriv2(F)) + " above 6 M*";
  for (int k = 0; k <= 20; ++k) {
    const double x = k / 20.0;
    const double id = whitney_deriv1_identity(d, x);
    if (std::abs(id - F.eval(x, 1)) > 1e-11 * scale_of(d)) return "derivative identity fails at x=" + fmt(x);
  }
  return std::nullopt;
}

Outcome check_bezier(const TwoPointData& d, const MstarFunction&) {
  if (bezier_range_violation(d)) return std::nullopt;
  const auto curve = bezier_interpolant(d);
  for (int k = 0; k <= 200; ++k) {
    const double t = k / 200.0;
    if (!(curve.x(t, 1) > 0.0)) return "x'(t) <= 0 at t=" + fmt(t);
    if (curve.y(t, 1) < -1e-12 * scale_of(d)) return "y'(t) < 0 at t=" + fmt(t);
  }
  const double T = bezier_control(d).T;
  const double signed_peak = (2.0 / 3.0) * std::pow(d.b - d.a, 3) / ((d.b - d.c) * (d.c - d.a));
  const double at_T = curve.graph_deriv2_at(T);
  if (!close(at_T, signed_peak, 1e-8)) return "G''(x(T)) = " + fmt(at_T) + " vs " + fmt(signed_peak);
  return std::nullopt;
}

Outcome check_bernstein(const TwoPointData& d, const MstarFunction& m) {
  double lambda = 0.0;
  try {
    lambda = bernstein_default_lambda(d);
  } catch (const RangeError&) {
    return std::nullopt;
  }
  const auto res = bernstein_interpolant(d, lambda);
  const auto& G = res.interpolant;
  for (int k = 0; k <= 200; ++k) {
    if (G.eval(k / 200.0, 1) < -1e-12 * scale_of(d)) return "v < 0 at t=" + fmt(k / 200.0);
  }
  const double M = m(d).as_double();
  if (sup_abs_deriv2(G) > 3.0 * (2.0 * lambda + 1.0) * M + 1e-9) return "curvature above 3(2 lambda + 1) M*";
  const double S = res.solution.m1 + res.solution.m2;
  if (std::abs(S - (4.0 * d.c - d.a - d.b)) > 1e-12 * scale_of(d)) return "m1 + m2 = " + fmt(S);
  return std::nullopt;
}

Outcome check_mollify(const TwoPointData& d, const MstarFunction& m) {
  const auto G = mollify_c2(d);
  const auto r = smoothness_report(G);
  const double s = scale_of(d);
  const double M = m(d).as_double();
  if (r.max_deriv2_jump > 1e-9) return "G'' jump " + fmt(r.max_deriv2_jump);
  if (std::abs(G.eval(1.0) - d.c) > 1e-12 * s) return "integral " + fmt(G.eval(1.0)) + " vs c";
  if (std::abs(G.eval(0.0, 1) - d.a) > 1e-12 * s || std::abs(G.eval(1.0, 1) - d.b) > 1e-12 * s) {
    return std::string("endpoint slopes do not match");
  }
  if (r.sup_abs_deriv2 > 1.2 * M + 1e-9) return "sup|G''| = " + fmt(r.sup_abs_deriv2) + " above 1.2 M*";
  if (r.min_deriv1 < -1e-12) return "min G' = " + fmt(r.min_deriv1);
  return std::nullopt;
}

double dyadic(double v) { return std::round(v * 1024.0) / 1024.0; }

// Three nodes built from the triple, on a dyadic grid so that integer
// translations are exact.
HermiteDataset derived_dataset(const TwoPointData& d) {
  HermiteDataset ds;
  const double h0 = dyadic(1.0 + d.a / 5.0);
  const double h1 = dyadic(0.5 + d.b / 5.0);
  ds.nodes = {0.0, h0, h0 + h1};
  const double f1 = dyadic(d.c * h0);
  const double f2 = f1 + dyadic((0.5 * (d.a + d.b) + 0.5 * d.c) * h1);
  ds.values = {0.0, f1, f2};
  ds.slopes = std::vector<double>{d.a, d.b, d.c};
  if (f1 == 0.0) (*ds.slopes)[0] = (*ds.slopes)[1] = 0.0;
  if (f2 == f1) (*ds.slopes)[1] = (*ds.slopes)[2] = 0.0;
  return ds;
}

Outcome check_global(const TwoPointData& d, const MstarFunction& m) {
  const auto ds = derived_dataset(d);
  const auto F = assemble(ds, Method::kOptimal);
  double expected = 0.0;
  for (std::size_t i = 0; i < ds.num_intervals(); ++i) {
    const auto lp = local_data(ds, i);
    expected = std::max(expected, m(lp.data).as_double() / lp.h);
  }
  if (!close(F.sup_abs_deriv2(), expected, 1e-10, 1e-14)) {
    return "global curvature " + fmt(F.sup_abs_deriv2()) + " vs max M*_i/h_i " + fmt(expected);
  }
  const auto r = smoothness_report(*F.spline());
  if (r.max_deriv1_jump > 1e-12 * scale_of(d)) return "slope jump " + fmt(r.max_deriv1_jump);
  return std::nullopt;
}

Outcome check_seminorm_laws(const TwoPointData& d, const MstarFunction&) {
  HermiteDataset ds = derived_dataset(d);
  const auto dvec = *ds.slopes;
  ds.slopes.reset();
  const auto base = seminorm_with_slopes(ds, dvec);
  HermiteDataset moved = ds;
  for (auto& x : moved.nodes) x += 3.0;
  for (auto& f : moved.values) f += 2.0;
  const auto shifted = seminorm_with_slopes(moved, dvec);
  if (!(shifted.value == base.value) || shifted.per_interval != base.per_interval) {
    return std::string("translation changed the seminorm");
  }
  HermiteDataset tall = ds;
  for (auto& f : tall.values) f *= 3.0;
  auto d3 = dvec;
  for (auto& v : d3) v *= 3.0;
  const auto scaled = seminorm_with_slopes(tall, d3);
  if (!close(scaled.value.as_double(), 3.0 * base.value.as_double(), 1e-12)) {
    return "scaling by 3 gave " + fmt(scaled.value.as_double()) + " vs " + fmt(3.0 * base.value.as_double());
  }
  return std::nullopt;
}

Outcome check_optimizer(const TwoPointData& d, const MstarFunction&) {
  HermiteDataset ds = derived_dataset(d);
  const auto dvec = *ds.slopes;
  ds.slopes.reset();
  const auto best = optimize_slopes(ds, Execution::kSerial);
  const double given = seminorm_with_slopes(ds, dvec).value.as_double();
  if (best.value.as_double() > given * (1.0 + 1e-12)) {
    return "optimizer " + fmt(best.value.as_double()) + " above the value at the data slopes " + fmt(given);
  }
  ds.slopes = best.slopes;
  const double attained = assemble(ds, Method::kOptimal).sup_abs_deriv2();
  if (!close(attained, best.value.as_double(), 1e-10, 1e-14)) {
    return "assembled curvature " + fmt(attained) + " vs optimizer " + fmt(best.value.as_double());
  }
  return std::nullopt;
}

const std::vector<Property>& properties() {
  static const std::vector<Property> list{
      {"mstar homogeneity", check_homogeneity},
      {"mstar symmetry", check_symmetry},
      {"mstar midpoint gap", check_midpoint_gap},
      {"mstar branch continuity", check_branch_continuity},
      {"mstar oracle agreement", check_oracle},
      {"optimal attainment", check_attainment},
      {"envelope sandwich", check_envelopes},
      {"spline evaluation", check_spline_core},
      {"whitney certificate", check_whitney},
      {"bezier range behaviour", check_bezier},
      {"bernstein certificate", check_bernstein},
      {"mollified C2 interpolant", check_mollify},
      {"global rescaling", check_global},
      {"seminorm translation and scaling", check_seminorm_laws},
  };
  return list;
}

Outcome run_check(const Check& check, const TwoPointData& d, const MstarFunction& m) {
  try {
    return check(d, m);
  } catch (const std::exception& e) {
    return std::string("threw: ") + e.what();
  }
}

TwoPointData random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  TwoPointData d{5.0 * U(rng), 5.0 * U(rng), 0.0};
  d.c = 5.0 * (1.0 - U(rng));  // (0, 5]
  const double pick = U(rng);
  if (pick < 0.08) {
    d.a = 0.0;
  } else if (pick < 0.16) {
    d.b = 0.0;
  } else if (pick < 0.24 && d.a + d.b > 0.0) {
    d.c = 0.5 * (d.a + d.b);
  } else if (pick < 0.32 && c0_threshold(d) > 0.0) {
    d.c = c0_threshold(d);
  }
  return d;
}

// Lower score = simpler value.
int complexity(double x) {
  if (x == 0.0) return 0;
  if (x == 1.0) return 1;
  if (x == std::round(x)) return 2;
  if (2.0 * x == std::round(2.0 * x)) return 3;
  if (10.0 * x == std::round(10.0 * x)) return 4;
  return 5;
}

bool simpler(double cand, double cur) {
  const int a = complexity(cand);
  const int b = complexity(cur);
  return a < b || (a == b && std::abs(cand) < std::abs(cur));
}

}  // namespace

TwoPointData minimize_counterexample(const TwoPointData& d, const std::function<bool(const TwoPointData&)>& fails) {
  TwoPointData cur = d;
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    for (int coord = 0; coord < 3; ++coord) {
      double* slot = coord == 0 ? &cur.a : coord == 1 ? &cur.b : &cur.c;
      const double x = *slot;
      for (double cand : {0.0, 1.0, std::round(x), std::round(2.0 * x) / 2.0, std::round(10.0 * x) / 10.0, 0.5 * x}) {
        if (cand == x || !simpler(cand, x) || cand < 0.0 || (coord == 2 && cand <= 0.0)) continue;
        *slot = cand;
        bool still = false;
        try {
          still = fails(cur);
        } catch (const std::exception&) {
          still = false;
        }
        if (still) {
          changed = true;
          break;
        }
        *slot = x;
      }
    }
    if (!changed) break;
  }
  return cur;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport report;
  const MstarFunction m = opts.mstar_override ? opts.mstar_override : MstarFunction(mstar);
  std::mt19937_64 rng(opts.seed);
  const auto& props = properties();
  std::vector<bool> already(props.size() + 1, false);
  for (int k = 0; k < opts.cases; ++k) {
    const TwoPointData d = random_triple(rng);
    ++report.cases;
    auto record = [&](std::size_t idx, const char* name, const Check& check, const std::string& detail) {
      if (already[idx]) return;
      already[idx] = true;
      std::ostringstream line;
      line << name << ": case " << k << " (a=" << fmt(d.a) << ", b=" << fmt(d.b) << ", c=" << fmt(d.c)
           << "): " << detail;
      report.failures.push_back(line.str());
      if (!report.counterexample) {
        const auto small = minimize_counterexample(d, [&](const TwoPointData& t) {
          return run_check(check, t, m).has_value();
        });
        report.counterexample = Counterexample{name, small, run_check(check, small, m).value_or(detail)};
      }
    };
    for (std::size_t p = 0; p < props.size(); ++p) {
      ++report.checks;
      if (auto bad = run_check(props[p].check, d, m)) record(p, props[p].name, props[p].check, *bad);
    }
    // The optimizer is the slow part; sample it on every tenth case.
    if (k % 10 == 0) {
      ++report.checks;
      if (auto bad = run_check(check_optimizer, d, m)) {
        record(props.size(), "optimizer consistency", check_optimizer, *bad);
      }
    }
  }
  return report;
}

}  // namespace monospline
