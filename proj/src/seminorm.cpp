#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "monospline/errors.hpp"
#include "monospline/global.hpp"

namespace monospline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

struct Problem {
  std::size_t n = 0;  // intervals
  std::vector<double> h;
  std::vector<double> s;
  std::vector<bool> forced;  // node slope pinned to zero
};

Problem make_problem(const HermiteDataset& ds) {
  ds.validate_shape();
  Problem p;
  p.n = ds.num_intervals();
  for (std::size_t i = 0; i < p.n; ++i) {
    if (ds.values[i + 1] < ds.values[i]) throw InfeasibleError("values decrease on interval " + std::to_string(i));
    p.h.push_back(ds.width(i));
    p.s.push_back(ds.secant(i));
  }
  p.forced.assign(p.n + 1, false);
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.s[i] == 0.0) p.forced[i] = p.forced[i + 1] = true;
  }
  return p;
}

double mstar_raw(double a, double b, double c) { return mstar({a, b, c}).as_double(); }

double term(const Problem& p, std::size_t i, double a, double b) { return mstar_raw(a, b, p.s[i]) / p.h[i]; }

double objective(const Problem& p, const std::vector<double>& d) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) f = std::max(f, term(p, i, d[i], d[i + 1]));
  return f;
}

// Max of the (at most two) terms touching node j when d_j = x.
double local_objective(const Problem& p, const std::vector<double>& d, std::size_t j, double x) {
  double f = 0.0;
  if (j > 0) f = std::max(f, term(p, j - 1, d[j - 1], x));
  if (j < p.n) f = std::max(f, term(p, j, x, d[j + 1]));
  return f;
}

struct Argmin {
  double x;
  double fx;
};

// Golden-section minimum of a quasi-convex f on [lo, hi]; endpoints are
// compared too so a boundary minimum is not lost.
template <class F>
Argmin golden_min(F&& f, double lo, double hi) {
  Argmin best{lo, f(lo)};
  const double fhi = f(hi);
  if (fhi < best.fx) best = {hi, fhi};
  double a = lo;
  double b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 < best.fx) best = {x1, f1};
  if (f2 < best.fx) best = {x2, f2};
  return best;
}

// Boundary of {pred}: pred(good) holds, pred(bad) fails; returns a point where
// pred holds, as close to the boundary as bisection allows.
template <class P>
double bisect_boundary(P&& pred, double good, double bad) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (good + bad);
    if (mid == good || mid == bad || std::abs(bad - good) <= 1e-15 * (1.0 + std::abs(good))) break;
    (pred(mid) ? good : bad) = mid;
  }
  return good;
}

std::vector<double> initial_slopes(const Problem& p) {
  std::vector<double> d(p.n + 1);
  d[0] = p.s[0];
  d[p.n] = p.s[p.n - 1];
  for (std::size_t i = 1; i < p.n; ++i) {
    const double l = p.s[i - 1];
    const double r = p.s[i];
    d[i] = l + r > 0.0 ? 2.0 * l * r / (l + r) : 0.0;
  }
  for (std::size_t i = 0; i <= p.n; ++i) {
    if (p.forced[i]) d[i] = 0.0;
  }
  return d;
}

double coordinate_descent(const Problem& p, std::vector<double>& d) {
  double f = objective(p, d);
  for (int sweep = 0; sweep < 1000; ++sweep) {
    const double before = f;
    for (std::size_t j = 0; j <= p.n; ++j) {
      if (p.forced[j]) continue;
      // Any improving value keeps every incident term <= f, and a term with
      // endpoint slope x is at least 2(x - 2 s_i) / h_i.
      double upper = kInf;
      if (j > 0) upper = std::min(upper, 2.0 * p.s[j - 1] + 0.5 * f * p.h[j - 1]);
      if (j < p.n) upper = std::min(upper, 2.0 * p.s[j] + 0.5 * f * p.h[j]);
      const double current = local_objective(p, d, j, d[j]);
      const auto best = golden_min([&](double x) { return local_objective(p, d, j, x); }, 0.0, upper);
      if (best.fx < current) d[j] = best.x;
    }
    f = objective(p, d);
    if (!(before - f > 1e-10 * before)) break;
  }
  return f;
}

struct Range {
  double lo;
  double hi;
};

// {b >= 0 : M*(a, b, s) <= K}. The set is an interval since the feasible
// region in (a, b) is convex.
std::optional<Range> slice(double a, double s, double K) {
  if (s == 0.0) {
    if (a == 0.0) return Range{0.0, 0.0};
    return std::nullopt;
  }
  const double lo = std::max(0.0, a - K);
  const double hi = a + K;
  auto g = [&](double b) { return mstar_raw(a, b, s); };
  const auto m = golden_min(g, lo, hi);
  if (m.fx > K) return std::nullopt;
  auto ok = [&](double b) { return g(b) <= K; };
  const double left = ok(lo) ? lo : bisect_boundary(ok, m.x, lo);
  const double right = ok(hi) ? hi : bisect_boundary(ok, m.x, hi);
  return Range{left, right};
}

// Image of the a-range S under the interval's feasible set.
std::optional<Range> project(Range S, double s, double K) {
  if (s == 0.0) {
    if (S.lo <= 0.0) return Range{0.0, 0.0};
    return std::nullopt;
  }
  auto reachable = [&](double a) { return slice(a, s, K).has_value(); };
  const double a_lo = reachable(0.0) ? 0.0 : bisect_boundary(reachable, s, 0.0);
  const double cap = 2.0 * s + K;
  const double a_hi = reachable(cap) ? cap : bisect_boundary(reachable, s, cap);
  const double p = std::max(S.lo, a_lo);
  const double q = std::min(S.hi, a_hi);
  if (p > q) return std::nullopt;
  auto upper = [&](double a) {
    const auto r = slice(a, s, K);
    return r ? -r->hi : kInf;
  };
  auto lower = [&](double a) {
    const auto r = slice(a, s, K);
    return r ? r->lo : kInf;
  };
  const double b_hi = -golden_min(upper, p, q).fx;
  const double b_lo = golden_min(lower, p, q).fx;
  if (!(b_lo <= b_hi)) return std::nullopt;
  return Range{b_lo, b_hi};
}

// Slopes with objective <= L, or nullopt when the chain propagation fails.
std::optional<std::vector<double>> feasible_at(const Problem& p, double L) {
  std::vector<Range> S(p.n + 1);
  S[0] = {0.0, kInf};
  for (std::size_t i = 0; i < p.n; ++i) {
    const auto next = project(S[i], p.s[i], L * p.h[i]);
    if (!next) return std::nullopt;
    S[i + 1] = *next;
  }
  std::vector<double> d(p.n + 1);
  d[p.n] = 0.5 * (S[p.n].lo + S[p.n].hi);
  for (std::size_t k = p.n; k-- > 0;) {
    // M* is symmetric in (a, b), so the a-slice at fixed b is slice(b, ...).
    const auto r = slice(d[k + 1], p.s[k], L * p.h[k]);
    Range target = S[k];
    if (r) {
      const double lo = std::max(r->lo, S[k].lo);
      const double hi = std::min(r->hi, S[k].hi);
      target = lo <= hi ? Range{lo, hi} : (r->hi < S[k].lo ? Range{r->hi, r->hi} : Range{r->lo, r->lo});
    }
    d[k] = std::isfinite(target.hi) ? 0.5 * (target.lo + target.hi) : target.lo;
  }
  return d;
}

}  // namespace

SeminormResult seminorm_with_slopes(const HermiteDataset& ds, const std::vector<double>& d) {
  const Problem p = make_problem(ds);
  if (d.size() != p.n + 1) throw DomainError("slope vector must have one entry per node");
  SeminormResult out;
  out.slopes = d;
  out.value = CurvatureValue::finite(0.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    const auto t = mstar({d[i], d[i + 1], p.s[i]}).scaled(1.0 / p.h[i]);
    out.per_interval.push_back(t);
    out.value = max(out.value, t);
  }
  return out;
}

SeminormResult optimize_slopes(const HermiteDataset& ds, Execution exec) {
  const Problem p = make_problem(ds);
  const auto init = initial_slopes(p);

  constexpr int kStarts = 9;  // the initial point plus 8 perturbations
  std::vector<std::vector<double>> starts(kStarts, init);
  std::mt19937_64 rng(0x6d6f6e6f);
  std::uniform_real_distribution<double> factor(0.5, 1.5);
  for (int k = 1; k < kStarts; ++k) {
    for (auto& v : starts[static_cast<std::size_t>(k)]) v *= factor(rng);
  }
  std::vector<double> values(kStarts);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < kStarts; ++k) {
      values[static_cast<std::size_t>(k)] = coordinate_descent(p, starts[static_cast<std::size_t>(k)]);
    }
  } else {
    for (int k = 0; k < kStarts; ++k) {
      values[static_cast<std::size_t>(k)] = coordinate_descent(p, starts[static_cast<std::size_t>(k)]);
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] < values[best]) best = k;
  }
  std::vector<double> d = starts[best];
  double f = values[best];

  // Level-set bisection: every level below lo failed the feasibility sweep.
  double lo = 0.0;
  double hi = f;
  if (f > 0.0) {
    for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (auto cand = feasible_at(p, mid)) {
        const double fc = objective(p, *cand);
        if (fc < f) {
          f = fc;
          d = std::move(*cand);
        }
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }

  auto out = seminorm_with_slopes(ds, d);
  out.lower_bound = std::min(lo, out.value.as_double());
  return out;
}

OracleResult seminorm_oracle_detailed(const HermiteDataset& ds, int grid, Execution exec) {
  if (grid < 16) throw DomainError("oracle grid must be at least 16");
  const Problem p = make_problem(ds);
  if (p.n > 4) throw UnsupportedError("seminorm oracle supports at most 4 intervals");
  const std::size_t nodes = p.n + 1;

  OracleResult out;
  const double smax = *std::max_element(p.s.begin(), p.s.end());
  if (smax == 0.0) {
    out.value = CurvatureValue::finite(0.0);
    out.slopes.assign(nodes, 0.0);
    return out;
  }
  const double step = 4.0 * smax / grid;
  out.grid_step = step;
  const std::size_t g = static_cast<std::size_t>(grid) + 1;

  std::vector<std::vector<double>> table(p.n, std::vector<double>(g * g));
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t ka = 0; ka < g; ++ka) {
      for (std::size_t kb = 0; kb < g; ++kb) {
        table[i][ka * g + kb] = term(p, i, step * static_cast<double>(ka), step * static_cast<double>(kb));
      }
    }
  }

  struct Best {
    double value = kInf;
    std::array<std::size_t, 5> idx{};
  };
  // Depth-first search over grid indices in lexicographic order, pruning any
  // prefix whose partial max already reaches the incumbent.
  auto search_from = [&](std::size_t k0, Best& best) {
    std::array<std::size_t, 5> idx{};
    idx[0] = k0;
    auto rec = [&](auto&& self, std::size_t level, double partial) -> void {
      if (level == nodes) {
        best.value = partial;
        best.idx = idx;
        return;
      }
      const double* row = table[level - 1].data() + idx[level - 1] * g;
      for (std::size_t k = 0; k < g; ++k) {
        const double v = std::max(partial, row[k]);
        if (v >= best.value) continue;
        idx[level] = k;
        self(self, level + 1, v);
      }
    };
    rec(rec, 1, 0.0);
  };

  Best best;
  if (exec == Execution::kParallel) {
    std::vector<Best> per_start(g);
    const auto count = static_cast<long>(g);
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < count; ++k) search_from(static_cast<std::size_t>(k), per_start[static_cast<std::size_t>(k)]);
    for (const auto& b : per_start) {
      if (b.value < best.value) best = b;
    }
  } else {
    for (std::size_t k = 0; k < g; ++k) search_from(k, best);
  }

  std::vector<double> d(nodes);
  for (std::size_t j = 0; j < nodes; ++j) d[j] = step * static_cast<double>(best.idx[j]);
  double value = best.value;

  // One refinement pass over half-step offsets around the grid minimum.
  std::size_t combos = 1;
  for (std::size_t j = 0; j < nodes; ++j) combos *= 3;
  std::vector<double> trial(nodes);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t code = c;
    for (std::size_t j = 0; j < nodes; ++j) {
      const double offset = (static_cast<double>(code % 3) - 1.0) * 0.5 * step;
      code /= 3;
      trial[j] = std::max(0.0, step * static_cast<double>(best.idx[j]) + offset);
    }
    const double v = objective(p, trial);
    if (v < value) {
      value = v;
      d = trial;
    }
  }

  out.value = CurvatureValue::finite(value);
  out.slopes = std::move(d);
  return out;
}

CurvatureValue seminorm_oracle(const HermiteDataset& ds, int grid, Execution exec) {
  return seminorm_oracle_detailed(ds, grid, exec).value;
}

}  // namespace monospline
