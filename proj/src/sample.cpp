#include "monospline/sample.hpp"

#include <cstdio>
#include <ostream>

#include "monospline/errors.hpp"

namespace monospline {

namespace {

std::vector<double> abscissae(double lo, double hi, int n) {
  if (n < 2) throw DomainError("sample count must be at least 2");
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) xs[static_cast<std::size_t>(k)] = lo + step * k;
  xs.back() = hi;
  return xs;
}

}  // namespace

std::vector<SampleRow> sample(const PiecewisePolynomial& pp, int n, Execution exec) {
  const auto xs = abscissae(pp.lower(), pp.upper(), n);
  std::vector<SampleRow> rows(xs.size());
  const auto count = static_cast<long>(xs.size());
  auto row = [&](long k) {
    const double x = xs[static_cast<std::size_t>(k)];
    rows[static_cast<std::size_t>(k)] = {x, pp.eval(x, 0), pp.eval(x, 1), pp.eval(x, 2)};
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k) row(k);
  } else {
    for (long k = 0; k < count; ++k) row(k);
  }
  return rows;
}

std::vector<SampleRow> sample(const ParametricCurve& curve, int n, Execution exec) {
  const auto xs = abscissae(curve.x_min(), curve.x_max(), n);
  std::vector<SampleRow> rows(xs.size());
  const auto count = static_cast<long>(xs.size());
  auto row = [&](long k) {
    const double x = xs[static_cast<std::size_t>(k)];
    const double t = curve.parameter_at(x);
    rows[static_cast<std::size_t>(k)] = {x, curve.y(t), curve.graph_deriv1_at(t),
                                         curve.graph_deriv2_at(t)};
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k) row(k);
  } else {
    for (long k = 0; k < count; ++k) row(k);
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SampleRow>& rows) {
  os << "x,value,d1,d2\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.x, r.value, r.d1, r.d2);
    os << buf;
  }
}

}  // namespace monospline
