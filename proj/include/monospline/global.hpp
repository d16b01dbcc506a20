#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "monospline/curve.hpp"
#include "monospline/execution.hpp"
#include "monospline/piecewise.hpp"
#include "monospline/sample.hpp"
#include "monospline/twopoint.hpp"

namespace monospline {

/// Nodes x_0 < ... < x_N with nondecreasing values and optional slopes.
struct HermiteDataset {
  std::vector<double> nodes;
  std::vector<double> values;
  std::optional<std::vector<double>> slopes;

  std::size_t num_intervals() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  double width(std::size_t i) const { return nodes[i + 1] - nodes[i]; }
  double secant(std::size_t i) const { return (values[i + 1] - values[i]) / width(i); }

  // Shape checks: N >= 1, equal lengths, finite, strictly increasing nodes,
  // nonnegative slopes. DomainError on failure.
  void validate_shape() const;
  // Adds the monotone-value and flat-interval consistency checks
  // (InfeasibleError).
  void validate() const;
};

enum class Method { kOptimal, kWhitney, kBezier, kBernstein, kMollified };

const char* method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

struct LocalProblem {
  TwoPointData data;
  double h = 0.0;
};

// (a, b, c) = (d_i, d_{i+1}, s_i) and h_i. Requires slopes.
LocalProblem local_data(const HermiteDataset& ds, std::size_t i);

struct IntervalInfo {
  Method method = Method::kOptimal;
  TwoPointData data;
  double h = 0.0;
  double local_M = 0.0;           // sup|G_i''| of the unit-interval construction
  double mstar = 0.0;             // M*(a, b, c) (finite for admissible data)
  std::optional<double> lambda;   // Bernstein only
};

/// Global interpolant over [x_0, x_N]. Polynomial methods carry a single
/// PiecewisePolynomial; the Bezier method carries one parametric curve per
/// interval in normalized coordinates.
class GlobalInterpolant {
 public:
  GlobalInterpolant(HermiteDataset ds, std::vector<IntervalInfo> intervals, PiecewisePolynomial spline,
                    std::vector<std::size_t> c11_nodes);
  GlobalInterpolant(HermiteDataset ds, std::vector<IntervalInfo> intervals,
                    std::vector<ParametricCurve> curves);

  const HermiteDataset& dataset() const noexcept { return ds_; }
  const std::vector<IntervalInfo>& intervals() const noexcept { return intervals_; }
  const std::optional<PiecewisePolynomial>& spline() const noexcept { return spline_; }
  const std::vector<ParametricCurve>& curves() const noexcept { return curves_; }
  // Interior nodes left at C^{1,1} by the mollified method.
  const std::vector<std::size_t>& c11_nodes() const noexcept { return c11_nodes_; }

  double lower() const { return ds_.nodes.front(); }
  double upper() const { return ds_.nodes.back(); }

  double eval(double x, int order = 0) const;
  double sup_abs_deriv2() const;
  double min_deriv1() const;
  std::vector<SampleRow> sample(int n) const;

 private:
  std::size_t interval_of(double x) const;

  HermiteDataset ds_;
  std::vector<IntervalInfo> intervals_;
  std::optional<PiecewisePolynomial> spline_;
  std::vector<ParametricCurve> curves_;
  std::vector<std::size_t> c11_nodes_;
};

struct IntervalError {
  std::size_t interval = 0;
  std::string reason;
};

/// Thrown by assemble when some intervals are outside the method's range.
class AssemblyError : public std::runtime_error {
 public:
  explicit AssemblyError(std::vector<IntervalError> errors);
  const std::vector<IntervalError>& errors() const noexcept { return errors_; }

 private:
  std::vector<IntervalError> errors_;
};

GlobalInterpolant assemble(const HermiteDataset& ds, Method method);

struct SeminormResult {
  CurvatureValue value;
  std::vector<double> slopes;
  std::vector<CurvatureValue> per_interval;
  // Certified lower bound from the level-set search (optimize_slopes only).
  std::optional<double> lower_bound;
};

// max_i M*(d_i, d_{i+1}, s_i) / h_i.
SeminormResult seminorm_with_slopes(const HermiteDataset& ds, const std::vector<double>& d);

// Heuristic minimizer of seminorm_with_slopes over d >= 0: forced zeros,
// secant-based start, cyclic golden-section coordinate descent with
// multi-start, then level-set bisection polish.
SeminormResult optimize_slopes(const HermiteDataset& ds, Execution exec = Execution::kParallel);

struct OracleResult {
  CurvatureValue value;
  std::vector<double> slopes;
  double grid_step = 0.0;
};

// Grid minimum over d_i in {0, D, ..., 4 max s} (D = 4 max s / grid), then one
// refinement pass at half-step around the best point. N <= 4, grid >= 16.
OracleResult seminorm_oracle_detailed(const HermiteDataset& ds, int grid,
                                      Execution exec = Execution::kParallel);
CurvatureValue seminorm_oracle(const HermiteDataset& ds, int grid, Execution exec = Execution::kParallel);

}  // namespace monospline
