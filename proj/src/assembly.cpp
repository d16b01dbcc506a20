#include <algorithm>
#include <cmath>
#include <numeric>

#include "monospline/classical.hpp"
#include "monospline/errors.hpp"
#include "monospline/global.hpp"
#include "monospline/smoothing.hpp"

namespace monospline {

void HermiteDataset::validate_shape() const {
  if (nodes.size() < 2) throw DomainError("dataset needs at least two nodes");
  if (values.size() != nodes.size()) throw DomainError("values and nodes differ in length");
  if (slopes && slopes->size() != nodes.size()) throw DomainError("slopes and nodes differ in length");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || !std::isfinite(values[i])) throw DomainError("non-finite dataset entry");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("nodes must be strictly increasing");
  }
  if (slopes) {
    for (double d : *slopes) {
      if (!std::isfinite(d) || d < 0.0) throw DomainError("slopes must be finite and nonnegative");
    }
  }
}

void HermiteDataset::validate() const {
  validate_shape();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (values[i + 1] < values[i]) {
      throw InfeasibleError("values decrease on interval " + std::to_string(i));
    }
    if (slopes && values[i + 1] == values[i] && ((*slopes)[i] != 0.0 || (*slopes)[i + 1] != 0.0)) {
      throw InfeasibleError("interval " + std::to_string(i) + " is flat but has nonzero end slopes");
    }
  }
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kOptimal:
      return "optimal";
    case Method::kWhitney:
      return "whitney";
    case Method::kBezier:
      return "bezier";
    case Method::kBernstein:
      return "bernstein";
    case Method::kMollified:
      return "mollified";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (Method m : {Method::kOptimal, Method::kWhitney, Method::kBezier, Method::kBernstein, Method::kMollified}) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

LocalProblem local_data(const HermiteDataset& ds, std::size_t i) {
  if (!ds.slopes) throw DomainError("local_data requires slopes");
  if (i >= ds.num_intervals()) throw DomainError("interval index out of range");
  return {{(*ds.slopes)[i], (*ds.slopes)[i + 1], ds.secant(i)}, ds.width(i)};
}

GlobalInterpolant::GlobalInterpolant(HermiteDataset ds, std::vector<IntervalInfo> intervals,
                                     PiecewisePolynomial spline, std::vector<std::size_t> c11_nodes)
    : ds_(std::move(ds)), intervals_(std::move(intervals)), spline_(std::move(spline)),
      c11_nodes_(std::move(c11_nodes)) {}

GlobalInterpolant::GlobalInterpolant(HermiteDataset ds, std::vector<IntervalInfo> intervals,
                                     std::vector<ParametricCurve> curves)
    : ds_(std::move(ds)), intervals_(std::move(intervals)), curves_(std::move(curves)) {}

std::size_t GlobalInterpolant::interval_of(double x) const {
  const auto& xs = ds_.nodes;
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto idx = static_cast<std::ptrdiff_t>(it - xs.begin()) - 1;
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(ds_.num_intervals()) - 1));
}

double GlobalInterpolant::eval(double x, int order) const {
  if (spline_) return spline_->eval(x, order);
  if (!(x >= lower() && x <= upper())) throw DomainError("x outside the dataset range");
  const std::size_t i = interval_of(x);
  const double h = ds_.width(i);
  const double t = std::clamp((x - ds_.nodes[i]) / h, 0.0, 1.0);
  const double g = curve_eval(curves_[i], t, order);
  switch (order) {
    case 0:
      return ds_.values[i] + h * g;
    case 1:
      return g;
    case 2:
      return g / h;
    default:
      throw DomainError("curve interpolants support derivative orders 0..2");
  }
}

double GlobalInterpolant::sup_abs_deriv2() const {
  if (spline_) return monospline::sup_abs_deriv2(*spline_);
  double best = 0.0;
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    best = std::max(best, monospline::sup_abs_deriv2(curves_[i]) / ds_.width(i));
  }
  return best;
}

double GlobalInterpolant::min_deriv1() const {
  if (spline_) return monospline::min_deriv1(*spline_);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : curves_) best = std::min(best, monospline::min_deriv1(c));
  return best;
}

std::vector<SampleRow> GlobalInterpolant::sample(int n) const {
  if (spline_) return monospline::sample(*spline_, n);
  if (n < 2) throw DomainError("sample count must be at least 2");
  std::vector<SampleRow> rows(static_cast<std::size_t>(n));
  const double step = (upper() - lower()) / (n - 1);
  for (int k = 0; k < n; ++k) {
    const double x = k == n - 1 ? upper() : lower() + step * k;
    rows[static_cast<std::size_t>(k)] = {x, eval(x, 0), eval(x, 1), eval(x, 2)};
  }
  return rows;
}

AssemblyError::AssemblyError(std::vector<IntervalError> errors)
    : std::runtime_error([&] {
        std::string msg = "method out of range:";
        for (const auto& e : errors) msg += " [interval " + std::to_string(e.interval) + ": " + e.reason + "]";
        return msg;
      }()),
      errors_(std::move(errors)) {}

namespace {

// Splices C^2 windows around interior nodes with positive slope. Windows are
// disjoint (half-width at most a quarter of each adjacent interval).
PiecewisePolynomial patch_nodes(const HermiteDataset& ds, const PiecewisePolynomial& base,
                                std::vector<std::size_t>& c11_nodes) {
  struct Window {
    double lo, hi;
    PiecewisePolynomial piece;
  };
  std::vector<Window> windows;
  const auto& x = ds.nodes;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (!((*ds.slopes)[i] > 0.0)) {
      c11_nodes.push_back(i);
      continue;
    }
    const auto left = base.restrict(x[i - 1], x[i]);
    const auto right = base.restrict(x[i], x[i + 1]);
    const double delta = c2_patch_half_width(
        x[i], std::min({c2_patch_max_delta(left, right, x[i]), 0.25 * (x[i] - x[i - 1]), 0.25 * (x[i + 1] - x[i])}));
    if (!(delta > 0.0)) {
      c11_nodes.push_back(i);
      continue;
    }
    const auto patched = c2_patch(left, right, x[i], delta);
    windows.push_back({x[i] - delta, x[i] + delta, patched.restrict(x[i] - delta, x[i] + delta)});
  }
  if (windows.empty()) return base;
  std::optional<PiecewisePolynomial> out;
  double cursor = base.lower();
  auto append = [&](const PiecewisePolynomial& part) {
    out = out ? PiecewisePolynomial::concat(*out, part) : part;
  };
  for (const auto& w : windows) {
    append(base.restrict(cursor, w.lo));
    append(w.piece);
    cursor = w.hi;
  }
  append(base.restrict(cursor, base.upper()));
  return *out;
}

}  // namespace

GlobalInterpolant assemble(const HermiteDataset& ds, Method method) {
  ds.validate();
  if (!ds.slopes) throw DomainError("assemble requires slopes");
  const std::size_t n = ds.num_intervals();

  std::vector<IntervalError> errors;
  std::vector<IntervalInfo> infos(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto lp = local_data(ds, i);
    IntervalInfo& info = infos[i];
    info.method = method;
    info.data = lp.data;
    info.h = lp.h;
    info.mstar = mstar(lp.data).as_double();
    switch (method) {
      case Method::kWhitney:
        if (!in_whitney_range(lp.data)) errors.push_back({i, "whitney requires c >= max(a,b)"});
        break;
      case Method::kBezier:
        if (auto why = bezier_range_violation(lp.data)) errors.push_back({i, *why});
        break;
      case Method::kBernstein:
        try {
          info.lambda = bernstein_default_lambda(lp.data);
        } catch (const RangeError& e) {
          errors.push_back({i, e.what()});
        }
        break;
      case Method::kOptimal:
      case Method::kMollified:
        break;
    }
  }
  if (!errors.empty()) throw AssemblyError(std::move(errors));

  if (method == Method::kBezier) {
    std::vector<ParametricCurve> curves;
    for (auto& info : infos) {
      curves.push_back(bezier_interpolant(info.data));
      info.local_M = sup_abs_deriv2(curves.back());
    }
    return GlobalInterpolant(ds, std::move(infos), std::move(curves));
  }

  std::optional<PiecewisePolynomial> global;
  for (std::size_t i = 0; i < n; ++i) {
    IntervalInfo& info = infos[i];
    const double x0 = ds.nodes[i];
    const double x1 = ds.nodes[i + 1];
    if (method == Method::kMollified) {
      // Built in place rather than mapped, see mollify_mapped.
      info.local_M = sup_abs_deriv2(mollify_c2(info.data));
      auto piece = mollify_mapped(info.data, x0, x1, ds.values[i]);
      global = global ? PiecewisePolynomial::concat(*global, piece) : piece;
      continue;
    }
    PiecewisePolynomial local = [&] {
      switch (method) {
        case Method::kWhitney:
          return whitney_interpolant(info.data);
        case Method::kBernstein:
          return bernstein_interpolant(info.data, *info.lambda).interpolant;
        default:
          return optimal_interpolant(info.data);
      }
    }();
    info.local_M = sup_abs_deriv2(local);
    auto mapped = map_to_interval(local, x0, x1, ds.values[i]);
    global = global ? PiecewisePolynomial::concat(*global, mapped) : mapped;
  }

  std::vector<std::size_t> c11_nodes;
  if (method == Method::kMollified) {
    global = patch_nodes(ds, *global, c11_nodes);
  }
  return GlobalInterpolant(ds, std::move(infos), std::move(*global), std::move(c11_nodes));
}

}  // namespace monospline
