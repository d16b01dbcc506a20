#include "monospline/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "monospline/classical.hpp"
#include "monospline/errors.hpp"
#include "monospline/global.hpp"
#include "monospline/io.hpp"
#include "monospline/smoothing.hpp"
#include "monospline/twopoint.hpp"

namespace monospline {

namespace {

using json = nlohmann::json;

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw DomainError(what + ": not a number: '" + text + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) throw DomainError(what + ": not a seed: '" + text + "'");
  return v;
}

TwoPointData triple(const std::vector<std::string>& abc) {
  TwoPointData d{parse_number(abc[0], "a"), parse_number(abc[1], "b"), parse_number(abc[2], "c")};
  d.validate();
  return d;
}

Method method_of(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw DomainError("unknown method '" + name + "'");
  return *m;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

json number(const CurvatureValue& v) { return v.is_infinite() ? json("inf") : json(v.value()); }

// Curvature over M*; null when M* is 0 or infinite.
json ratio(double curvature, const CurvatureValue& m) {
  if (m.is_infinite() || m.value() == 0.0) return nullptr;
  return curvature / m.value();
}

// Pretty printer with sorted keys and shortest round-trip floats.
void render(std::ostream& os, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      os << pad << "  " << json(it.key()).dump() << ": ";
      render(os, it.value(), depth + 1);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array()) {
    const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
    if (j.empty() || flat) {
      os << "[";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ", ";
        render(os, j[k], depth + 1);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      os << pad << "  ";
      render(os, j[k], depth + 1);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else if (j.is_number_float()) {
    os << format_shortest(j.get<double>());
  } else {
    os << j.dump();
  }
}

void print_report(std::ostream& os, const json& j) {
  render(os, j, 0);
  os << "\n";
}

std::string csv_text(const std::vector<SampleRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

// A unit-interval construction: a polynomial or, for Bezier, a curve.
struct Local {
  std::optional<PiecewisePolynomial> pp;
  std::optional<ParametricCurve> curve;
  std::optional<double> lambda;
  std::string note;

  double curvature() const { return pp ? sup_abs_deriv2(*pp) : sup_abs_deriv2(*curve); }
  double min_d1() const { return pp ? min_deriv1(*pp) : min_deriv1(*curve); }
  std::vector<SampleRow> rows(int n) const { return pp ? sample(*pp, n) : sample(*curve, n); }
  std::string spline_json() const { return pp ? spline_to_json(*pp) : curve_to_json(*curve); }
};

Local build_local(const TwoPointData& d, Method method, std::optional<double> lambda,
                  std::optional<double> delta) {
  Local out;
  switch (method) {
    case Method::kOptimal:
      out.pp = optimal_interpolant(d);
      break;
    case Method::kWhitney:
      if (!in_whitney_range(d)) throw RangeError("whitney requires c >= max(a, b)");
      out.pp = whitney_interpolant(d);
      break;
    case Method::kBezier:
      if (auto why = bezier_range_violation(d)) throw RangeError(*why);
      out.curve = bezier_interpolant(d);
      break;
    case Method::kBernstein: {
      const double l = lambda ? *lambda : bernstein_default_lambda(d);
      out.pp = bernstein_interpolant(d, l).interpolant;
      out.lambda = l;
      break;
    }
    case Method::kMollified: {
      MollifyConfig cfg;
      cfg.delta = delta;
      out.pp = mollify_c2(d, cfg);
      break;
    }
  }
  return out;
}

json triple_json(const TwoPointData& d) { return {{"a", d.a}, {"b", d.b}, {"c", d.c}}; }

// ---- mstar ----------------------------------------------------------------

int cmd_mstar(const std::vector<std::string>& abc, std::ostream& out) {
  const TwoPointData d = triple(abc);
  const MstarBranch branch = mstar_branch(d);
  const CurvatureValue v = mstar(d);
  if (branch == MstarBranch::kZero || branch == MstarBranch::kInfeasible) {
    out << v.to_string() << "\n";
    return kExitOk;
  }
  out << v.to_string() << " (branch: " << branch_name(branch) << ", c0=" << format_shortest(c0_threshold(d))
      << ")\n";
  return kExitOk;
}

// ---- interp ---------------------------------------------------------------

struct OutputOptions {
  int samples = 201;
  std::string out;
};

int cmd_interp(const std::vector<std::string>& abc, const std::string& method_text, const OutputOptions& o,
               std::optional<double> lambda, std::optional<double> delta, std::ostream& out) {
  const TwoPointData d = triple(abc);
  const Method method = method_of(method_text);
  const Local g = build_local(d, method, lambda, delta);
  const CurvatureValue m = mstar(d);
  const double curvature = g.curvature();

  json report = {{"command", "interp"},
                 {"method", method_name(method)},
                 {"data", triple_json(d)},
                 {"mstar", number(m)},
                 {"c0", c0_threshold(d)},
                 {"curvature", curvature},
                 {"ratio", ratio(curvature, m)},
                 {"min_deriv1", g.min_d1()}};
  if (g.lambda) report["lambda"] = *g.lambda;
  if (g.pp) {
    const SmoothnessReport s = smoothness_report(*g.pp);
    report["jumps"] = {{"value", s.max_value_jump}, {"deriv1", s.max_deriv1_jump}, {"deriv2", s.max_deriv2_jump}};
  }
  json outputs = json::array();
  if (!o.out.empty()) {
    const auto rows = g.rows(o.samples);
    write_file(o.out + ".csv", csv_text(rows));
    write_file(o.out + ".json", g.spline_json());
    outputs = {o.out + ".csv", o.out + ".json"};
  }
  report["outputs"] = outputs;
  print_report(out, report);
  return kExitOk;
}

// ---- global ---------------------------------------------------------------

HermiteDataset load_dataset(const std::string& path) {
  const std::string text = read_file(path);
  HermiteDataset ds;
  try {
    ds = dataset_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ds;
}

// Largest one-sided jumps of F' and F'' across interior nodes.
std::pair<double, double> node_jumps(const GlobalInterpolant& gi) {
  const auto& xs = gi.dataset().nodes;
  double j1 = 0.0, j2 = 0.0;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    double l1, l2, r1, r2;
    if (gi.spline()) {
      l1 = gi.spline()->eval_left(xs[i], 1);
      l2 = gi.spline()->eval_left(xs[i], 2);
      r1 = gi.spline()->eval(xs[i], 1);
      r2 = gi.spline()->eval(xs[i], 2);
    } else {
      const auto& cl = gi.curves()[i - 1];
      const auto& cr = gi.curves()[i];
      l1 = cl.graph_deriv1_at(1.0);
      l2 = cl.graph_deriv2_at(1.0) / gi.dataset().width(i - 1);
      r1 = cr.graph_deriv1_at(0.0);
      r2 = cr.graph_deriv2_at(0.0) / gi.dataset().width(i);
    }
    j1 = std::max(j1, std::abs(l1 - r1));
    j2 = std::max(j2, std::abs(l2 - r2));
  }
  return {j1, j2};
}

std::string global_json(const GlobalInterpolant& gi) {
  if (gi.spline()) return spline_to_json(*gi.spline());
  json curves = json::array();
  for (const auto& c : gi.curves()) curves.push_back(json::parse(curve_to_json(c)));
  const json doc = {{"nodes", gi.dataset().nodes}, {"values", gi.dataset().values}, {"curves", curves}};
  return doc.dump() + "\n";
}

int cmd_global(const std::string& path, const std::string& method_text, const OutputOptions& o, std::ostream& out) {
  const Method method = method_of(method_text);
  HermiteDataset ds = load_dataset(path);
  ds.validate();
  std::string slope_source = "data";
  if (!ds.slopes) {
    ds.slopes = optimize_slopes(ds).slopes;
    slope_source = "optimized";
  }
  const GlobalInterpolant gi = assemble(ds, method);

  json rows = json::array();
  double predicted = 0.0;
  for (std::size_t i = 0; i < gi.intervals().size(); ++i) {
    const IntervalInfo& info = gi.intervals()[i];
    json row = {{"interval", i},
                {"a", info.data.a},
                {"b", info.data.b},
                {"c", info.data.c},
                {"h", info.h},
                {"local_M", info.local_M},
                {"mstar", info.mstar},
                {"scaled_M", info.local_M / info.h}};
    if (info.lambda) row["lambda"] = *info.lambda;
    predicted = std::max(predicted, info.local_M / info.h);
    rows.push_back(row);
  }
  const auto [j1, j2] = node_jumps(gi);
  json report = {{"command", "global"},
                 {"method", method_name(method)},
                 {"slopes", *ds.slopes},
                 {"slope_source", slope_source},
                 {"intervals", rows},
                 {"curvature", gi.sup_abs_deriv2()},
                 {"max_scaled_M", predicted},
                 {"min_deriv1", gi.min_deriv1()},
                 {"node_jumps", {{"deriv1", j1}, {"deriv2", j2}}},
                 {"c11_nodes", gi.c11_nodes()}};
  json outputs = json::array();
  if (!o.out.empty()) {
    write_file(o.out + ".csv", csv_text(gi.sample(o.samples)));
    write_file(o.out + ".json", global_json(gi));
    outputs = {o.out + ".csv", o.out + ".json"};
  }
  report["outputs"] = outputs;
  print_report(out, report);
  return kExitOk;
}

// ---- seminorm -------------------------------------------------------------

json curvature_list(const std::vector<CurvatureValue>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(number(v));
  return a;
}

int cmd_seminorm(const std::string& path, std::optional<int> grid, std::ostream& out) {
  HermiteDataset ds = load_dataset(path);
  ds.slopes.reset();
  ds.validate();
  const SeminormResult r = optimize_slopes(ds);
  json report = {{"command", "seminorm"},
                 {"value", number(r.value)},
                 {"slopes", r.slopes},
                 {"per_interval", curvature_list(r.per_interval)}};
  report["lower_bound"] = r.lower_bound ? json(*r.lower_bound) : json(nullptr);
  if (grid) {
    const OracleResult o = seminorm_oracle_detailed(ds, *grid);
    report["oracle"] = {{"grid", *grid}, {"value", number(o.value)}, {"slopes", o.slopes}, {"grid_step", o.grid_step}};
    report["gap"] = number(o.value.as_double() - r.value.as_double());
  }
  print_report(out, report);
  return kExitOk;
}

// ---- compare --------------------------------------------------------------

struct CompareRow {
  std::string method;
  bool emitted = false;
  double curvature = 0.0;
  double min_d1 = 0.0;
  json ratio;
  bool monotone = false;
  std::string note;
};

int cmd_compare(const std::vector<std::string>& abc, const OutputOptions& o, std::ostream& out) {
  const TwoPointData d = triple(abc);
  const CurvatureValue m = mstar(d);
  const double mono_tol = 1e-12 * (1.0 + d.a + d.b);
  std::vector<CompareRow> rows;

  auto emit = [&](const std::string& name, const Local& g, std::string note) {
    CompareRow row{name, true, g.curvature(), g.min_d1(), nullptr, false, std::move(note)};
    row.ratio = ratio(row.curvature, m);
    row.monotone = row.min_d1 >= -mono_tol;
    if (!o.out.empty()) write_file(o.out + "/" + name + ".csv", csv_text(g.rows(o.samples)));
    rows.push_back(row);
  };
  auto skip = [&](const std::string& name, std::string reason) {
    CompareRow row;
    row.method = name;
    row.note = std::move(reason);
    rows.push_back(row);
  };

  if (m.is_infinite()) {
    skip("optimal", "infeasible: c = 0 < a + b");
  } else {
    emit("optimal", build_local(d, Method::kOptimal, {}, {}), "");
  }
  {
    Local g;
    g.pp = whitney_interpolant(d);
    emit("whitney", g, in_whitney_range(d) ? "in range c >= max(a, b)" : "outside range c >= max(a, b)");
  }
  if (auto why = bezier_range_violation(d)) {
    skip("bezier", *why);
  } else {
    emit("bezier", build_local(d, Method::kBezier, {}, {}), "");
  }
  try {
    emit("bernstein", build_local(d, Method::kBernstein, {}, {}), "");
  } catch (const RangeError& e) {
    // No admissible lambda: the proportional split, as plotted in the
    // method comparison, without a certificate.
    Local g;
    g.pp = bernstein_proportional(d).interpolant;
    emit("bernstein", g, std::string("uncertified, ") + e.what());
  }

  auto ratio_text = [](const json& r) { return r.is_null() ? std::string("n/a") : format_shortest(r.get<double>()); };
  std::ostringstream csv;
  csv << "method,status,curvature,min_deriv1,ratio,monotone,note\n";
  out << "M* = " << m.to_string() << "\n";
  out << std::left << std::setw(10) << "method" << std::setw(9) << "status" << std::setw(24) << "curvature"
      << std::setw(24) << "min_deriv1" << std::setw(24) << "ratio" << std::setw(9) << "monotone"
      << "note\n";
  for (const auto& r : rows) {
    if (!r.emitted) {
      csv << r.method << ",skipped,,,,,\"" << r.note << "\"\n";
      out << std::setw(10) << r.method << std::setw(9) << "skipped" << std::setw(81) << "" << r.note << "\n";
      continue;
    }
    csv << r.method << ",emitted," << format_g17(r.curvature) << "," << format_g17(r.min_d1) << ","
        << (r.ratio.is_null() ? std::string() : format_g17(r.ratio.get<double>())) << ","
        << (r.monotone ? "yes" : "no") << ",\"" << r.note << "\"\n";
    out << std::setw(10) << r.method << std::setw(9) << "emitted" << std::setw(24) << format_shortest(r.curvature)
        << std::setw(24) << format_shortest(r.min_d1) << std::setw(24) << ratio_text(r.ratio) << std::setw(9)
        << (r.monotone ? "yes" : "no") << r.note << "\n";
  }
  if (!o.out.empty()) write_file(o.out + "/summary.csv", csv.str());
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(std::uint64_t seed, int cases, const CliHooks& hooks, std::ostream& out) {
  if (const char* env = std::getenv("MONOSPLINE_SEED"); env && *env) seed = parse_seed(env, "MONOSPLINE_SEED");
  if (cases < 0) throw DomainError("cases must be nonnegative");
  VerifyOptions opts;
  opts.seed = seed;
  opts.cases = cases;
  opts.mstar_override = hooks.verify_mstar;
  const VerifyReport r = run_verify(opts);
  out << r.cases << " cases, " << r.checks << " checks, " << r.failures.size() << " failures (seed " << seed
      << ")\n";
  if (r.ok()) return kExitOk;
  for (const auto& f : r.failures) out << "FAIL " << f << "\n";
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    out << "counterexample: " << c.property << " at (a, b, c) = (" << format_shortest(c.data.a) << ", "
        << format_shortest(c.data.b) << ", " << format_shortest(c.data.c) << "): " << c.detail << "\n";
  }
  return kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliHooks& hooks) {
  CLI::App app{"Monotone C^{1,1} and C^2 Hermite interpolation", "monospline"};
  app.require_subcommand(1);

  std::vector<std::string> abc;
  std::string method = "optimal";
  std::string data;
  OutputOptions o;
  std::optional<double> lambda;
  std::optional<double> delta;
  std::optional<int> grid;
  std::uint64_t seed = 42;
  int cases = 200;

  auto add_triple = [&](CLI::App* sub) { sub->add_option("abc", abc, "a b c")->expected(3)->required(); };
  auto add_outputs = [&](CLI::App* sub, const char* out_help) {
    sub->add_option("--samples", o.samples, "sample count")->check(CLI::Range(2, 100000000));
    sub->add_option("--out", o.out, out_help);
  };

  auto* mstar_cmd = app.add_subcommand("mstar", "print M*(a, b, c) with its branch");
  add_triple(mstar_cmd);

  auto* interp_cmd = app.add_subcommand("interp", "two-point interpolant on [0, 1]");
  add_triple(interp_cmd);
  interp_cmd->add_option("--method", method, "optimal | whitney | bezier | bernstein | mollified");
  interp_cmd->add_option("--lambda", lambda, "Bernstein lambda (default: smallest admissible)");
  interp_cmd->add_option("--delta", delta, "mollifier splice width (default: automatic)");
  add_outputs(interp_cmd, "output prefix: writes <out>.csv and <out>.json");

  auto* global_cmd = app.add_subcommand("global", "interpolant over a dataset");
  global_cmd->add_option("--data", data, "dataset JSON")->required();
  global_cmd->add_option("--method", method, "optimal | whitney | bezier | bernstein | mollified");
  add_outputs(global_cmd, "output prefix: writes <out>.csv and <out>.json");

  auto* seminorm_cmd = app.add_subcommand("seminorm", "trace seminorm of a value-only dataset");
  seminorm_cmd->add_option("--data", data, "dataset JSON")->required();
  seminorm_cmd->add_option("--oracle", grid, "also run the grid oracle at this resolution");

  auto* compare_cmd = app.add_subcommand("compare", "all four two-point methods side by side");
  add_triple(compare_cmd);
  add_outputs(compare_cmd, "output directory for <method>.csv and summary.csv");

  auto* verify_cmd = app.add_subcommand("verify", "seeded invariant suite");
  verify_cmd->add_option("--seed", seed, "RNG seed (MONOSPLINE_SEED overrides)");
  verify_cmd->add_option("--cases", cases, "number of random cases");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (mstar_cmd->parsed()) return cmd_mstar(abc, out);
    if (interp_cmd->parsed()) return cmd_interp(abc, method, o, lambda, delta, out);
    if (global_cmd->parsed()) return cmd_global(data, method, o, out);
    if (seminorm_cmd->parsed()) return cmd_seminorm(data, grid, out);
    if (compare_cmd->parsed()) return cmd_compare(abc, o, out);
    if (verify_cmd->parsed()) return cmd_verify(seed, cases, hooks, out);
  } catch (const AssemblyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRange;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRange;
  } catch (const InfeasibleError& e) {
    err << "error: infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    // DomainError, ParseError, ConfigError, UnsupportedError, I/O failures.
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace monospline
