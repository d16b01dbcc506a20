#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "monospline/cli.hpp"
#include "monospline/io.hpp"
#include "monospline/sample.hpp"

using namespace monospline;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const CliHooks& hooks = {}) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

nlohmann::json report(const Run& r) { return nlohmann::json::parse(r.out); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "monospline_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_dataset(const fs::path& dir, const std::string& name, const std::string& json) {
  const auto p = dir / name;
  write_file(p, json);
  return p.string();
}

}  // namespace

TEST_CASE("mstar command") {
  CHECK(run({"mstar", "1", "1", "0.5"}).out == "2 (branch: boundary c=c0, c0=0.5)\n");
  CHECK(run({"mstar", "0", "0", "0"}).out == "0\n");
  CHECK(run({"mstar", "1", "2", "0"}).out == "inf\n");
  CHECK(run({"mstar", "0", "0", "1"}).out == "4 (branch: tent c>c0, c0=0)\n");
  CHECK(run({"mstar", "-1", "2", "0"}).code == kExitBadInput);
  CHECK(run({"mstar", "1", "x", "0"}).code == kExitBadInput);
  CHECK(run({"mstar", "1", "2"}).code == kExitBadInput);
  CHECK(run({"nonsense"}).code == kExitBadInput);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("interp command") {
  auto r = report(run({"interp", "0", "0", "1", "--method", "optimal"}));
  CHECK(r["curvature"].get<double>() == doctest::Approx(4.0));
  r = report(run({"interp", "0", "0", "1", "--method", "whitney"}));
  CHECK(r["curvature"].get<double>() == doctest::Approx(6.0));
  CHECK(r["ratio"].get<double>() == doctest::Approx(1.5));
  r = report(run({"interp", "1", "1", "1", "--method", "bernstein"}));
  CHECK(r["curvature"].get<double>() == doctest::Approx(0.0).scale(1.0));
  r = report(run({"interp", "1", "1", "0.25", "--method", "mollified"}));
  CHECK(r["curvature"].get<double>() <= 4.8);
  CHECK(r["jumps"]["deriv2"].get<double>() <= 1e-9);

  const auto bad = run({"interp", "3", "0.1", "1.55", "--method", "whitney"});
  CHECK(bad.code == kExitRange);
  CHECK(bad.err.find("c >= max(a, b)") != std::string::npos);
  CHECK(run({"interp", "1", "1", "1", "--method", "bezier"}).code == kExitRange);
  CHECK(run({"interp", "1", "1", "1", "--method", "pchip"}).code == kExitBadInput);
  CHECK(run({"interp", "1", "2", "0"}).code == kExitInfeasible);
}

TEST_CASE("outputs round-trip and are deterministic") {
  const auto dir = scratch("roundtrip");
  for (const std::string method : {"optimal", "mollified", "bernstein", "whitney"}) {
    const auto prefix = (dir / method).string();
    REQUIRE(run({"interp", "1.5", "2", "2.2", "--method", method, "--samples", "101", "--out", prefix}).code == 0);
    const auto csv = read_file(prefix + ".csv");
    const auto pp = spline_from_json(read_file(prefix + ".json"));
    std::ostringstream again;
    write_csv(again, sample(pp, 101));
    CHECK(again.str() == csv);
    REQUIRE(run({"interp", "1.5", "2", "2.2", "--method", method, "--samples", "101", "--out", prefix + "2"}).code == 0);
    CHECK(read_file(prefix + "2.csv") == csv);
    CHECK(read_file(prefix + "2.json") == read_file(prefix + ".json"));
  }
  const auto prefix = (dir / "bezier").string();
  REQUIRE(run({"interp", "0", "2", "1", "--method", "bezier", "--samples", "11", "--out", prefix}).code == 0);
  std::ostringstream again;
  write_csv(again, sample(curve_from_json(read_file(prefix + ".json")), 11));
  CHECK(again.str() == read_file(prefix + ".csv"));

  const auto data = write_dataset(dir, "g.json", R"({"nodes":[0,1,2,3.5],"values":[0,0.4,1.5,1.6]})");
  REQUIRE(run({"global", "--data", data, "--out", (dir / "g1").string()}).code == 0);
  REQUIRE(run({"global", "--data", data, "--out", (dir / "g2").string()}).code == 0);
  CHECK(read_file(dir / "g1.csv") == read_file(dir / "g2.csv"));
  std::ostringstream g;
  write_csv(g, sample(spline_from_json(read_file(dir / "g1.json")), 201));
  CHECK(g.str() == read_file(dir / "g1.csv"));
}

TEST_CASE("global command") {
  const auto dir = scratch("global");
  auto line = write_dataset(dir, "line.json", R"({"nodes":[0,1,3],"values":[1,3,7],"slopes":[2,2,2]})");
  auto r = report(run({"global", "--data", line}));
  CHECK(r["curvature"].get<double>() == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  auto ex = write_dataset(dir, "ex.json", R"({"nodes":[0,1,2],"values":[0,0,1],"slopes":[0,0,2]})");
  r = report(run({"global", "--data", ex, "--method", "optimal"}));
  CHECK(r["curvature"].get<double>() == doctest::Approx(2.0));
  CHECK(r["slope_source"] == "data");
  CHECK(r["node_jumps"]["deriv1"].get<double>() == 0.0);
  auto wh = write_dataset(dir, "wh.json", R"({"nodes":[0,1,2,3],"values":[0,2,2.5,5],"slopes":[2,2,1,2]})");
  const auto bad = run({"global", "--data", wh, "--method", "whitney"});
  CHECK(bad.code == kExitRange);
  CHECK(bad.err.find("interval 1") != std::string::npos);
  auto noslopes = write_dataset(dir, "ns.json", R"({"nodes":[0,1,2],"values":[0,0,1]})");
  r = report(run({"global", "--data", noslopes}));
  CHECK(r["slope_source"] == "optimized");
  CHECK(r["curvature"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(run({"global", "--data", ex, "--method", "bezier"}).code == kExitRange);  // interval 0 has a = b
  CHECK(run({"global", "--data", (dir / "missing.json").string()}).code == kExitBadInput);
  auto broken = write_dataset(dir, "broken.json", "{\"nodes\":[0,1],\n\"values\":[0,");
  const auto pe = run({"global", "--data", broken});
  CHECK(pe.code == kExitBadInput);
  CHECK(pe.err.find("line 2") != std::string::npos);
  auto down = write_dataset(dir, "down.json", R"({"nodes":[0,1],"values":[1,0],"slopes":[0,0]})");
  CHECK(run({"global", "--data", down}).code == kExitInfeasible);
}

TEST_CASE("seminorm command") {
  const auto dir = scratch("seminorm");
  auto ex = write_dataset(dir, "ex.json", R"({"nodes":[0,1,2],"values":[0,0,1]})");
  auto r = report(run({"seminorm", "--data", ex, "--oracle", "64"}));
  CHECK(std::abs(r["value"].get<double>() - 2.0) <= 1e-6);
  CHECK(r["slopes"][2].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(r["oracle"]["value"].get<double>() - 2.0) <= 0.1);
  CHECK(r.contains("gap"));
  auto two = write_dataset(dir, "two.json", R"({"nodes":[0,1],"values":[0,5]})");
  CHECK(report(run({"seminorm", "--data", two}))["value"].get<double>() == 0.0);
  auto down = write_dataset(dir, "down.json", R"({"nodes":[0,1,2],"values":[0,1,0.5]})");
  CHECK(run({"seminorm", "--data", down}).code == kExitInfeasible);
}

TEST_CASE("compare command covers the three regimes") {
  const auto dir = scratch("compare");
  auto summary = [&](const std::vector<std::string>& abc, const std::string& sub) {
    std::vector<std::string> args{"compare"};
    args.insert(args.end(), abc.begin(), abc.end());
    args.insert(args.end(), {"--out", (dir / sub).string()});
    const auto r = run(args);
    REQUIRE(r.code == 0);
    return read_file(dir / sub / "summary.csv");
  };
  auto s = summary({"1", "1.05", "1.02"}, "a");
  for (const char* m : {"optimal,emitted", "whitney,emitted", "bezier,emitted", "bernstein,emitted"}) {
    CHECK(s.find(m) != std::string::npos);
  }
  CHECK(s.find(",no,") == std::string::npos);
  CHECK(fs::exists(dir / "a" / "bezier.csv"));

  s = summary({"3", "0.1", "1.55"}, "b");
  CHECK(s.find("whitney,emitted") != std::string::npos);
  const auto wline = s.substr(s.find("whitney"));
  CHECK(wline.substr(0, wline.find('\n')).find(",no,") != std::string::npos);

  s = summary({"0.2", "0.3", "5"}, "c");
  CHECK(s.find("bezier,skipped") != std::string::npos);
  for (const char* m : {"optimal,emitted", "whitney,emitted", "bernstein,emitted"}) CHECK(s.find(m) != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "c" / "bezier.csv"));

  CHECK(run({"compare", "-1", "0", "1"}).code == kExitBadInput);
  CHECK(run({"compare", "1", "2", "0"}).code == kExitOk);  // infeasible optimal is a skip, not an abort
}

TEST_CASE("verify command") {
  auto r = run({"verify", "--seed", "42", "--cases", "20"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("20 cases") != std::string::npos);
  r = run({"verify", "--cases", "0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("0 cases") != std::string::npos);

  CliHooks bug;
  bug.verify_mstar = [](const TwoPointData& d) {
    const auto m = mstar(d);
    return mstar_branch(d) == MstarBranch::kTent ? m.scaled(1.01) : m;
  };
  r = run({"verify", "--cases", "20"}, bug);
  CHECK(r.code == kExitVerifyFailed);
  CHECK(r.out.find("counterexample") != std::string::npos);

  ::setenv("MONOSPLINE_SEED", "7", 1);
  r = run({"verify", "--seed", "42", "--cases", "2"});
  CHECK(r.out.find("seed 7") != std::string::npos);
  ::setenv("MONOSPLINE_SEED", "seven", 1);
  CHECK(run({"verify", "--cases", "2"}).code == kExitBadInput);
  ::unsetenv("MONOSPLINE_SEED");
  CHECK(run({"verify", "--cases", "-3"}).code == kExitBadInput);
}
