#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monospline/twopoint.hpp"

namespace monospline {

using MstarFunction = std::function<CurvatureValue(const TwoPointData&)>;

struct VerifyOptions {
  std::uint64_t seed = 42;
  int cases = 200;
  // Replaces the closed-form M* inside the suite; used to check that the
  // harness catches a wrong formula.
  MstarFunction mstar_override;
};

struct Counterexample {
  std::string property;
  TwoPointData data;
  std::string detail;
};

struct VerifyReport {
  int cases = 0;
  long checks = 0;
  std::vector<std::string> failures;  // one line per failed property
  std::optional<Counterexample> counterexample;  // minimized first failure

  bool ok() const noexcept { return failures.empty(); }
};

// Runs the invariant suites on seeded random triples (and a small dataset
// derived from each one).
VerifyReport run_verify(const VerifyOptions& opts);

// Shrinks a failing triple toward simpler values while `fails` keeps holding.
TwoPointData minimize_counterexample(const TwoPointData& d, const std::function<bool(const TwoPointData&)>& fails);

}  // namespace monospline
