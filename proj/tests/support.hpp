#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "monospline/twopoint.hpp"

namespace test {

using monospline::TwoPointData;

inline bool close_rel(double x, double y, double rel, double scale = 1.0) {
  return std::abs(x - y) <= rel * std::max({scale, std::abs(x), std::abs(y)});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  // a, b in [0, 5], c in (0, 5].
  TwoPointData triple() {
    const double a = uniform(0.0, 5.0);
    const double b = uniform(0.0, 5.0);
    double c = uniform(0.0, 5.0);
    while (c <= 0.0) c = uniform(0.0, 5.0);
    return {a, b, c};
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Max of |f| sampled on a uniform n-point grid of [lo, hi].
template <class F>
double sampled_max_abs(F f, double lo, double hi, int n) {
  double best = 0.0;
  for (int k = 0; k < n; ++k) best = std::max(best, std::abs(f(lo + (hi - lo) * k / (n - 1))));
  return best;
}

}  // namespace test
