#pragma once

#include <iosfwd>
#include <vector>

#include "monospline/curve.hpp"
#include "monospline/execution.hpp"
#include "monospline/piecewise.hpp"

namespace monospline {

struct SampleRow {
  double x = 0.0;
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// n >= 2 equally spaced abscissae spanning the domain; the last abscissa is
// the domain end exactly.
std::vector<SampleRow> sample(const PiecewisePolynomial& pp, int n,
                              Execution exec = Execution::kParallel);
std::vector<SampleRow> sample(const ParametricCurve& curve, int n,
                              Execution exec = Execution::kParallel);

// CSV with header `x,value,d1,d2`, floats as %.17g.
void write_csv(std::ostream& os, const std::vector<SampleRow>& rows);

}  // namespace monospline
