#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "monospline/curve.hpp"
#include "monospline/global.hpp"
#include "monospline/piecewise.hpp"

namespace monospline {

// {"breakpoints":[...],"pieces":[[c0,...],...]}, numbers as %.17g.
std::string spline_to_json(const PiecewisePolynomial& pp);
PiecewisePolynomial spline_from_json(const std::string& text);

// {"x_coeffs":[...],"y_coeffs":[...]} in the power basis.
std::string curve_to_json(const ParametricCurve& curve);
ParametricCurve curve_from_json(const std::string& text);

// Parses {"nodes":[...],"values":[...],"slopes":[...]?}. Errors name the
// line (syntax) or the field (schema) and are thrown as ParseError; the
// result is shape-checked but not checked for monotone values.
HermiteDataset dataset_from_json(const std::string& text);
std::string dataset_to_json(const HermiteDataset& ds);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// %.17g, the file format for every float.
std::string format_g17(double v);
// Shortest representation that parses back to v.
std::string format_shortest(double v);

}  // namespace monospline
