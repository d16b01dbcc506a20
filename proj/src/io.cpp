#include "monospline/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "monospline/errors.hpp"

namespace monospline {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void append_array(std::string& out, const double* data, std::size_t n) {
  out += '[';
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ',';
    out += format_g17(data[i]);
  }
  out += ']';
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to a 1-based line number.
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

std::vector<double> number_array(const json& doc, const std::string& field, bool required = true) {
  if (!doc.contains(field)) {
    if (required) throw ParseError("field '" + field + "': missing");
    return {};
  }
  const json& arr = doc.at(field);
  if (!arr.is_array()) throw ParseError("field '" + field + "': expected an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ParseError("field '" + field + "[" + std::to_string(i) + "]': expected a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

json object_root(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("line 1: expected a JSON object");
  return doc;
}

std::array<double, 4> cubic_field(const json& doc, const std::string& field) {
  const auto v = number_array(doc, field);
  if (v.size() != 4) throw ParseError("field '" + field + "': expected 4 coefficients");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

std::string spline_to_json(const PiecewisePolynomial& pp) {
  std::string out = "{\"breakpoints\":";
  append_array(out, pp.breakpoints().data(), pp.breakpoints().size());
  out += ",\"pieces\":[";
  for (std::size_t j = 0; j < pp.num_pieces(); ++j) {
    if (j > 0) out += ',';
    append_array(out, pp.pieces()[j].data(), pp.pieces()[j].size());
  }
  out += "]}\n";
  return out;
}

PiecewisePolynomial spline_from_json(const std::string& text) {
  const json doc = object_root(text);
  auto bps = number_array(doc, "breakpoints");
  if (!doc.contains("pieces") || !doc.at("pieces").is_array()) throw ParseError("field 'pieces': expected an array");
  std::vector<Coeffs> pieces;
  const json& arr = doc.at("pieces");
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const std::string name = "pieces[" + std::to_string(j) + "]";
    if (!arr[j].is_array()) throw ParseError("field '" + name + "': expected an array");
    Coeffs c;
    for (std::size_t k = 0; k < arr[j].size(); ++k) {
      if (!arr[j][k].is_number()) {
        throw ParseError("field '" + name + "[" + std::to_string(k) + "]': expected a number");
      }
      c.push_back(arr[j][k].get<double>());
    }
    pieces.push_back(std::move(c));
  }
  if (bps.size() != pieces.size() + 1) throw ParseError("field 'pieces': expected one piece per breakpoint gap");
  try {
    return PiecewisePolynomial(std::move(bps), std::move(pieces));
  } catch (const std::exception& e) {
    throw ParseError(std::string("spline: ") + e.what());
  }
}

std::string curve_to_json(const ParametricCurve& curve) {
  std::string out = "{\"x_coeffs\":";
  append_array(out, curve.x_coeffs().data(), 4);
  out += ",\"y_coeffs\":";
  append_array(out, curve.y_coeffs().data(), 4);
  out += "}\n";
  return out;
}

ParametricCurve curve_from_json(const std::string& text) {
  const json doc = object_root(text);
  try {
    return ParametricCurve(cubic_field(doc, "x_coeffs"), cubic_field(doc, "y_coeffs"));
  } catch (const DomainError& e) {
    throw ParseError(std::string("curve: ") + e.what());
  }
}

HermiteDataset dataset_from_json(const std::string& text) {
  const json doc = object_root(text);
  for (const auto& item : doc.items()) {
    if (item.key() != "nodes" && item.key() != "values" && item.key() != "slopes") {
      throw ParseError("field '" + item.key() + "': unknown field");
    }
  }
  HermiteDataset ds;
  ds.nodes = number_array(doc, "nodes");
  ds.values = number_array(doc, "values");
  if (doc.contains("slopes")) ds.slopes = number_array(doc, "slopes");
  if (ds.values.size() != ds.nodes.size()) throw ParseError("field 'values': length differs from 'nodes'");
  if (ds.slopes && ds.slopes->size() != ds.nodes.size()) {
    throw ParseError("field 'slopes': length differs from 'nodes'");
  }
  try {
    ds.validate_shape();
  } catch (const DomainError& e) {
    throw ParseError(std::string("dataset: ") + e.what());
  }
  return ds;
}

std::string dataset_to_json(const HermiteDataset& ds) {
  std::string out = "{\"nodes\":";
  append_array(out, ds.nodes.data(), ds.nodes.size());
  if (ds.slopes) {
    out += ",\"slopes\":";
    append_array(out, ds.slopes->data(), ds.slopes->size());
  }
  out += ",\"values\":";
  append_array(out, ds.values.data(), ds.values.size());
  out += "}\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace monospline
