#pragma once

/**
 * JSON file formats. Scalars travel as strings ("p/q", "p", decimals) so
 * exact values round-trip byte for byte; bare JSON numbers are accepted on
 * input.
 *
 *   polyhedron    {"dim": n, "rows": [{"a": [..], "b": ..}], "backend": "exact"|"float"}
 *   metric        {"dim": n, "d2": [(n+1)² entries, row-major]}
 *   gram          {"m": m, "g": [m² entries, row-major]}
 *   decomposition {"rows": m, "cols": k, "b": [m·k entries], "scale": s}
 *   matrix        {"rows": r, "cols": c, "entries": [[..], ..]}
 */

#include <string>
#include <vector>

#include "json.hpp"
#include "orthant/classify.hpp"
#include "orthant/cones.hpp"
#include "orthant/errors.hpp"
#include "orthant/polyhedron.hpp"

namespace orthant::io {

using json = nlohmann::json;

template <Scalar T>
T scalar_from_json(const json& j, double tolerance) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>(), tolerance);
  if (j.is_number()) return parse_scalar<T>(j.dump(), tolerance);
  throw ParseError("expected a scalar string, got " + j.dump());
}

template <Scalar T>
json scalar_to_json(const T& x) {
  return format(x);
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline std::size_t count_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field '") + name + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

/// "exact", "float", or empty when the field is absent.
inline std::string backend_of(const json& j) {
  if (!j.is_object() || !j.contains("backend")) return "";
  if (!j.at("backend").is_string()) throw ParseError("backend must be a string");
  const auto b = j.at("backend").get<std::string>();
  if (b != "exact" && b != "float") throw ParseError("backend must be \"exact\" or \"float\"");
  return b;
}

// Row-major flat array, or nested rows, of exactly r·c scalars.
template <Scalar T>
Mat<T> flat_matrix(const json& data, std::size_t r, std::size_t c, double tolerance) {
  if (!data.is_array()) throw ParseError("matrix entries must be an array");
  std::vector<json> flat;
  for (const auto& x : data) {
    if (x.is_array())
      for (const auto& y : x) flat.push_back(y);
    else
      flat.push_back(x);
  }
  if (flat.size() != r * c) throw ShapeMismatch("expected " + std::to_string(r * c) + " entries, got " + std::to_string(flat.size()));
  Mat<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar_from_json<T>(flat[i * c + k], tolerance);
  return m;
}

template <Scalar T>
Polyhedron<T> read_polyhedron(const json& j, double tolerance = 0.0) {
  const std::size_t n = count_field(j, "dim");
  const json& rows = field(j, "rows");
  if (!rows.is_array()) throw ParseError("'rows' must be an array");
  Mat<T> a(rows.size(), n);
  Vec<T> b;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& ai = field(rows[i], "a");
    if (!ai.is_array() || ai.size() != n) throw ShapeMismatch("row " + std::to_string(i) + " does not have dim entries");
    for (std::size_t k = 0; k < n; ++k) a(i, k) = scalar_from_json<T>(ai[k], tolerance);
    b.push_back(scalar_from_json<T>(field(rows[i], "b"), tolerance));
  }
  return Polyhedron<T>(std::move(a), std::move(b));
}

template <Scalar T>
json to_json(const Polyhedron<T>& p) {
  json rows = json::array();
  for (std::size_t i = 0; i < p.facets(); ++i) {
    json a = json::array();
    for (const auto& x : p.normal(i)) a.push_back(scalar_to_json(x));
    rows.push_back({{"a", a}, {"b", scalar_to_json(p.offset(i))}});
  }
  return {{"dim", p.dim()}, {"rows", rows}, {"backend", std::string(scalar_traits<T>::name)}};
}

template <Scalar T>
json to_json(const Vec<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <Scalar T>
json to_json(const Mat<T>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) entries.push_back(to_json(m.row_vec(i)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

template <Scalar T>
SimplexMetric<T> read_metric(const json& j, double tolerance = 0.0) {
  const std::size_t n = count_field(j, "dim");
  return SimplexMetric<T>(flat_matrix<T>(field(j, "d2"), n + 1, n + 1, tolerance));
}

template <Scalar T>
GramMatrix<T> read_gram(const json& j, double tolerance = 0.0) {
  const std::size_t m = count_field(j, "m");
  return GramMatrix<T>(flat_matrix<T>(field(j, "g"), m, m, tolerance));
}

template <Scalar T>
struct CpFactor {
  Mat<T> b;
  T scale = T(1);
};

template <Scalar T>
CpFactor<T> read_decomposition(const json& j, double tolerance = 0.0) {
  const std::size_t r = count_field(j, "rows"), c = count_field(j, "cols");
  CpFactor<T> out{flat_matrix<T>(field(j, "b"), r, c, tolerance), T(1)};
  if (j.contains("scale")) out.scale = scalar_from_json<T>(j.at("scale"), tolerance);
  return out;
}

}  // namespace orthant::io
