#pragma once

// JSON documents for complexes, tropical polynomials and integer matrices.
// Rationals are written as strings ("3", "-1/2") and read from either
// integers or strings.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropconn/complex.hpp"
#include "tropconn/errors.hpp"
#include "tropconn/fourier_motzkin.hpp"
#include "tropconn/maps.hpp"
#include "tropconn/tropical.hpp"

namespace tropconn {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

inline void allow_only(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) fail(path + "." + k, "unknown field");
}

inline const Json& require(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing field");
  return obj.at(key);
}

inline Rational read_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    Rational r;
    r = Integer(j.dump());
    return r;
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an integer or a string \"p/q\"");
}

inline std::int64_t read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t read_size(const Json& j, const std::string& path) {
  auto v = read_int(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline const Json& read_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline QVector read_vector(const Json& j, std::size_t n, const std::string& path) {
  read_array(j, path);
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  QVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(read_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

/// [c₀, c₁, …, cₙ] ↦ c₀ + Σ cᵢxᵢ.
inline AffineFunctional read_functional(const Json& j, std::size_t n, const std::string& path) {
  QVector c = read_vector(j, n + 1, path);
  return {QVector(c.begin() + 1, c.end()), c.front()};
}

template <typename T, typename Read>
std::vector<T> read_list(const Json& obj, const char* key, const std::string& path, Read&& read) {
  std::vector<T> out;
  if (!obj.contains(key)) return out;
  const std::string p = path + "." + key;
  const Json& arr = read_array(obj.at(key), p);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read(arr[i], p + "[" + std::to_string(i) + "]"));
  return out;
}

inline Polyhedron read_cell(const Json& cell, std::size_t n, const std::string& path) {
  allow_only(cell, path, {"eq", "ineq", "vertices", "rays", "lineality"});
  auto func = [n](const Json& j, const std::string& p) { return read_functional(j, n, p); };
  auto vec = [n](const Json& j, const std::string& p) { return read_vector(j, n, p); };
  const bool h = cell.contains("eq") || cell.contains("ineq");
  const bool v = cell.contains("vertices") || cell.contains("rays") || cell.contains("lineality");
  if (!h && !v) fail(path, "cell has neither constraints nor generators");
  std::optional<Polyhedron> from_h, from_v;
  if (h)
    from_h = Polyhedron(n, read_list<AffineFunctional>(cell, "eq", path, func),
                        read_list<AffineFunctional>(cell, "ineq", path, func));
  if (v)
    from_v = hull_from_generators(n, read_list<QVector>(cell, "vertices", path, vec),
                                  read_list<QVector>(cell, "rays", path, vec),
                                  read_list<QVector>(cell, "lineality", path, vec));
  if (h && v && !same_set(*from_h, *from_v)) fail(path, "constraints and generators describe different sets");
  if (from_v) return *from_v;
  return *from_h;
}

inline Json write_rational(const Rational& r) { return to_string(r); }

inline Json write_vector(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(write_rational(x));
  return a;
}

inline Json write_functional(const AffineFunctional& f) {
  Json a = Json::array({write_rational(f.offset)});
  for (const auto& x : f.normal) a.push_back(write_rational(x));
  return a;
}

}  // namespace detail

/// Complex from a ComplexDocument. The result is not validated.
inline PolyhedralComplex complex_from_json(const Json& doc) {
  detail::allow_only(doc, "$", {"format_version", "ambient_dim", "cells"});
  const Json& version = detail::require(doc, "$", "format_version");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion)
    detail::fail("$.format_version", std::string("unsupported format version (expected \"") + kFormatVersion + "\")");
  const std::size_t n = detail::read_size(detail::require(doc, "$", "ambient_dim"), "$.ambient_dim");
  const Json& cells = detail::read_array(detail::require(doc, "$", "cells"), "$.cells");
  std::vector<Polyhedron> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    out.push_back(detail::read_cell(cells[i], n, "$.cells[" + std::to_string(i) + "]"));
  return PolyhedralComplex(n, std::move(out));
}

inline PolyhedralComplex parse_complex(std::string_view text) { return complex_from_json(detail::parse_json(text)); }

/// Canonical H-representation of every cell, cells ordered by canonical key.
inline Json complex_to_json(const PolyhedralComplex& c) {
  std::vector<const Polyhedron*> cells;
  for (const auto& p : c.cells()) cells.push_back(&p);
  std::sort(cells.begin(), cells.end(), [](const Polyhedron* a, const Polyhedron* b) { return a->key() < b->key(); });
  Json arr = Json::array();
  for (const auto* p : cells) {
    const CanonicalForm& cf = p->canonical();
    Json eq = Json::array(), ineq = Json::array();
    for (const auto& f : cf.equalities) eq.push_back(detail::write_functional(f));
    for (const auto& f : cf.inequalities) ineq.push_back(detail::write_functional(f));
    arr.push_back({{"eq", std::move(eq)}, {"ineq", std::move(ineq)}});
  }
  return {{"format_version", kFormatVersion}, {"ambient_dim", c.ambient_dim()}, {"cells", std::move(arr)}};
}

/// One cell per line.
inline std::string serialize_complex(const PolyhedralComplex& c) {
  const Json doc = complex_to_json(c);
  std::string s = "{\n \"format_version\": " + doc["format_version"].dump() +
                  ",\n \"ambient_dim\": " + doc["ambient_dim"].dump() + ",\n \"cells\": [";
  const Json& cells = doc["cells"];
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? ",\n  " : "\n  ") + cells[i].dump();
  return s + (cells.empty() ? "]\n}\n" : "\n ]\n}\n");
}

/// {"ambient_dim": n, "terms": [{"exponent": [...], "valuation": "p/q"}, ...]}
inline TropicalPolynomial polynomial_from_json(const Json& doc) {
  detail::allow_only(doc, "$", {"format_version", "ambient_dim", "terms"});
  const std::size_t n = detail::read_size(detail::require(doc, "$", "ambient_dim"), "$.ambient_dim");
  const Json& terms = detail::read_array(detail::require(doc, "$", "terms"), "$.terms");
  std::vector<TropicalPolynomial::Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = "$.terms[" + std::to_string(i) + "]";
    detail::allow_only(terms[i], p, {"exponent", "valuation"});
    const Json& e = detail::read_array(detail::require(terms[i], p, "exponent"), p + ".exponent");
    if (e.size() != n) detail::fail(p + ".exponent", "expected " + std::to_string(n) + " entries");
    std::vector<std::int64_t> exponent;
    for (std::size_t k = 0; k < n; ++k) exponent.push_back(detail::read_int(e[k], p + ".exponent[" + std::to_string(k) + "]"));
    out.push_back({std::move(exponent), detail::read_rational(detail::require(terms[i], p, "valuation"), p + ".valuation")});
  }
  return TropicalPolynomial(n, std::move(out));
}

inline TropicalPolynomial parse_polynomial(std::string_view text) {
  return polynomial_from_json(detail::parse_json(text));
}

/// A polynomial document with ambient_dim 1 read as a valued univariate.
inline ValuedUnivariate univariate_from_json(const Json& doc) {
  TropicalPolynomial f = polynomial_from_json(doc);
  if (f.ambient_dim() != 1) detail::fail("$.ambient_dim", "a univariate polynomial needs ambient_dim 1");
  std::vector<ValuedUnivariate::Term> terms;
  for (const auto& t : f.terms()) terms.push_back({t.exponent.front(), t.valuation});
  return ValuedUnivariate(std::move(terms));
}

inline ValuedUnivariate parse_univariate(std::string_view text) {
  return univariate_from_json(detail::parse_json(text));
}

/// {"rows": m, "cols": n, "entries": [[...], ...]}
inline IntegerMatrix matrix_from_json(const Json& doc) {
  detail::allow_only(doc, "$", {"format_version", "rows", "cols", "entries"});
  const std::size_t m = detail::read_size(detail::require(doc, "$", "rows"), "$.rows");
  const std::size_t n = detail::read_size(detail::require(doc, "$", "cols"), "$.cols");
  const Json& rows = detail::read_array(detail::require(doc, "$", "entries"), "$.entries");
  if (rows.size() != m) detail::fail("$.entries", "expected " + std::to_string(m) + " rows");
  std::vector<std::vector<std::int64_t>> e;
  for (std::size_t i = 0; i < m; ++i) {
    const std::string p = "$.entries[" + std::to_string(i) + "]";
    detail::read_array(rows[i], p);
    if (rows[i].size() != n) detail::fail(p, "expected " + std::to_string(n) + " entries");
    std::vector<std::int64_t> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(detail::read_int(rows[i][j], p + "[" + std::to_string(j) + "]"));
    e.push_back(std::move(row));
  }
  return IntegerMatrix(m, n, std::move(e));
}

inline IntegerMatrix parse_matrix(std::string_view text) { return matrix_from_json(detail::parse_json(text)); }

inline Json matrix_to_json(const IntegerMatrix& a) {
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", a.entries()}};
}

/// Comma-separated rationals, e.g. "1,-1/2,3".
inline QVector parse_vector_list(std::string_view text) {
  QVector v;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    v.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return v;
}

/// {0:1, 1:1}
inline std::string to_string(const RootValuationMultiset& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    if (i) s += ", ";
    s += to_string(r.pairs[i].first) + ":" + std::to_string(r.pairs[i].second);
  }
  return s + "}";
}

}  // namespace tropconn
