#pragma once

// Exact scalars, points and affine functionals.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tropconn/errors.hpp"

namespace tropconn {

using Integer = mpz_class;
using Rational = mpq_class;  // always kept in lowest terms, denominator > 0
using QVector = std::vector<Rational>;

inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw InputError("malformed rational '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  if (text.front() == '-') n = -n;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

inline QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

inline QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zero_vector(n);
  v[i] = 1;
  return v;
}

inline Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("dot product of vectors with different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline QVector operator+(QVector a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline QVector operator-(QVector a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline QVector operator-(QVector a) {
  for (auto& x : a) x = -x;
  return a;
}

inline QVector operator*(const Rational& s, QVector a) {
  for (auto& x : a) x *= s;
  return a;
}

/// Lexicographic three-way comparison of equal-length vectors.
inline std::strong_ordering lex_compare(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

/// x ↦ normal·x + offset. Used both as `≥ 0` half-spaces and `= 0` hyperplanes.
struct AffineFunctional {
  QVector normal;
  Rational offset = 0;

  AffineFunctional() = default;
  AffineFunctional(QVector n, Rational c) : normal(std::move(n)), offset(std::move(c)) {}

  std::size_t dim() const { return normal.size(); }
  Rational operator()(const QVector& x) const { return dot(normal, x) + offset; }
  bool is_constant() const { return is_zero(normal); }

  AffineFunctional operator-() const { return {-normal, -offset}; }

  /// Scale by a positive rational so the normal is a primitive integer vector.
  /// Orientation is preserved, so this is safe for half-spaces. A zero normal
  /// scales the offset to -1, 0 or 1.
  AffineFunctional primitive() const {
    AffineFunctional f = *this;
    if (f.is_constant()) {
      f.offset = sgn(f.offset);
      return f;
    }
    Integer l = 1;
    for (const auto& c : f.normal) l = lcm(l, c.get_den());
    Integer g = 0;
    for (const auto& c : f.normal) {
      Integer v = c.get_num() * (l / c.get_den());
      g = gcd(g, v);
    }
    Rational scale(l, g);
    scale.canonicalize();
    for (auto& c : f.normal) c *= scale;
    f.offset *= scale;
    return f;
  }

  /// Canonical form of the hyperplane {f = 0}: primitive integer normal whose
  /// leading nonzero entry is positive. Idempotent.
  AffineFunctional canonical_hyperplane() const {
    AffineFunctional f = primitive();
    for (const auto& c : f.normal) {
      if (sgn(c) == 0) continue;
      if (sgn(c) < 0) f = -f;
      break;
    }
    if (f.is_constant() && sgn(f.offset) < 0) f.offset = 1;
    return f;
  }

  friend bool operator==(const AffineFunctional& a, const AffineFunctional& b) {
    return a.offset == b.offset && a.normal == b.normal;
  }
  friend std::strong_ordering operator<=>(const AffineFunctional& a, const AffineFunctional& b) {
    if (auto c = lex_compare(a.normal, b.normal); c != 0) return c;
    int c = cmp(a.offset, b.offset);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

/// Coefficients [c0, c1, ..., cn] meaning c0 + Σ ci·xi.
inline std::vector<Rational> coefficient_row(const AffineFunctional& f) {
  std::vector<Rational> row;
  row.reserve(f.dim() + 1);
  row.push_back(f.offset);
  row.insert(row.end(), f.normal.begin(), f.normal.end());
  return row;
}

inline std::string to_string(const AffineFunctional& f) {
  std::string out = "[";
  auto row = coefficient_row(f);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ",";
    out += row[i].get_str();
  }
  return out + "]";
}

}  // namespace tropconn
