#pragma once

// Independent reference computations used to cross-check the library.
// Each one avoids the code path it is checking.

#include <cstdint>
#include <random>
#include <vector>

#include "tropconn/tropconn.hpp"

namespace oracle {

using namespace tropconn;

inline Rational random_rational(std::mt19937_64& rng, int radius, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den), num(-radius * max_den, radius * max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline QVector random_vector(std::mt19937_64& rng, std::size_t n, int radius, int max_den) {
  QVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, radius, max_den));
  return v;
}

/// Minimum over terms attained at least twice at x, by direct evaluation.
inline bool min_attained_twice(const TropicalPolynomial& f, const QVector& x) {
  std::vector<Rational> values;
  for (const auto& t : f.terms()) {
    Rational s = t.valuation;
    for (std::size_t i = 0; i < x.size(); ++i) s += Rational(static_cast<long>(t.exponent[i])) * x[i];
    values.push_back(s);
  }
  Rational best = *std::min_element(values.begin(), values.end());
  return std::count(values.begin(), values.end(), best) >= 2;
}

/// Points k/den for k in [−radius·den, radius·den] in every coordinate.
inline std::vector<QVector> grid(std::size_t n, int radius, int den) {
  std::vector<QVector> out{QVector{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<QVector> next;
    for (const auto& p : out)
      for (int k = -radius * den; k <= radius * den; ++k) {
        QVector q = p;
        q.push_back(Rational(k, den));
        q.back().canonicalize();
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

/// y lies in the projection of p onto coordinates keep iff the fibre LP is feasible.
inline bool projection_contains(const Polyhedron& p, const std::vector<std::size_t>& keep, const QVector& y) {
  const std::size_t n = p.ambient_dim();
  std::vector<AffineFunctional> eqs = p.equalities();
  for (std::size_t k = 0; k < keep.size(); ++k) eqs.emplace_back(unit_vector(n, keep[k]), -y[k]);
  return solve_lp(n, eqs, p.inequalities(), zero_vector(n), Sense::minimize).feasible();
}

/// Brute-force face enumeration from an H-representation: every subset of
/// inequalities made tight, keeping the non-empty ones.
inline std::vector<Polyhedron> faces_by_tight_sets(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  const auto& ineqs = p.inequalities();
  const std::size_t m = ineqs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<AffineFunctional> eqs = p.equalities(), rest;
    for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? eqs : rest).push_back(ineqs[i]);
    if (!solve_lp(p.ambient_dim(), eqs, rest, zero_vector(p.ambient_dim()), Sense::minimize).feasible()) continue;
    out.emplace_back(p.ambient_dim(), std::move(eqs), std::move(rest));
  }
  return out;
}

/// Whether u·x is constant on the non-empty polyhedron f, by two LPs.
inline bool constant_on(const QVector& u, const Polyhedron& f) {
  auto lo = solve_lp(f.ambient_dim(), f.equalities(), f.inequalities(), u, Sense::minimize);
  auto hi = solve_lp(f.ambient_dim(), f.equalities(), f.inequalities(), u, Sense::maximize);
  return lo.optimal() && hi.optimal() && lo.value == hi.value;
}

inline bool is_single_point(const Polyhedron& f) {
  for (std::size_t i = 0; i < f.ambient_dim(); ++i)
    if (!constant_on(unit_vector(f.ambient_dim(), i), f)) return false;
  return true;
}

/// The rows of u and their differences are non-constant on every
/// positive-dimensional face of every cell.
inline bool basis_is_generic(const PolyhedralComplex& c, const IntegerMatrix& u) {
  const std::size_t n = c.ambient_dim();
  std::vector<QVector> tests;
  auto row = [&](std::size_t i) {
    QVector r;
    for (std::size_t k = 0; k < n; ++k) r.push_back(Rational(static_cast<long>(u(i, k))));
    return r;
  };
  for (std::size_t i = 0; i < n; ++i) {
    tests.push_back(row(i));
    for (std::size_t j = 0; j < i; ++j) tests.push_back(row(i) - row(j));
  }
  for (const auto& cell : c.cells()) {
    const CanonicalForm& cf = cell.canonical();
    Polyhedron h(n, cf.equalities, cf.inequalities);
    for (const auto& face : faces_by_tight_sets(h)) {
      if (is_single_point(face)) continue;
      for (const auto& t : tests)
        if (constant_on(t, face)) return false;
    }
  }
  return true;
}

/// Facets i and j of a pure complex share a codimension-1 face.
inline bool share_ridge(const PolyhedralComplex& c, std::size_t i, std::size_t j) {
  return intersect(c.cells()[i], c.cells()[j]).dimension() == c.dimension() - 1;
}

inline bool walk_ok(const PolyhedralComplex& c, const FacetWalk& w, std::size_t from, std::size_t to) {
  if (w.empty() || w.front() != from || w.back() != to) return false;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] == w[k + 1] || !share_ridge(c, w[k], w[k + 1])) return false;
  return true;
}

/// Reachability by union-find over pairwise ridge checks.
inline std::vector<std::size_t> ridge_components(const PolyhedralComplex& c) {
  std::vector<std::size_t> parent(c.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (share_ridge(c, i, j)) parent[find(i)] = find(j);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(find(i));
  return out;
}

/// Orthogonal complement of a facet's direction space, via the null space of its spanning vectors.
inline QMatrix normal_space(const Polyhedron& p) {
  const auto& d = p.analysis().directions;
  if (d.empty()) {
    QMatrix id;
    for (std::size_t i = 0; i < p.ambient_dim(); ++i) id.push_back(unit_vector(p.ambient_dim(), i));
    return id;
  }
  return null_space(d, p.ambient_dim());
}

/// v is a nonzero multiple of some eᵢ or of some eⱼ − eᵢ.
inline bool is_coordinate_or_difference(const QVector& v) {
  std::vector<Rational> nz;
  for (const auto& x : v)
    if (sgn(x) != 0) nz.push_back(x);
  if (nz.size() == 1) return true;
  return nz.size() == 2 && nz[0] == -nz[1];
}

}  // namespace oracle
