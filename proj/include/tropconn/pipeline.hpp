#pragma once

// Polyhedral mechanization of the inductive connectivity argument: cut a pure
// complex with a generic translate of the tropical hyperplane, walk between
// facets of the slice, and lift that walk back to the complex.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropconn/complex.hpp"
#include "tropconn/errors.hpp"
#include "tropconn/maps.hpp"
#include "tropconn/tropical.hpp"

namespace tropconn {

/// Facet indices F₀, …, F_s; consecutive entries are equal or adjacent.
using FacetWalk = std::vector<std::size_t>;

struct PropernessReport {
  bool proper = true;
  int expected_dimension = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // (cell of C, cell of D)
};

/// Raised by slice() when the translate does not meet the complex properly.
class ImproperSlice : public std::runtime_error {
 public:
  ImproperSlice(const std::string& what, PropernessReport r) : std::runtime_error(what), report(std::move(r)) {}
  PropernessReport report;
};

/// Every pair of maximal cells that meets does so in dimension dim C + dim D − n.
inline PropernessReport properness_check(const PolyhedralComplex& c, const PolyhedralComplex& d) {
  if (c.ambient_dim() != d.ambient_dim()) throw InputError("properness_check: ambient dimensions differ");
  detail::require_validated(c, "properness_check");
  detail::require_validated(d, "properness_check");
  if (!c.is_pure() || !d.is_pure()) throw InputError("properness_check: both complexes must be pure");
  PropernessReport r;
  r.expected_dimension = c.dimension() + d.dimension() - static_cast<int>(c.ambient_dim());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      Polyhedron x = intersect(c.cells()[i], d.cells()[j]);
      if (x.is_empty() || x.dimension() == r.expected_dimension) continue;
      r.proper = false;
      r.violations.emplace_back(i, j);
    }
  return r;
}

namespace detail {

inline void require_facet(const PolyhedralComplex& c, std::size_t f, const char* op) {
  if (f >= c.size())
    throw InputError(std::string(op) + ": facet index " + std::to_string(f) + " out of range (complex has " +
                     std::to_string(c.size()) + " facets)");
}

/// Some point of the relative interior of `f` lies in supp(d).
inline bool meets_relative_interior(const Polyhedron& f, const PolyhedralComplex& d) {
  const auto& fa = f.analysis();
  for (const auto& q : d.cells()) {
    Polyhedron x = intersect(f, q);
    if (x.is_empty()) continue;
    // relint(x) lies in relint(f) iff x is not inside the relative boundary.
    const QVector& p = x.analysis().interior_point;
    bool interior = true;
    for (std::size_t i = 0; i < f.inequalities().size() && interior; ++i) {
      if (std::binary_search(fa.implicit.begin(), fa.implicit.end(), i)) continue;
      if (sgn(f.inequalities()[i](p)) == 0) interior = false;
    }
    if (interior) return true;
  }
  return false;
}

inline std::vector<QVector> vertices_of(const PolyhedralComplex& c) {
  std::vector<QVector> out;
  for (const auto& f : all_faces(c))
    if (f.dimension() == 0) out.push_back(f.analysis().interior_point);
  return out;
}

/// Move coordinate k of the apex so that x − apex attains min(0, ·) twice,
/// i.e. x lies on Δ translated to the apex.
inline void force_through(QVector& apex, const QVector& x, std::size_t k) {
  Rational m = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != k) m = std::min(m, Rational(x[i] - apex[i]));
  apex[k] = x[k] - m;
}

inline Rational snap(const Rational& x, std::int64_t den) {
  Rational scaled = x * Rational(static_cast<long>(den)) + Rational(1, 2);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r(fl, Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline Rational random_rational(std::mt19937_64& rng, std::int64_t radius, std::int64_t max_denominator) {
  std::uniform_int_distribution<std::int64_t> den(1, max_denominator);
  std::int64_t q = den(rng);
  std::uniform_int_distribution<std::int64_t> num(-radius * q, radius * q);
  Rational r(static_cast<long>(num(rng)), static_cast<unsigned long>(q));
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Outcome of checking a candidate translate against the three requirements.
struct TranslateCheck {
  bool meets_first = false;   // Δ − v meets relint F
  bool meets_second = false;  // Δ − v meets relint F′
  bool avoids_vertices = false;
  bool proper = false;
  bool ok() const { return meets_first && meets_second && avoids_vertices && proper; }
};

inline TranslateCheck check_slicing_translate(const PolyhedralComplex& c, std::size_t f, std::size_t f2,
                                              const QVector& v) {
  detail::require_facet(c, f, "check_slicing_translate");
  detail::require_facet(c, f2, "check_slicing_translate");
  if (v.size() != c.ambient_dim()) throw InputError("translate has wrong length");
  TranslateCheck t;
  PolyhedralComplex h = tropical_hyperplane(v);
  auto verts = detail::vertices_of(c);
  t.avoids_vertices = std::none_of(verts.begin(), verts.end(), [&](const QVector& p) { return support_contains(h, p); });
  t.meets_first = detail::meets_relative_interior(c.cells()[f], h);
  t.meets_second = detail::meets_relative_interior(c.cells()[f2], h);
  t.proper = properness_check(c, h).proper;
  return t;
}

struct SlicingOptions {
  std::int64_t max_denominator = 10;
  int max_tries = 400;
};

/// Random v (denominators ≤ max_denominator) such that Δ − v meets F and F′ in
/// their relative interiors, contains no vertex of C and meets every facet of C
/// properly. Candidates are drawn in a box around the two facets.
inline QVector choose_slicing_translate(const PolyhedralComplex& c, std::size_t f, std::size_t f2, std::mt19937_64& rng,
                                        SlicingOptions opt = {}) {
  detail::require_validated(c, "choose_slicing_translate");
  if (!c.is_pure()) throw InputError("choose_slicing_translate: complex must be pure");
  detail::require_facet(c, f, "choose_slicing_translate");
  detail::require_facet(c, f2, "choose_slicing_translate");
  if (opt.max_denominator < 1) throw InputError("max_denominator must be positive");
  const std::size_t n = c.ambient_dim();
  const QVector& p = c.cells()[f].analysis().interior_point;
  const QVector& q = c.cells()[f2].analysis().interior_point;

  QVector center(n);
  std::int64_t radius = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Rational mid = (p[i] + q[i]) / 2;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), mid.get_num_mpz_t(), mid.get_den_mpz_t());
    center[i] = fl;
    Rational spread = abs(p[i] - center[i]) + abs(q[i] - center[i]);
    Integer ce;
    mpz_cdiv_q(ce.get_mpz_t(), spread.get_num_mpz_t(), spread.get_den_mpz_t());
    radius = std::max<std::int64_t>(radius, ce.get_si() + 1);
  }

  auto verts = detail::vertices_of(c);
  std::uniform_int_distribution<std::size_t> coordinate(0, n - 1);
  for (int attempt = 0; attempt < opt.max_tries; ++attempt) {
    QVector apex(n);
    for (std::size_t i = 0; i < n; ++i) apex[i] = center[i] + detail::random_rational(rng, radius, opt.max_denominator);
    if (attempt % 4 != 3) {
      // Pull the hyperplane through the two relative interior points, then
      // snap to the 1/max_denominator grid; the hits survive small moves.
      std::size_t k = coordinate(rng), k2 = coordinate(rng);
      detail::force_through(apex, p, k);
      if (n > 1) {
        while (k2 == k) k2 = coordinate(rng);
        detail::force_through(apex, q, k2);
      }
      for (auto& x : apex) x = detail::snap(x, opt.max_denominator);
    }
    QVector v = -apex;
    PolyhedralComplex h = tropical_hyperplane(v);
    if (std::any_of(verts.begin(), verts.end(), [&](const QVector& x) { return support_contains(h, x); })) continue;
    if (!detail::meets_relative_interior(c.cells()[f], h)) continue;
    if (!detail::meets_relative_interior(c.cells()[f2], h)) continue;
    if (!properness_check(c, h).proper) continue;
    return v;
  }
  throw SearchExhausted("choose_slicing_translate: no admissible translate after " + std::to_string(opt.max_tries) +
                        " draws; the coordinates may be non-generic (apply change_coordinates with generic_basis first)");
}

struct SliceCertificate {
  QVector v;
  PolyhedralComplex ambient;                // C
  PolyhedralComplex intersection;           // C ∩ (Δ − v) with the refined structure
  std::vector<std::size_t> assignment;      // intersection facet → unique containing facet of C
  bool properness = false;
  FacetGraph ambient_graph;
  FacetGraph intersection_graph;
};

namespace detail {

/// Slice by h = Δ − v, assuming the intersection is already known to be proper.
inline SliceCertificate slice_proper(const PolyhedralComplex& c, const FacetGraph& ambient_graph,
                                     const PolyhedralComplex& h, const QVector& v) {
  SliceCertificate cert;
  cert.v = v;
  cert.ambient = c;
  cert.intersection = common_refinement(c, h);
  cert.properness = true;
  // A cell of the refinement lies in a cell of C iff its relative interior point does.
  for (const auto& g : cert.intersection.cells()) {
    const QVector& x = g.analysis().interior_point;
    std::vector<std::size_t> holders;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c.cells()[i].contains(x)) holders.push_back(i);
    if (holders.size() != 1)
      throw ContractError("slice: an intersection facet lies in " + std::to_string(holders.size()) +
                          " facets of the complex instead of exactly one");
    cert.assignment.push_back(holders.front());
  }
  cert.ambient_graph = ambient_graph;
  if (cert.intersection.is_pure()) cert.intersection_graph = facet_graph(cert.intersection);
  return cert;
}

}  // namespace detail

/// Intersect C with Δ − v and record, for every facet of the intersection, the
/// unique facet of C containing it.
inline SliceCertificate slice(const PolyhedralComplex& c, const QVector& v) {
  detail::require_validated(c, "slice");
  if (!c.is_pure()) throw InputError("slice: complex must be pure");
  if (v.size() != c.ambient_dim()) throw InputError("slice: translate has wrong length");
  PolyhedralComplex h = tropical_hyperplane(v);
  PropernessReport report = properness_check(c, h);
  if (!report.proper)
    throw ImproperSlice("slice: Δ − v meets " + std::to_string(report.violations.size()) +
                            " cell pair(s) of the complex improperly",
                        report);
  return detail::slice_proper(c, facet_graph(c), h, v);
}

namespace detail {

inline bool steps_ok(const FacetWalk& w, const FacetGraph& g) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] >= g.nodes || (w[i] != w[i - 1] && !g.adjacent(w[i - 1], w[i]))) return false;
  return w.empty() || w.front() < g.nodes;
}
}  // namespace detail

/// Whether consecutive facets are equal or adjacent.
inline bool is_valid_walk(const FacetWalk& w, const FacetGraph& g) { return detail::steps_ok(w, g); }

/// Push a walk on the slice forward along the facet assignment; consecutive
/// images are equal or adjacent, and repeated entries are collapsed.
inline FacetWalk lift_walk(const SliceCertificate& cert, const FacetWalk& walk) {
  if (cert.assignment.size() != cert.intersection.size())
    throw ContractError("lift_walk: certificate assignment is incomplete");
  if (!cert.intersection.is_pure() || !detail::steps_ok(walk, cert.intersection_graph))
    throw InputError("lift_walk: walk is not a valid facet walk in the slice");
  FacetWalk image;
  for (auto g : walk) image.push_back(cert.assignment[g]);
  if (!detail::steps_ok(image, cert.ambient_graph))
    throw ContractError("lift_walk: lifted facets are neither equal nor adjacent");
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image;
}

/// Shortest walk in the facet graph, or nullopt if F′ is unreachable from F.
inline std::optional<FacetWalk> walk_bfs(const FacetGraph& g, std::size_t f, std::size_t f2) {
  if (f >= g.nodes || f2 >= g.nodes) throw InputError("walk_bfs: facet index out of range");
  std::vector<std::size_t> parent(g.nodes, g.nodes);
  std::queue<std::size_t> q;
  parent[f] = f;
  q.push(f);
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    if (u == f2) break;
    for (auto w : g.adjacency[u])
      if (parent[w] == g.nodes) {
        parent[w] = u;
        q.push(w);
      }
  }
  if (parent[f2] == g.nodes) return std::nullopt;
  FacetWalk path{f2};
  while (path.back() != f) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::optional<FacetWalk> walk_bfs(const PolyhedralComplex& c, std::size_t f, std::size_t f2) {
  detail::require_facet(c, f, "walk_bfs");
  detail::require_facet(c, f2, "walk_bfs");
  return walk_bfs(facet_graph(c), f, f2);
}

struct TheoremWalkOptions {
  int depth_budget = 8;
  int max_attempts = 12;  // translate draws per level
  SlicingOptions slicing;
};

namespace detail {

inline FacetWalk theorem_walk_impl(const PolyhedralComplex& c, const FacetGraph& g, std::size_t f, std::size_t f2,
                                   int depth, std::mt19937_64& rng, const TheoremWalkOptions& opt) {
  if (f == f2) return {f};
  const int d = c.dimension();
  if (d <= 1) {
    // Base case: stands in for connectedness of curves.
    auto w = walk_bfs(g, f, f2);
    if (!w) throw DisconnectedSlice("theorem_walk: one-dimensional complex is disconnected");
    return *w;
  }
  if (depth <= 0) throw SearchExhausted("theorem_walk: depth budget exhausted");

  if (!is_generic_basis(c, IntegerMatrix::identity(c.ambient_dim()))) {
    // Some face is parallel to a facet of every translate of Δ. Walk in
    // coordinates where none is; cell order and adjacency are unchanged.
    IntegerMatrix u = generic_basis(c);
    PolyhedralComplex moved = ComplexAccess::ordered(c.ambient_dim(), transformed_cells(c, u), true);
    FacetWalk w = theorem_walk_impl(moved, g, f, f2, depth, rng, opt);
    if (!steps_ok(w, g)) throw ContractError("theorem_walk: walk read back from generic coordinates is invalid");
    return w;
  }

  int disconnected = 0;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    QVector v = choose_slicing_translate(c, f, f2, rng, opt.slicing);
    SliceCertificate cert;
    try {
      cert = slice_proper(c, g, tropical_hyperplane(v), v);
    } catch (const ContractError& e) {
      last_failure = e.what();
      continue;
    }
    const PolyhedralComplex& cut = cert.intersection;
    if (cut.empty() || !cut.is_pure() || cut.dimension() != d - 1) {
      last_failure = "slice is empty or not pure of the expected dimension";
      continue;
    }
    auto first_in = [&](std::size_t facet) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < cert.assignment.size(); ++i)
        if (cert.assignment[i] == facet) return i;
      return std::nullopt;
    };
    auto start = first_in(f), stop = first_in(f2);
    if (!start || !stop) {
      last_failure = "slice misses an endpoint facet";
      continue;
    }
    if (!cert.intersection_graph.connected()) {
      ++disconnected;
      last_failure = "slice is not connected through codimension 1";
      continue;
    }
    FacetWalk inner = theorem_walk_impl(cut, cert.intersection_graph, *start, *stop, depth - 1, rng, opt);
    FacetWalk lifted = lift_walk(cert, inner);
    if (lifted.front() != f || lifted.back() != f2 || !steps_ok(lifted, g))
      throw ContractError("theorem_walk: lifted walk failed verification");
    return lifted;
  }
  if (disconnected == opt.max_attempts)
    throw DisconnectedSlice("theorem_walk: every slice drawn was disconnected through codimension 1");
  throw SearchExhausted("theorem_walk: no usable slice after " + std::to_string(opt.max_attempts) +
                        " attempts (last: " + last_failure + ")");
}

}  // namespace detail

/// A facet walk from F to F′ produced the way the inductive argument does:
/// slice by a generic translate of Δ, walk in the lower-dimensional slice, lift.
/// The complex must be pure of dimension ≥ 1 and connected through codimension 1.
inline FacetWalk theorem_walk(const PolyhedralComplex& c, std::size_t f, std::size_t f2, std::mt19937_64& rng,
                              TheoremWalkOptions opt = {}) {
  detail::require_validated(c, "theorem_walk");
  if (!c.is_pure()) throw InputError("theorem_walk: complex must be pure");
  detail::require_facet(c, f, "theorem_walk");
  detail::require_facet(c, f2, "theorem_walk");
  if (c.dimension() < 1) throw InputError("theorem_walk: complex must have dimension at least 1");
  FacetGraph g = facet_graph(c);
  if (!g.connected())
    throw InputError("theorem_walk: complex is not connected through codimension 1, so no such walk exists");
  return detail::theorem_walk_impl(c, g, f, f2, opt.depth_budget, rng, opt);
}

inline FacetWalk theorem_walk(const PolyhedralComplex& c, std::size_t f, std::size_t f2, std::uint64_t seed = 0,
                              TheoremWalkOptions opt = {}) {
  std::mt19937_64 rng(seed);
  return theorem_walk(c, f, f2, rng, opt);
}

}  // namespace tropconn
