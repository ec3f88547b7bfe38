#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tropconn/errors.hpp"
#include "tropconn/polyhedron.hpp"

namespace tropconn {

class PolyhedralComplex;

namespace detail {
struct ComplexAccess;
}

/// A finite polyhedral complex in ℚⁿ, stored by its inclusion-maximal cells.
///
/// Construction drops empty cells, duplicates and cells contained in another
/// cell, then sorts the survivors by canonical key so that every complex has a
/// deterministic cell order. The `validated` flag records that the common-face
/// axiom has been checked (or holds by construction).
class PolyhedralComplex {
 public:
  PolyhedralComplex() = default;
  PolyhedralComplex(std::size_t ambient_dim, std::vector<Polyhedron> cells) : n_(ambient_dim) {
    for (const auto& c : cells)
      if (c.ambient_dim() != ambient_dim) throw InputError("cell has wrong ambient dimension");
    std::erase_if(cells, [](const Polyhedron& p) { return p.is_empty(); });
    std::sort(cells.begin(), cells.end(), [](const Polyhedron& a, const Polyhedron& b) { return a.key() < b.key(); });
    cells.erase(std::unique(cells.begin(), cells.end(), [](const Polyhedron& a, const Polyhedron& b) { return a.key() == b.key(); }),
                cells.end());
    std::vector<bool> keep(cells.size(), true);
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = 0; j < cells.size() && keep[i]; ++j)
        if (i != j && keep[j] && cells[i].dimension() <= cells[j].dimension() && is_subset(cells[i], cells[j]))
          keep[i] = false;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (keep[i]) cells_.push_back(std::move(cells[i]));
  }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool is_validated() const { return validated_; }

  /// Largest cell dimension; −1 for the empty complex.
  int dimension() const {
    int d = -1;
    for (const auto& c : cells_) d = std::max(d, c.dimension());
    return d;
  }
  bool is_pure() const {
    return std::all_of(cells_.begin(), cells_.end(), [d = dimension()](const Polyhedron& c) { return c.dimension() == d; });
  }

 private:
  friend struct detail::ComplexAccess;
  std::size_t n_ = 0;
  std::vector<Polyhedron> cells_;
  bool validated_ = false;
};

namespace detail {
struct ComplexAccess {
  static PolyhedralComplex mark(PolyhedralComplex c) {
    c.validated_ = true;
    return c;
  }
  /// Cells already known to be nonempty and pairwise non-nested; order kept.
  static PolyhedralComplex ordered(std::size_t n, std::vector<Polyhedron> cells, bool valid) {
    PolyhedralComplex c;
    c.n_ = n;
    c.cells_ = std::move(cells);
    c.validated_ = valid;
    return c;
  }
};

inline void require_validated(const PolyhedralComplex& c, const char* op) {
  if (!c.is_validated() && !c.empty()) throw ContractError(std::string(op) + " requires a validated complex");
}
inline void require_pure(const PolyhedralComplex& c, const char* op) {
  if (!c.is_pure())
    throw InputError(std::string(op) +
                     ": connectivity through codimension 1 is only defined for pure-dimensional complexes");
}
}  // namespace detail

struct ValidationReport {
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // cell index pairs, i < j
  bool ok() const { return violations.empty(); }
};

namespace detail {

/// P ∩ Q is empty or a face of both.
inline bool meets_facially(const Polyhedron& p, const Polyhedron& q) {
  Polyhedron f = intersect(p, q);
  if (f.is_empty()) return true;
  return is_face_of_superset(f, p) && is_face_of_superset(f, q);
}

}  // namespace detail

/// Checks the common-face axiom on every pair of maximal cells.
inline ValidationReport validate(const PolyhedralComplex& c) {
  ValidationReport report;
  const auto& cells = c.cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (!detail::meets_facially(cells[i], cells[j])) report.violations.emplace_back(i, j);
  return report;
}

/// The same complex flagged as validated; throws InputError listing the
/// offending cell pairs otherwise.
inline PolyhedralComplex validated(const PolyhedralComplex& c) {
  if (c.is_validated()) return c;
  ValidationReport r = validate(c);
  if (!r.ok()) {
    std::string msg = "not a polyhedral complex: cells meet in a non-face at pairs";
    for (auto [i, j] : r.violations) msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    throw InputError(msg);
  }
  return detail::ComplexAccess::mark(c);
}

/// Graph on the facets of a pure complex; edges join facets sharing a
/// codimension-1 face, which is kept as the edge's witness.
struct FacetGraph {
  struct Edge {
    std::size_t a, b;
    Polyhedron witness;
  };
  std::size_t nodes = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adjacency;

  bool adjacent(std::size_t i, std::size_t j) const {
    return std::find(adjacency[i].begin(), adjacency[i].end(), j) != adjacency[i].end();
  }

  /// Component label of every node (labels are the smallest node index in the component).
  std::vector<std::size_t> components() const {
    std::vector<std::size_t> label(nodes, nodes);
    for (std::size_t s = 0; s < nodes; ++s) {
      if (label[s] != nodes) continue;
      std::queue<std::size_t> q;
      q.push(s);
      label[s] = s;
      while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (auto w : adjacency[u])
          if (label[w] == nodes) {
            label[w] = s;
            q.push(w);
          }
      }
    }
    return label;
  }

  bool connected() const {
    auto l = components();
    return std::all_of(l.begin(), l.end(), [](std::size_t x) { return x == 0; });
  }
};

inline FacetGraph facet_graph(const PolyhedralComplex& c) {
  detail::require_validated(c, "facet_graph");
  detail::require_pure(c, "facet_graph");
  FacetGraph g;
  g.nodes = c.size();
  g.adjacency.resize(g.nodes);
  // In a valid pure complex two facets meet in dimension d − 1 exactly when
  // they share a codimension-1 face, and shared faces have equal keys.
  std::map<std::string, std::vector<std::size_t>> holders;
  std::map<std::string, Polyhedron> ridge;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (auto& f : facets(c.cells()[i])) {
      holders[f.key()].push_back(i);
      ridge.try_emplace(f.key(), std::move(f));
    }
  std::map<std::pair<std::size_t, std::size_t>, const Polyhedron*> pairs;
  for (const auto& [key, cells] : holders)
    for (std::size_t x = 0; x < cells.size(); ++x)
      for (std::size_t y = x + 1; y < cells.size(); ++y) pairs.try_emplace({cells[x], cells[y]}, &ridge.at(key));
  for (const auto& [ij, w] : pairs) {
    g.adjacency[ij.first].push_back(ij.second);
    g.adjacency[ij.second].push_back(ij.first);
    g.edges.push_back({ij.first, ij.second, *w});
  }
  for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
  return g;
}

/// Connectedness of the support: cells are convex, so it suffices that the
/// "cells intersect" graph is connected. The empty complex counts as connected.
inline bool is_connected(const PolyhedralComplex& c) {
  detail::require_validated(c, "is_connected");
  const auto& cells = c.cells();
  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (find(i) != find(j) && !intersect(cells[i], cells[j]).is_empty()) parent[find(i)] = find(j);
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (find(i) != find(0)) return false;
  return true;
}

inline bool is_connected_through_codim1(const PolyhedralComplex& c) {
  detail::require_validated(c, "is_connected_through_codim1");
  detail::require_pure(c, "is_connected_through_codim1");
  return facet_graph(c).connected();
}

/// Cell i of the result is cell i of `c` shifted by v.
inline PolyhedralComplex translate(const PolyhedralComplex& c, const QVector& v) {
  if (v.size() != c.ambient_dim()) throw InputError("translation vector has wrong length");
  std::vector<Polyhedron> cells;
  for (const auto& p : c.cells()) cells.push_back(translate(p, v));
  return detail::ComplexAccess::ordered(c.ambient_dim(), std::move(cells), c.is_validated());
}

/// Cells are P × Q in row-major order over (cells of a) × (cells of b).
inline PolyhedralComplex cartesian_product(const PolyhedralComplex& a, const PolyhedralComplex& b) {
  std::vector<Polyhedron> cells;
  for (const auto& p : a.cells())
    for (const auto& q : b.cells()) cells.push_back(product(p, q));
  return detail::ComplexAccess::ordered(a.ambient_dim() + b.ambient_dim(), std::move(cells),
                                        a.is_validated() && b.is_validated());
}

/// Maximal cells among all pairwise intersections of cells; its support is
/// supp(a) ∩ supp(b). Valid by construction when both inputs are.
inline PolyhedralComplex common_refinement(const PolyhedralComplex& a, const PolyhedralComplex& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("common_refinement: ambient dimensions differ");
  detail::require_validated(a, "common_refinement");
  detail::require_validated(b, "common_refinement");
  std::vector<Polyhedron> cells;
  for (const auto& p : a.cells())
    for (const auto& q : b.cells()) {
      Polyhedron r = intersect(p, q);
      if (!r.is_empty()) cells.push_back(std::move(r));
    }
  return detail::ComplexAccess::mark(PolyhedralComplex(a.ambient_dim(), std::move(cells)));
}

namespace detail {

/// Hyperplanes supporting p: its affine hull equations and facet hyperplanes.
inline std::vector<AffineFunctional> supporting_hyperplanes(const Polyhedron& p) {
  const CanonicalForm& c = p.canonical();
  std::vector<AffineFunctional> hs = c.equalities;
  for (const auto& f : c.inequalities) hs.push_back(f.canonical_hyperplane());
  return hs;
}

/// True iff h takes both signs on the relative interior of p.
inline bool cuts(const AffineFunctional& h, const Polyhedron& p) {
  if (p.is_empty()) return false;
  const auto& a = p.analysis();
  bool constant = std::all_of(a.directions.begin(), a.directions.end(),
                              [&](const QVector& d) { return sgn(dot(h.normal, d)) == 0; });
  if (constant) return false;
  int s = sgn(h(a.interior_point));
  if (s == 0) return true;
  LpResult r = lp_optimize(h.normal, p, s > 0 ? Sense::minimize : Sense::maximize);
  if (r.status == LpStatus::unbounded) return true;
  return sgn(r.value + h.offset) == -s;
}

/// Subdivide p by the hyperplanes that cut it.
inline std::vector<Polyhedron> split(const Polyhedron& p, const std::vector<AffineFunctional>& hyperplanes) {
  std::vector<Polyhedron> pieces{p};
  for (const auto& h : hyperplanes) {
    std::vector<Polyhedron> next;
    for (auto& piece : pieces) {
      if (!cuts(h, piece)) {
        next.push_back(std::move(piece));
        continue;
      }
      next.push_back(intersect(piece, Polyhedron(p.ambient_dim(), {}, {h})));
      next.push_back(intersect(piece, Polyhedron(p.ambient_dim(), {}, {-h})));
    }
    pieces = std::move(next);
  }
  return pieces;
}

}  // namespace detail

/// Default number of subdivision rounds `repair` may spend before giving up.
inline constexpr int kDefaultRepairRounds = 2;

/// Turn a finite family of polyhedra into a valid complex with the same
/// support: every pair that meets in a non-face is subdivided by each other's
/// supporting hyperplanes, non-maximal cells are discarded, and the check is
/// repeated. Throws SearchExhausted if `max_rounds` subdivisions do not suffice.
inline PolyhedralComplex repair(std::size_t ambient_dim, std::vector<Polyhedron> cells,
                                int max_rounds = kDefaultRepairRounds) {
  PolyhedralComplex current(ambient_dim, std::move(cells));
  std::map<std::pair<std::string, std::string>, bool> memo;
  for (int round = 0;; ++round) {
    const auto& cs = current.cells();
    std::vector<std::vector<AffineFunctional>> cutters(cs.size());
    bool valid = true;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        auto key = std::make_pair(cs[i].key(), cs[j].key());
        auto it = memo.find(key);
        bool ok = it != memo.end() ? it->second : (memo[key] = detail::meets_facially(cs[i], cs[j]));
        if (ok) continue;
        valid = false;
        for (const auto& h : detail::supporting_hyperplanes(intersect(cs[i], cs[j]))) {
          cutters[i].push_back(h);
          cutters[j].push_back(h);
        }
      }
    if (valid) return detail::ComplexAccess::mark(std::move(current));
    if (round == max_rounds)
      throw SearchExhausted("repair: cells still overlap in non-faces after " + std::to_string(max_rounds) +
                            " subdivision rounds");
    std::vector<Polyhedron> next;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto& hs = cutters[i];
      std::sort(hs.begin(), hs.end());
      hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
      for (auto& piece : detail::split(cs[i], hs)) next.push_back(std::move(piece));
    }
    current = PolyhedralComplex(ambient_dim, std::move(next));
  }
}

/// Valid complex whose support is supp(a) ∪ supp(b).
inline PolyhedralComplex union_with_repair(const PolyhedralComplex& a, const PolyhedralComplex& b,
                                           int max_rounds = kDefaultRepairRounds) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("union_with_repair: ambient dimensions differ");
  detail::require_validated(a, "union_with_repair");
  detail::require_validated(b, "union_with_repair");
  std::vector<Polyhedron> cells = a.cells();
  cells.insert(cells.end(), b.cells().begin(), b.cells().end());
  return repair(a.ambient_dim(), std::move(cells), max_rounds);
}

namespace detail {

/// p ⊆ ∪ cover. Only cover cells meeting p in full relative dimension matter
/// (the rest are nowhere dense in p); p is split along their hyperplanes until
/// each piece lies inside a single cover cell or provably does not.
inline bool covered(const Polyhedron& p, const std::vector<Polyhedron>& cover) {
  if (p.is_empty()) return true;
  std::vector<const Polyhedron*> relevant;
  for (const auto& q : cover)
    if (intersect(p, q).dimension() == p.dimension()) relevant.push_back(&q);
  if (relevant.empty()) return false;
  for (const auto* q : relevant)
    if (is_subset(p, *q)) return true;
  for (const auto* q : relevant)
    for (const auto& h : supporting_hyperplanes(*q))
      if (cuts(h, p)) {
        return covered(intersect(p, Polyhedron(p.ambient_dim(), {}, {h})), cover) &&
               covered(intersect(p, Polyhedron(p.ambient_dim(), {}, {-h})), cover);
      }
  return false;
}

}  // namespace detail

/// supp(a) ⊆ supp(b).
inline bool support_contained(const PolyhedralComplex& a, const PolyhedralComplex& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("support comparison across ambient dimensions");
  return std::all_of(a.cells().begin(), a.cells().end(),
                     [&](const Polyhedron& p) { return detail::covered(p, b.cells()); });
}

inline bool supports_equal(const PolyhedralComplex& a, const PolyhedralComplex& b) {
  return support_contained(a, b) && support_contained(b, a);
}

inline bool support_contains(const PolyhedralComplex& c, const QVector& x) {
  return std::any_of(c.cells().begin(), c.cells().end(), [&](const Polyhedron& p) { return p.contains(x); });
}

/// All nonempty faces of all cells, deduplicated.
inline std::vector<Polyhedron> all_faces(const PolyhedralComplex& c) {
  std::map<std::string, Polyhedron> seen;
  for (const auto& cell : c.cells())
    for (auto& f : faces(cell)) seen.try_emplace(f.key(), std::move(f));
  std::vector<Polyhedron> out;
  for (auto& [k, f] : seen) out.push_back(std::move(f));
  return out;
}

}  // namespace tropconn
