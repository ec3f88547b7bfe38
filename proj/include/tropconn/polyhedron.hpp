#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tropconn/errors.hpp"
#include "tropconn/linalg.hpp"
#include "tropconn/lp.hpp"
#include "tropconn/rational.hpp"

namespace tropconn {

/// V-representation: conv(vertices) + cone(rays) + span(lineality).
struct Generators {
  std::vector<QVector> vertices;
  std::vector<QVector> rays;
  std::vector<QVector> lineality;
};

/// Irredundant H-representation: the affine hull as reduced-echelon
/// hyperplanes plus one inequality per facet, each reduced modulo the hull and
/// scaled to a primitive integer normal. Two polyhedra are equal as point sets
/// iff their canonical forms are equal.
struct CanonicalForm {
  std::vector<AffineFunctional> equalities;
  std::vector<AffineFunctional> inequalities;
  std::string key;
};

/// Convex polyhedron {x ∈ ℚⁿ : eq(x) = 0 for all eq, ineq(x) ≥ 0 for all ineq}.
///
/// Values are immutable. Derived data (implicit equalities, dimension, a
/// relative-interior point, the canonical form) is computed on first use and
/// shared between copies; computation is guarded so concurrent readers are safe.
class Polyhedron {
 public:
  struct Analysis {
    bool empty = true;
    int dimension = -1;
    std::vector<std::size_t> implicit;  // indices into inequalities()
    QVector interior_point;
    RowEchelon hull;      // rows [normal | offset] of the affine hull, pivots in normal part
    QMatrix directions;   // basis of the linear space parallel to the affine hull
  };

  Polyhedron() : Polyhedron(0) {}
  explicit Polyhedron(std::size_t ambient_dim) : Polyhedron(ambient_dim, {}, {}) {}
  Polyhedron(std::size_t ambient_dim, std::vector<AffineFunctional> equalities,
             std::vector<AffineFunctional> inequalities)
      : data_(std::make_shared<Data>()), cache_(std::make_shared<Cache>()) {
    for (const auto& f : equalities)
      if (f.dim() != ambient_dim) throw InputError("equality has wrong dimension");
    for (const auto& f : inequalities)
      if (f.dim() != ambient_dim) throw InputError("inequality has wrong dimension");
    data_->n = ambient_dim;
    data_->equalities = std::move(equalities);
    data_->inequalities = std::move(inequalities);
  }

  static Polyhedron empty(std::size_t n) { return Polyhedron(n, {}, {AffineFunctional(zero_vector(n), -1)}); }

  static Polyhedron point(const QVector& p) {
    std::vector<AffineFunctional> eqs;
    for (std::size_t i = 0; i < p.size(); ++i) eqs.emplace_back(-unit_vector(p.size(), i), p[i]);
    return Polyhedron(p.size(), std::move(eqs), {}).with_generators({{p}, {}, {}});
  }

  std::size_t ambient_dim() const { return data_->n; }
  const std::vector<AffineFunctional>& equalities() const { return data_->equalities; }
  const std::vector<AffineFunctional>& inequalities() const { return data_->inequalities; }
  const std::optional<Generators>& generators() const { return data_->generators; }

  /// Same polyhedron with a known V-representation attached (caller guarantees it).
  Polyhedron with_generators(Generators g) const {
    Polyhedron p(data_->n, data_->equalities, data_->inequalities);
    p.data_->generators = std::move(g);
    p.cache_ = cache_;
    return p;
  }

  bool contains(const QVector& x) const {
    if (x.size() != ambient_dim()) throw InputError("point has wrong dimension");
    for (const auto& f : equalities())
      if (sgn(f(x)) != 0) return false;
    for (const auto& f : inequalities())
      if (sgn(f(x)) < 0) return false;
    return true;
  }

  const Analysis& analysis() const {
    std::call_once(cache_->analysis_once, [this] { cache_->analysis = analyze(); });
    return cache_->analysis;
  }
  const CanonicalForm& canonical() const {
    std::call_once(cache_->canonical_once, [this] { cache_->canonical = canonicalize(); });
    return cache_->canonical;
  }

  bool is_empty() const { return analysis().empty; }
  int dimension() const { return analysis().dimension; }
  const std::string& key() const { return canonical().key; }

 private:
  struct Data {
    std::size_t n = 0;
    std::vector<AffineFunctional> equalities;
    std::vector<AffineFunctional> inequalities;
    std::optional<Generators> generators;
  };
  struct Cache {
    std::once_flag analysis_once;
    Analysis analysis;
    std::once_flag canonical_once;
    CanonicalForm canonical;
  };

  Analysis analyze() const;
  CanonicalForm canonicalize() const;

  std::shared_ptr<Data> data_;
  std::shared_ptr<Cache> cache_;
};

inline LpResult lp_optimize(const QVector& objective, const Polyhedron& p, Sense sense) {
  return solve_lp(p.ambient_dim(), p.equalities(), p.inequalities(), objective, sense);
}

inline Polyhedron::Analysis Polyhedron::analyze() const {
  const std::size_t n = ambient_dim();
  const auto& eqs = equalities();
  const auto& ineqs = inequalities();
  Analysis a;

  LpResult feas = solve_lp(n, eqs, ineqs, zero_vector(n), Sense::minimize);
  if (!feas.feasible()) {
    for (std::size_t i = 0; i < ineqs.size(); ++i) a.implicit.push_back(i);
    return a;
  }
  a.empty = false;

  enum class Slack { unknown, strict, tight };
  std::vector<Slack> state(ineqs.size(), Slack::unknown);
  std::vector<QVector> witnesses;
  auto absorb = [&](const QVector& x) {
    for (std::size_t i = 0; i < ineqs.size(); ++i)
      if (state[i] == Slack::unknown && sgn(ineqs[i](x)) > 0) state[i] = Slack::strict;
    witnesses.push_back(x);
  };
  absorb(feas.point);

  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < ineqs.size(); ++i)
    if (state[i] == Slack::unknown) unknown.push_back(i);

  if (!unknown.empty()) {
    // One LP settles the common case: maximize t with slack_i ≥ t on every
    // undecided constraint, capped at 1.
    const std::size_t m = n + 1;
    auto lift = [&](const AffineFunctional& f) {
      QVector normal = f.normal;
      normal.push_back(0);
      return AffineFunctional(std::move(normal), f.offset);
    };
    std::vector<AffineFunctional> leq, lineq;
    for (const auto& f : eqs) leq.push_back(lift(f));
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      AffineFunctional f = lift(ineqs[i]);
      if (state[i] == Slack::unknown) f.normal[n] = -1;
      lineq.push_back(std::move(f));
    }
    lineq.emplace_back(-unit_vector(m, n), 1);
    LpResult r = solve_lp(m, leq, lineq, unit_vector(m, n), Sense::maximize);
    if (r.optimal() && sgn(r.value) > 0) {
      r.point.pop_back();
      absorb(r.point);
    } else {
      for (auto i : unknown) {
        if (state[i] != Slack::unknown) continue;
        std::vector<AffineFunctional> capped = ineqs;
        capped.push_back(-ineqs[i]);
        capped.back().offset += 1;
        LpResult s = solve_lp(n, eqs, capped, ineqs[i].normal, Sense::maximize);
        if (s.optimal() && sgn(s.value + ineqs[i].offset) > 0) {
          absorb(s.point);
        } else {
          state[i] = Slack::tight;
        }
      }
    }
  }

  for (std::size_t i = 0; i < ineqs.size(); ++i)
    if (state[i] != Slack::strict) a.implicit.push_back(i);

  // Average of the witnesses: each non-implicit inequality is strict at one of
  // them and nonnegative at the rest.
  a.interior_point = zero_vector(n);
  for (const auto& w : witnesses) a.interior_point = a.interior_point + w;
  a.interior_point = Rational(1, witnesses.size()) * a.interior_point;

  QMatrix hull_rows;
  auto push_row = [&](const AffineFunctional& f) {
    QVector row = f.normal;
    row.push_back(f.offset);
    hull_rows.push_back(std::move(row));
  };
  for (const auto& f : eqs) push_row(f);
  for (auto i : a.implicit) push_row(ineqs[i]);
  a.hull = reduced_row_echelon(std::move(hull_rows), n);
  a.dimension = static_cast<int>(n - a.hull.rank());
  QMatrix normals;
  for (const auto& row : a.hull.rows) normals.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
  a.directions = null_space(normals, n);
  return a;
}

namespace detail {

inline std::string encode(const std::vector<AffineFunctional>& eqs, const std::vector<AffineFunctional>& ineqs) {
  std::string key = "E";
  for (const auto& f : eqs) key += to_string(f);
  key += "I";
  for (const auto& f : ineqs) key += to_string(f);
  return key;
}

/// Reduce f modulo the affine hull so it vanishes on the hull's pivot columns.
inline AffineFunctional reduce_mod_hull(AffineFunctional f, const RowEchelon& hull) {
  const std::size_t n = f.dim();
  for (std::size_t r = 0; r < hull.rows.size(); ++r) {
    const std::size_t p = hull.pivots[r];
    if (sgn(f.normal[p]) == 0) continue;
    Rational c = f.normal[p];
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(hull.rows[r][j]) != 0) f.normal[j] -= c * hull.rows[r][j];
    f.offset -= c * hull.rows[r][n];
  }
  return f;
}

}  // namespace detail

inline CanonicalForm Polyhedron::canonicalize() const {
  const std::size_t n = ambient_dim();
  const Analysis& a = analysis();
  CanonicalForm c;
  if (a.empty) {
    c.inequalities.emplace_back(zero_vector(n), -1);
    c.key = detail::encode(c.equalities, c.inequalities);
    return c;
  }
  for (const auto& row : a.hull.rows)
    c.equalities.push_back(
        AffineFunctional(QVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n)), row[n]).canonical_hyperplane());

  std::vector<AffineFunctional> cand;
  for (std::size_t i = 0; i < inequalities().size(); ++i) {
    if (std::binary_search(a.implicit.begin(), a.implicit.end(), i)) continue;
    AffineFunctional f = detail::reduce_mod_hull(inequalities()[i], a.hull).primitive();
    if (f.is_constant()) continue;  // strictly positive, hence vacuous
    cand.push_back(std::move(f));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<bool> kept(cand.size(), true);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    std::vector<AffineFunctional> others;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (j != i && kept[j]) others.push_back(cand[j]);
    LpResult r = solve_lp(n, c.equalities, others, cand[i].normal, Sense::minimize);
    if (r.optimal() && sgn(r.value + cand[i].offset) >= 0) kept[i] = false;
  }
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (kept[i]) c.inequalities.push_back(std::move(cand[i]));
  c.key = detail::encode(c.equalities, c.inequalities);
  return c;
}

// ---------------------------------------------------------------------------
// Free operations

inline std::vector<std::size_t> implicit_equalities(const Polyhedron& p) { return p.analysis().implicit; }

inline int dimension(const Polyhedron& p) { return p.dimension(); }

inline QVector relative_interior_point(const Polyhedron& p) {
  if (p.is_empty()) throw InputError("relative interior of an empty polyhedron");
  return p.analysis().interior_point;
}

inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw InputError("intersecting polyhedra of different ambient dimension");
  std::vector<AffineFunctional> eqs = p.equalities(), ineqs = p.inequalities();
  eqs.insert(eqs.end(), q.equalities().begin(), q.equalities().end());
  ineqs.insert(ineqs.end(), q.inequalities().begin(), q.inequalities().end());
  return Polyhedron(p.ambient_dim(), std::move(eqs), std::move(ineqs));
}

/// Point-set equality.
inline bool same_set(const Polyhedron& p, const Polyhedron& q) {
  return p.ambient_dim() == q.ambient_dim() && p.key() == q.key();
}

/// p ⊆ q as point sets.
inline bool is_subset(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw InputError("subset test across ambient dimensions");
  if (const auto& g = p.generators()) {
    if (g->vertices.empty() && g->rays.empty() && g->lineality.empty()) return true;
    if (q.is_empty()) return false;
    // A cone given only by rays has the origin as its implicit vertex.
    std::vector<QVector> verts = g->vertices;
    if (verts.empty()) verts.push_back(zero_vector(p.ambient_dim()));
    for (const auto& f : q.equalities()) {
      for (const auto& v : verts)
        if (sgn(f(v)) != 0) return false;
      for (const auto& r : g->rays)
        if (sgn(dot(f.normal, r)) != 0) return false;
      for (const auto& l : g->lineality)
        if (sgn(dot(f.normal, l)) != 0) return false;
    }
    for (const auto& f : q.inequalities()) {
      for (const auto& v : verts)
        if (sgn(f(v)) < 0) return false;
      for (const auto& r : g->rays)
        if (sgn(dot(f.normal, r)) < 0) return false;
      for (const auto& l : g->lineality)
        if (sgn(dot(f.normal, l)) != 0) return false;
    }
    return true;
  }
  if (p.is_empty()) return true;
  if (q.is_empty()) return false;
  const auto& a = p.analysis();
  if (!q.contains(a.interior_point)) return false;
  auto orthogonal_to_p = [&](const QVector& normal) {
    return std::all_of(a.directions.begin(), a.directions.end(), [&](const QVector& d) { return sgn(dot(normal, d)) == 0; });
  };
  for (const auto& f : q.equalities())
    if (!orthogonal_to_p(f.normal)) return false;
  for (const auto& f : q.inequalities()) {
    if (orthogonal_to_p(f.normal)) continue;  // constant on p, and nonnegative at the interior point
    LpResult r = lp_optimize(f.normal, p, Sense::minimize);
    if (!r.optimal() || sgn(r.value + f.offset) < 0) return false;
  }
  return true;
}

namespace detail {

/// Smallest face of p containing the relative interior of f, assuming f ⊆ p.
inline Polyhedron carrier_face(const Polyhedron& f, const Polyhedron& p) {
  const QVector& x = f.analysis().interior_point;
  std::vector<AffineFunctional> eqs = p.equalities(), ineqs;
  for (const auto& g : p.inequalities()) (sgn(g(x)) == 0 ? eqs : ineqs).push_back(g);
  return Polyhedron(p.ambient_dim(), std::move(eqs), std::move(ineqs));
}

/// is_face for the case f ⊆ p already known.
inline bool is_face_of_superset(const Polyhedron& f, const Polyhedron& p) {
  if (f.is_empty()) return true;
  return is_subset(carrier_face(f, p), f);
}

}  // namespace detail

/// True iff f is a face of p: f ⊆ p and f equals p cut down by the
/// constraints of p that are tight on all of f. The empty set is a face.
inline bool is_face(const Polyhedron& f, const Polyhedron& p) {
  if (f.ambient_dim() != p.ambient_dim()) throw InputError("face test across ambient dimensions");
  if (f.is_empty()) return true;
  if (!is_subset(f, p)) return false;
  return detail::is_face_of_superset(f, p);
}

inline Polyhedron translate(const Polyhedron& p, const QVector& v) {
  if (v.size() != p.ambient_dim()) throw InputError("translation vector has wrong length");
  auto shift = [&](std::vector<AffineFunctional> fs) {
    for (auto& f : fs) f.offset -= dot(f.normal, v);
    return fs;
  };
  Polyhedron out(p.ambient_dim(), shift(p.equalities()), shift(p.inequalities()));
  if (const auto& g = p.generators()) {
    Generators h = *g;
    if (h.vertices.empty() && !(h.rays.empty() && h.lineality.empty())) h.vertices.push_back(zero_vector(v.size()));
    for (auto& x : h.vertices) x = x + v;
    return out.with_generators(std::move(h));
  }
  return out;
}

/// p × q ⊂ ℚ^(n1+n2).
inline Polyhedron product(const Polyhedron& p, const Polyhedron& q) {
  const std::size_t n1 = p.ambient_dim(), n2 = q.ambient_dim();
  auto pad = [&](const std::vector<AffineFunctional>& fs, bool first, std::vector<AffineFunctional>& out) {
    for (const auto& f : fs) {
      QVector normal = zero_vector(n1 + n2);
      std::copy(f.normal.begin(), f.normal.end(), normal.begin() + static_cast<std::ptrdiff_t>(first ? 0 : n1));
      out.emplace_back(std::move(normal), f.offset);
    }
  };
  std::vector<AffineFunctional> eqs, ineqs;
  pad(p.equalities(), true, eqs);
  pad(q.equalities(), false, eqs);
  pad(p.inequalities(), true, ineqs);
  pad(q.inequalities(), false, ineqs);
  Polyhedron out(n1 + n2, std::move(eqs), std::move(ineqs));
  const auto& gp = p.generators();
  const auto& gq = q.generators();
  if (!gp || !gq) return out;
  auto verts = [](const Generators& g, std::size_t n) {
    if (g.vertices.empty() && !(g.rays.empty() && g.lineality.empty())) return std::vector<QVector>{zero_vector(n)};
    return g.vertices;
  };
  auto embed = [&](const QVector& x, bool first) {
    QVector y = zero_vector(n1 + n2);
    std::copy(x.begin(), x.end(), y.begin() + static_cast<std::ptrdiff_t>(first ? 0 : n1));
    return y;
  };
  Generators g;
  for (const auto& a : verts(*gp, n1))
    for (const auto& b : verts(*gq, n2)) {
      QVector y = a;
      y.insert(y.end(), b.begin(), b.end());
      g.vertices.push_back(std::move(y));
    }
  for (const auto& r : gp->rays) g.rays.push_back(embed(r, true));
  for (const auto& r : gq->rays) g.rays.push_back(embed(r, false));
  for (const auto& l : gp->lineality) g.lineality.push_back(embed(l, true));
  for (const auto& l : gq->lineality) g.lineality.push_back(embed(l, false));
  return out.with_generators(std::move(g));
}

/// The codimension-1 faces of p: one per irredundant inequality.
inline std::vector<Polyhedron> facets(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  if (p.is_empty()) return out;
  const CanonicalForm& c = p.canonical();
  for (std::size_t i = 0; i < c.inequalities.size(); ++i) {
    std::vector<AffineFunctional> eqs = c.equalities, ineqs;
    eqs.push_back(c.inequalities[i]);
    for (std::size_t j = 0; j < c.inequalities.size(); ++j)
      if (j != i) ineqs.push_back(c.inequalities[j]);
    out.emplace_back(p.ambient_dim(), std::move(eqs), std::move(ineqs));
  }
  return out;
}

/// All nonempty faces of p, including p itself, deduplicated and ordered by
/// canonical key.
inline std::vector<Polyhedron> faces(const Polyhedron& p) {
  std::vector<Polyhedron> found;
  if (p.is_empty()) return found;
  std::vector<std::string> keys{p.key()};
  found.push_back(p);
  for (std::size_t next = 0; next < found.size(); ++next) {
    const CanonicalForm c = found[next].canonical();
    for (std::size_t i = 0; i < c.inequalities.size(); ++i) {
      std::vector<AffineFunctional> eqs = c.equalities, ineqs;
      eqs.push_back(c.inequalities[i]);
      for (std::size_t j = 0; j < c.inequalities.size(); ++j)
        if (j != i) ineqs.push_back(c.inequalities[j]);
      Polyhedron facet(p.ambient_dim(), std::move(eqs), std::move(ineqs));
      if (facet.is_empty()) continue;
      if (std::find(keys.begin(), keys.end(), facet.key()) != keys.end()) continue;
      keys.push_back(facet.key());
      found.push_back(std::move(facet));
    }
  }
  std::sort(found.begin(), found.end(), [](const Polyhedron& a, const Polyhedron& b) { return a.key() < b.key(); });
  return found;
}

}  // namespace tropconn
