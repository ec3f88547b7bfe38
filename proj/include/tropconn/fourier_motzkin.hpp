#pragma once

// Coordinate projection by Fourier–Motzkin elimination, and the
// generator-to-inequality conversion that rides on it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "tropconn/polyhedron.hpp"

namespace tropconn {

namespace detail {

struct System {
  std::size_t n = 0;
  std::vector<AffineFunctional> eqs;
  std::vector<AffineFunctional> ineqs;
  bool infeasible = false;
};

/// Drop vacuous rows, detect contradictory constant rows, scale and dedupe.
inline void normalize(System& s) {
  std::vector<AffineFunctional> eqs, ineqs;
  for (const auto& f : s.eqs) {
    if (f.is_constant()) {
      if (sgn(f.offset) != 0) s.infeasible = true;
      continue;
    }
    eqs.push_back(f.canonical_hyperplane());
  }
  for (const auto& f : s.ineqs) {
    if (f.is_constant()) {
      if (sgn(f.offset) < 0) s.infeasible = true;
      continue;
    }
    ineqs.push_back(f.primitive());
  }
  std::sort(eqs.begin(), eqs.end());
  eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
  std::sort(ineqs.begin(), ineqs.end());
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
  s.eqs = std::move(eqs);
  s.ineqs = std::move(ineqs);
}

/// Remove inequalities implied by the remaining constraints (one LP each).
inline void prune_redundant(System& s) {
  if (s.infeasible) return;
  if (!solve_lp(s.n, s.eqs, s.ineqs, zero_vector(s.n), Sense::minimize).feasible()) {
    s.infeasible = true;
    return;
  }
  std::vector<bool> kept(s.ineqs.size(), true);
  for (std::size_t i = 0; i < s.ineqs.size(); ++i) {
    std::vector<AffineFunctional> others;
    for (std::size_t j = 0; j < s.ineqs.size(); ++j)
      if (j != i && kept[j]) others.push_back(s.ineqs[j]);
    LpResult r = solve_lp(s.n, s.eqs, others, s.ineqs[i].normal, Sense::minimize);
    if (r.optimal() && sgn(r.value + s.ineqs[i].offset) >= 0) kept[i] = false;
  }
  std::vector<AffineFunctional> out;
  for (std::size_t i = 0; i < s.ineqs.size(); ++i)
    if (kept[i]) out.push_back(std::move(s.ineqs[i]));
  s.ineqs = std::move(out);
}

inline AffineFunctional combine(const AffineFunctional& a, const Rational& ca, const AffineFunctional& b,
                                const Rational& cb) {
  AffineFunctional f(zero_vector(a.dim()), ca * a.offset + cb * b.offset);
  for (std::size_t j = 0; j < a.dim(); ++j) f.normal[j] = ca * a.normal[j] + cb * b.normal[j];
  return f;
}

inline void eliminate(System& s, std::size_t v) {
  auto eq = std::find_if(s.eqs.begin(), s.eqs.end(), [v](const AffineFunctional& f) { return sgn(f.normal[v]) != 0; });
  if (eq != s.eqs.end()) {
    const AffineFunctional pivot = *eq;
    s.eqs.erase(eq);
    auto substitute = [&](AffineFunctional& f) {
      if (sgn(f.normal[v]) == 0) return;
      f = combine(f, Rational(1), pivot, Rational(-f.normal[v] / pivot.normal[v]));
    };
    for (auto& f : s.eqs) substitute(f);
    for (auto& f : s.ineqs) substitute(f);
    normalize(s);
    return;
  }
  std::vector<AffineFunctional> pos, neg, out;
  for (auto& f : s.ineqs) {
    int sg = sgn(f.normal[v]);
    (sg > 0 ? pos : sg < 0 ? neg : out).push_back(std::move(f));
  }
  for (const auto& p : pos)
    for (const auto& q : neg) out.push_back(combine(p, Rational(-q.normal[v]), q, p.normal[v]));
  s.ineqs = std::move(out);
  normalize(s);
  prune_redundant(s);
}

}  // namespace detail

/// Exact image of p under the coordinate projection onto `keep` (kept in
/// increasing order).
inline Polyhedron fm_project(const Polyhedron& p, std::vector<std::size_t> keep) {
  const std::size_t n = p.ambient_dim();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto k : keep)
    if (k >= n) throw InputError("projection index out of range");

  detail::System s{n, p.equalities(), p.inequalities(), false};
  detail::normalize(s);
  std::vector<std::size_t> drop;
  for (std::size_t j = 0; j < n; ++j)
    if (!std::binary_search(keep.begin(), keep.end(), j)) drop.push_back(j);

  while (!drop.empty() && !s.infeasible) {
    // Variables pinned by an equality go first; otherwise the cheapest FM step.
    std::size_t pick = drop.size();
    for (std::size_t i = 0; i < drop.size() && pick == drop.size(); ++i)
      for (const auto& f : s.eqs)
        if (sgn(f.normal[drop[i]]) != 0) {
          pick = i;
          break;
        }
    if (pick == drop.size()) {
      std::size_t best = 0;
      for (std::size_t i = 0; i < drop.size(); ++i) {
        std::size_t np = 0, nn = 0;
        for (const auto& f : s.ineqs) {
          int sg = sgn(f.normal[drop[i]]);
          np += sg > 0;
          nn += sg < 0;
        }
        std::size_t cost = np * nn;
        if (pick == drop.size() || cost < best) {
          pick = i;
          best = cost;
        }
      }
    }
    detail::eliminate(s, drop[pick]);
    drop.erase(drop.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  const std::size_t m = keep.size();
  if (s.infeasible) return Polyhedron::empty(m);
  auto restrict = [&](const std::vector<AffineFunctional>& fs) {
    std::vector<AffineFunctional> out;
    for (const auto& f : fs) {
      QVector normal(m);
      for (std::size_t i = 0; i < m; ++i) normal[i] = f.normal[keep[i]];
      out.emplace_back(std::move(normal), f.offset);
    }
    return out;
  };
  return Polyhedron(m, restrict(s.eqs), restrict(s.ineqs));
}

/// H-representation of conv(vertices) + cone(rays) + span(lineality) in ℚⁿ,
/// obtained by projecting out the multipliers. With no vertices the origin is
/// the implied vertex; with no generators at all the result is empty.
inline Polyhedron hull_from_generators(std::size_t n, std::vector<QVector> vertices, std::vector<QVector> rays,
                                       std::vector<QVector> lineality) {
  for (const auto* list : {&vertices, &rays, &lineality})
    for (const auto& g : *list)
      if (g.size() != n) throw InputError("generator has wrong dimension");
  if (vertices.empty() && rays.empty() && lineality.empty()) return Polyhedron::empty(n);
  Generators gens{vertices, rays, lineality};
  if (vertices.empty()) vertices.push_back(zero_vector(n));

  const std::size_t nv = vertices.size(), nr = rays.size(), nl = lineality.size();
  const std::size_t total = n + nv + nr + nl;
  std::vector<AffineFunctional> eqs, ineqs;
  for (std::size_t i = 0; i < n; ++i) {
    AffineFunctional f(zero_vector(total), 0);
    f.normal[i] = 1;
    for (std::size_t k = 0; k < nv; ++k) f.normal[n + k] = -vertices[k][i];
    for (std::size_t k = 0; k < nr; ++k) f.normal[n + nv + k] = -rays[k][i];
    for (std::size_t k = 0; k < nl; ++k) f.normal[n + nv + nr + k] = -lineality[k][i];
    eqs.push_back(std::move(f));
  }
  AffineFunctional sum(zero_vector(total), -1);
  for (std::size_t k = 0; k < nv; ++k) sum.normal[n + k] = 1;
  eqs.push_back(std::move(sum));
  for (std::size_t k = 0; k < nv + nr; ++k) ineqs.emplace_back(unit_vector(total, n + k), 0);

  std::vector<std::size_t> keep(n);
  for (std::size_t i = 0; i < n; ++i) keep[i] = i;
  return fm_project(Polyhedron(total, std::move(eqs), std::move(ineqs)), std::move(keep)).with_generators(std::move(gens));
}

}  // namespace tropconn
