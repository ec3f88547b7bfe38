#pragma once

// Tropical objects under the min convention: a tropical polynomial with terms
// (exponent α, valuation c) evaluates to min_k (c_k + α_k·w).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tropconn/complex.hpp"
#include "tropconn/errors.hpp"
#include "tropconn/fourier_motzkin.hpp"

namespace tropconn {

/// Univariate polynomial known only through the valuations of its nonzero
/// coefficients. Terms are kept sorted by exponent.
class ValuedUnivariate {
 public:
  struct Term {
    std::int64_t exponent;
    Rational valuation;
  };

  explicit ValuedUnivariate(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw InputError("valued polynomial needs at least one term");
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].exponent < 0) throw InputError("negative exponent in univariate polynomial");
      if (i && terms_[i].exponent == terms_[i - 1].exponent) throw InputError("duplicate exponent");
    }
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::int64_t min_exponent() const { return terms_.front().exponent; }
  std::int64_t max_exponent() const { return terms_.back().exponent; }

 private:
  std::vector<Term> terms_;
};

/// Valuations of the roots in the torus, with multiplicities, in increasing order.
struct RootValuationMultiset {
  std::vector<std::pair<Rational, std::int64_t>> pairs;

  std::int64_t total_multiplicity() const {
    std::int64_t s = 0;
    for (const auto& [v, m] : pairs) s += m;
    return s;
  }
  friend bool operator==(const RootValuationMultiset&, const RootValuationMultiset&) = default;
};

/// Newton polygon: lower convex hull of the points (exponent, valuation). An
/// edge of slope s and width ℓ contributes ℓ roots of valuation −s.
inline RootValuationMultiset root_valuations(const ValuedUnivariate& f) {
  const auto& t = f.terms();
  if (t.size() == 1 && t.front().exponent == 0) throw InputError("constant polynomial has no roots in the torus");
  // Andrew's monotone chain, lower part; collinear points are dropped so each
  // slope appears once.
  std::vector<const ValuedUnivariate::Term*> hull;
  auto turn = [](const ValuedUnivariate::Term* o, const ValuedUnivariate::Term* a, const ValuedUnivariate::Term* b) {
    Rational cross = Rational(a->exponent - o->exponent) * (b->valuation - o->valuation) -
                     (a->valuation - o->valuation) * Rational(b->exponent - o->exponent);
    return sgn(cross);
  };
  for (const auto& term : t) {
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), &term) <= 0) hull.pop_back();
    hull.push_back(&term);
  }
  RootValuationMultiset out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    std::int64_t width = hull[i]->exponent - hull[i - 1]->exponent;
    Rational slope = (hull[i]->valuation - hull[i - 1]->valuation) / Rational(width);
    out.pairs.emplace_back(-slope, width);
  }
  std::reverse(out.pairs.begin(), out.pairs.end());  // slopes increase along the lower hull
  return out;
}

/// Multivariate (Laurent) tropical polynomial.
class TropicalPolynomial {
 public:
  struct Term {
    std::vector<std::int64_t> exponent;
    Rational valuation;
  };

  TropicalPolynomial(std::size_t ambient_dim, std::vector<Term> terms) : n_(ambient_dim), terms_(std::move(terms)) {
    for (const auto& term : terms_)
      if (term.exponent.size() != n_) throw InputError("term exponent has wrong length");
    for (std::size_t i = 0; i < terms_.size(); ++i)
      for (std::size_t j = i + 1; j < terms_.size(); ++j)
        if (terms_[i].exponent == terms_[j].exponent) throw InputError("duplicate exponent in tropical polynomial");
  }

  /// 1 + a₁x₁ + ⋯ + aₙxₙ with val(aᵢ) = vᵢ.
  static TropicalPolynomial linear(const QVector& v) {
    const std::size_t n = v.size();
    std::vector<Term> terms{{std::vector<std::int64_t>(n, 0), Rational(0)}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> e(n, 0);
      e[i] = 1;
      terms.push_back({std::move(e), v[i]});
    }
    return TropicalPolynomial(n, std::move(terms));
  }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// The affine function w ↦ c + α·w of one term.
  AffineFunctional term_function(std::size_t k) const {
    QVector normal(n_);
    for (std::size_t i = 0; i < n_; ++i) normal[i] = terms_[k].exponent[i];
    return {std::move(normal), terms_[k].valuation};
  }

 private:
  std::size_t n_;
  std::vector<Term> terms_;
};

/// The locus where the minimum over terms is attained at least twice, as a
/// complex whose cells are the regions on which a fixed set of at least two
/// terms attains the minimum. Cells come from pairs of terms; each pair's
/// region is identified by its full set of tight terms and only regions with
/// inclusion-minimal tight sets (the maximal cells) are kept.
inline PolyhedralComplex tropical_hypersurface(const TropicalPolynomial& f) {
  const std::size_t n = f.ambient_dim(), m = f.terms().size();
  if (m < 2) throw InputError("tropical hypersurface needs at least two terms");
  std::map<std::vector<std::size_t>, Polyhedron> regions;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const AffineFunctional ti = f.term_function(i);
      AffineFunctional tie = ti;
      const AffineFunctional tj = f.term_function(j);
      for (std::size_t k = 0; k < n; ++k) tie.normal[k] -= tj.normal[k];
      tie.offset -= tj.offset;
      std::vector<std::size_t> others;
      std::vector<AffineFunctional> ineqs;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        AffineFunctional g = f.term_function(k);
        for (std::size_t c = 0; c < n; ++c) g.normal[c] -= ti.normal[c];
        g.offset -= ti.offset;
        others.push_back(k);
        ineqs.push_back(std::move(g));
      }
      Polyhedron region(n, {tie}, std::move(ineqs));
      if (region.is_empty()) continue;
      std::vector<std::size_t> tight{i, j};
      for (auto idx : region.analysis().implicit) tight.push_back(others[idx]);
      std::sort(tight.begin(), tight.end());
      regions.try_emplace(std::move(tight), std::move(region));
    }
  std::vector<Polyhedron> cells;
  for (const auto& [tight, region] : regions) {
    bool minimal = std::none_of(regions.begin(), regions.end(), [&](const auto& other) {
      return other.first != tight && std::includes(tight.begin(), tight.end(), other.first.begin(), other.first.end());
    });
    if (minimal) cells.push_back(region);
  }
  return detail::ComplexAccess::mark(PolyhedralComplex(n, std::move(cells)));
}

/// The pure d-dimensional fan in ℚⁿ whose maximal cones are spanned by any d
/// of e₁, …, eₙ, −(e₁ + ⋯ + eₙ). For d = n − 1 this is the tropical hyperplane Δ.
inline PolyhedralComplex uniform_bergman_fan(std::size_t n, std::size_t d) {
  if (d < 1 || d > n) throw InputError("uniform_bergman_fan: need 1 <= d <= n");
  std::vector<QVector> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  gens.push_back(QVector(n, Rational(-1)));
  std::vector<Polyhedron> cells;
  std::vector<bool> chosen(n + 1, false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(d), true);
  do {
    std::vector<QVector> rays;
    for (std::size_t i = 0; i <= n; ++i)
      if (chosen[i]) rays.push_back(gens[i]);
    cells.push_back(hull_from_generators(n, {}, std::move(rays), {}));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return detail::ComplexAccess::mark(PolyhedralComplex(n, std::move(cells)));
}

/// 0-dimensional complex with one cell per point.
inline PolyhedralComplex point_complex(const std::vector<QVector>& points) {
  if (points.empty()) return detail::ComplexAccess::mark(PolyhedralComplex());
  std::vector<Polyhedron> cells;
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw InputError("points of different dimensions");
    cells.push_back(Polyhedron::point(p));
  }
  return detail::ComplexAccess::mark(PolyhedralComplex(points.front().size(), std::move(cells)));
}

/// Δ − v: the tropicalization of 1 + a₁x₁ + ⋯ + aₙxₙ with val(aᵢ) = vᵢ.
/// In ℚ¹ this is the single point −v.
inline PolyhedralComplex tropical_hyperplane(const QVector& v) {
  if (v.empty()) throw InputError("tropical_hyperplane: empty translation vector");
  if (v.size() == 1) return point_complex({-v});
  return translate(uniform_bergman_fan(v.size(), v.size() - 1), -v);
}

/// The root valuations as points of ℚ¹ (the tropicalization of {f = 0} ⊂ 𝔾ₘ).
inline PolyhedralComplex root_valuation_complex(const RootValuationMultiset& r) {
  std::vector<QVector> pts;
  for (const auto& [v, m] : r.pairs) pts.push_back({v});
  return point_complex(pts);
}

}  // namespace tropconn
