#pragma once

// Integer-linear maps of complexes (tropicalized monomial maps) and the
// construction of a lattice basis in general position with respect to a complex.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "tropconn/complex.hpp"
#include "tropconn/errors.hpp"
#include "tropconn/fourier_motzkin.hpp"
#include "tropconn/linalg.hpp"

namespace tropconn {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<std::vector<std::int64_t>> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_) throw InputError("matrix row count does not match its entries");
    for (const auto& r : e_)
      if (r.size() != cols_) throw InputError("matrix column count does not match its entries");
  }
  explicit IntegerMatrix(std::vector<std::vector<std::int64_t>> entries)
      : IntegerMatrix(entries.size(), entries.empty() ? 0 : entries.front().size(), entries) {}

  static IntegerMatrix identity(std::size_t n) {
    std::vector<std::vector<std::int64_t>> e(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
    return IntegerMatrix(n, n, std::move(e));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return e_[i][j]; }
  const std::vector<std::vector<std::int64_t>>& entries() const { return e_; }
  std::vector<std::int64_t> row(std::size_t i) const { return e_[i]; }

  Integer determinant() const {
    if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
    std::vector<std::vector<Integer>> m(rows_, std::vector<Integer>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m[i][j] = static_cast<long>(e_[i][j]);
    return tropconn::determinant(std::move(m));
  }

  bool is_unimodular() const { return rows_ == cols_ && abs(determinant()) == 1; }

  QVector apply(const QVector& x) const {
    if (x.size() != cols_) throw InputError("matrix/vector shape mismatch");
    QVector y = zero_vector(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (e_[i][j] != 0) y[i] += Rational(static_cast<long>(e_[i][j])) * x[j];
    return y;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
    std::vector<std::vector<std::int64_t>> e(a.rows_, std::vector<std::int64_t>(b.cols_, 0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) e[i][j] += a.e_[i][k] * b.e_[k][j];
    return IntegerMatrix(a.rows_, b.cols_, std::move(e));
  }

  /// Inverse of a unimodular matrix (again integral).
  IntegerMatrix inverse() const {
    if (!is_unimodular()) throw InputError("only unimodular matrices are inverted");
    const std::size_t n = rows_;
    QMatrix aug(n, QVector(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i][j] = static_cast<long>(e_[i][j]);
      aug[i][n + i] = 1;
    }
    RowEchelon r = reduced_row_echelon(std::move(aug), n);
    std::vector<std::vector<std::int64_t>> inv(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.rows[i][n + j].get_num().get_si();
    return IntegerMatrix(n, n, std::move(inv));
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::int64_t>> e_;
};

namespace detail {

inline Polyhedron image_of_cell(const Polyhedron& p, const IntegerMatrix& a) {
  const std::size_t n = a.cols(), m = a.rows();
  if (const auto& g = p.generators()) {
    auto map_all = [&](const std::vector<QVector>& vs) {
      std::vector<QVector> out;
      for (const auto& v : vs) out.push_back(a.apply(v));
      return out;
    };
    return hull_from_generators(m, map_all(g->vertices), map_all(g->rays), map_all(g->lineality));
  }
  // Graph {(x, y) : x ∈ p, y = A·x} projected onto y.
  auto lift = [&](const std::vector<AffineFunctional>& fs) {
    std::vector<AffineFunctional> out;
    for (const auto& f : fs) {
      QVector normal = f.normal;
      normal.resize(n + m, Rational(0));
      out.emplace_back(std::move(normal), f.offset);
    }
    return out;
  };
  std::vector<AffineFunctional> eqs = lift(p.equalities());
  for (std::size_t i = 0; i < m; ++i) {
    AffineFunctional f(zero_vector(n + m), 0);
    f.normal[n + i] = 1;
    for (std::size_t j = 0; j < n; ++j) f.normal[j] = -static_cast<long>(a(i, j));
    eqs.push_back(std::move(f));
  }
  std::vector<std::size_t> keep(m);
  std::iota(keep.begin(), keep.end(), n);
  return fm_project(Polyhedron(n + m, std::move(eqs), lift(p.inequalities())), std::move(keep));
}

}  // namespace detail

/// A·supp(C), organized as a valid complex. Cell images may overlap in
/// non-faces when A is not injective, so the images always go through repair.
inline PolyhedralComplex linear_image(const PolyhedralComplex& c, const IntegerMatrix& a,
                                      int max_rounds = kDefaultRepairRounds) {
  if (a.cols() != c.ambient_dim()) throw InputError("linear_image: matrix has " + std::to_string(a.cols()) +
                                                    " columns but the complex lives in dimension " +
                                                    std::to_string(c.ambient_dim()));
  std::vector<Polyhedron> images;
  for (const auto& p : c.cells()) images.push_back(detail::image_of_cell(p, a));
  return repair(a.rows(), std::move(images), max_rounds);
}

namespace detail {

/// Cells of c under x ↦ U·x, in the original order. A constraint a·x + c
/// becomes (a·U⁻¹)·y + c; known generators are mapped forward.
inline std::vector<Polyhedron> transformed_cells(const PolyhedralComplex& c, const IntegerMatrix& u) {
  const std::size_t n = c.ambient_dim();
  const IntegerMatrix inv = u.inverse();
  auto pull = [&](const std::vector<AffineFunctional>& fs) {
    std::vector<AffineFunctional> out;
    for (const auto& f : fs) {
      QVector normal = zero_vector(n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (inv(k, j) != 0) normal[j] += f.normal[k] * Rational(static_cast<long>(inv(k, j)));
      out.emplace_back(std::move(normal), f.offset);
    }
    return out;
  };
  std::vector<Polyhedron> cells;
  for (const auto& p : c.cells()) {
    Polyhedron q(n, pull(p.equalities()), pull(p.inequalities()));
    if (const auto& g = p.generators()) {
      auto push = [&](const std::vector<QVector>& vs) {
        std::vector<QVector> out;
        for (const auto& v : vs) out.push_back(u.apply(v));
        return out;
      };
      q = q.with_generators(Generators{push(g->vertices), push(g->rays), push(g->lineality)});
    }
    cells.push_back(std::move(q));
  }
  return cells;
}

}  // namespace detail

/// Image under a unimodular change of lattice coordinates x ↦ U·x. The map is
/// a bijection, so cell structure and validity carry over unchanged.
inline PolyhedralComplex change_coordinates(const PolyhedralComplex& c, const IntegerMatrix& u) {
  if (u.rows() != c.ambient_dim() || u.cols() != c.ambient_dim())
    throw InputError("change_coordinates: matrix size must equal the ambient dimension");
  if (!u.is_unimodular()) throw InputError("change_coordinates: matrix is not unimodular");
  PolyhedralComplex out(c.ambient_dim(), detail::transformed_cells(c, u));
  return c.is_validated() ? detail::ComplexAccess::mark(std::move(out)) : out;
}

namespace detail {

inline std::int64_t gcd_of(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

/// Integer vectors of max-norm exactly k, ordered colexicographically with
/// coordinate values ranked 0, 1, −1, 2, −2, …; e₁ is the first vector of shell 1.
template <typename Visit>
bool for_each_in_shell(std::size_t n, std::int64_t k, Visit&& visit) {
  auto value = [](std::int64_t rank) { return rank % 2 ? (rank + 1) / 2 : -(rank / 2); };
  std::vector<std::int64_t> rank(n, 0), v(n, 0);
  for (;;) {
    bool on_shell = std::any_of(v.begin(), v.end(), [k](std::int64_t x) { return std::abs(x) == k; });
    if (on_shell && visit(v)) return true;
    std::size_t i = 0;
    while (i < n && rank[i] == 2 * k) {
      rank[i] = 0;
      v[i] = 0;
      ++i;
    }
    if (i == n) return false;
    ++rank[i];
    v[i] = value(rank[i]);
  }
}

/// Unimodular matrix whose first row is the primitive vector f, by integer
/// column reduction of f to e₁ while tracking the inverse transform.
inline std::vector<std::vector<std::int64_t>> complete_to_basis(const std::vector<std::int64_t>& f) {
  const std::size_t n = f.size();
  std::vector<std::int64_t> r = f;
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) w[i][i] = 1;
  // Invariant: r · w = f.
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (r[i] != 0 && (piv == n || std::abs(r[i]) < std::abs(r[piv]))) piv = i;
    bool single = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == piv || r[j] == 0) continue;
      single = false;
      std::int64_t q = r[j] / r[piv];
      r[j] -= q * r[piv];  // column j −= q · column piv
      for (std::size_t c = 0; c < n; ++c) w[piv][c] += q * w[j][c];
    }
    if (!single) continue;
    if (piv != 0) {
      std::swap(r[0], r[piv]);
      std::swap(w[0], w[piv]);
    }
    if (r[0] < 0) {
      r[0] = -r[0];
      for (auto& x : w[0]) x = -x;
    }
    break;
  }
  return w;
}

/// Distinct direction spaces (as spanning rows) of the positive-dimensional faces.
inline std::vector<QMatrix> face_directions(const PolyhedralComplex& c) {
  std::vector<QMatrix> directions;
  std::vector<std::string> seen;
  for (const auto& f : all_faces(c)) {
    if (f.dimension() < 1) continue;
    QMatrix d = f.analysis().directions;
    RowEchelon e = reduced_row_echelon(d);
    std::string key;
    for (const auto& row : e.rows) key += to_string(row);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    directions.push_back(std::move(d));
  }
  return directions;
}

inline bool avoids_orthogonality(const std::vector<std::int64_t>& u, const std::vector<QMatrix>& directions) {
  QVector q(u.begin(), u.end());
  return std::all_of(directions.begin(), directions.end(), [&](const QMatrix& d) {
    return std::any_of(d.begin(), d.end(), [&](const QVector& x) { return sgn(dot(q, x)) != 0; });
  });
}

}  // namespace detail

/// Whether the rows of u, and all their pairwise differences, avoid being
/// orthogonal to every positive-dimensional face of c.
inline bool is_generic_basis(const PolyhedralComplex& c, const IntegerMatrix& u) {
  if (u.rows() != c.ambient_dim() || u.cols() != c.ambient_dim()) throw InputError("is_generic_basis: size mismatch");
  const auto directions = detail::face_directions(c);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (!detail::avoids_orthogonality(u.row(i), directions)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<std::int64_t> diff(u.cols());
      for (std::size_t k = 0; k < u.cols(); ++k) diff[k] = u(i, k) - u(j, k);
      if (!detail::avoids_orthogonality(diff, directions)) return false;
    }
  }
  return true;
}

/// Lattice basis f₁, …, fₙ (the rows of the result) such that no fᵢ and no
/// difference fⱼ − fᵢ is orthogonal to the direction space of any
/// positive-dimensional face of the complex. Follows the constructive
/// argument: a good primitive f₁ first, then fⱼ = gⱼ + aⱼ·f₁ for a completion
/// g₂, …, gₙ, trying aⱼ = 0, 1, −1, 2, −2, … .
inline IntegerMatrix generic_basis(const PolyhedralComplex& c) {
  detail::require_validated(c, "generic_basis");
  const std::size_t n = c.ambient_dim();
  if (n == 0) return IntegerMatrix::identity(0);

  const std::vector<QMatrix> directions = detail::face_directions(c);
  auto good = [&](const std::vector<std::int64_t>& u) { return detail::avoids_orthogonality(u, directions); };
  const std::int64_t bound = 1000 * static_cast<std::int64_t>(std::max<std::size_t>(directions.size(), 1));

  std::vector<std::int64_t> f1;
  for (std::int64_t k = 1; k <= bound && f1.empty(); ++k)
    detail::for_each_in_shell(n, k, [&](const std::vector<std::int64_t>& v) {
      if (detail::gcd_of(v) != 1 || !good(v)) return false;
      f1 = v;
      return true;
    });
  if (f1.empty()) throw SearchExhausted("generic_basis: no admissible first basis vector within the search bound");

  auto g = detail::complete_to_basis(f1);
  std::vector<std::vector<std::int64_t>> rows{f1};
  for (std::size_t j = 1; j < n; ++j) {
    bool found = false;
    for (std::int64_t step = 0; step <= 2 * bound && !found; ++step) {
      std::int64_t a = step % 2 ? (step + 1) / 2 : -(step / 2);
      std::vector<std::int64_t> cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = g[j][i] + a * f1[i];
      if (!good(cand)) continue;
      bool ok = true;
      for (const auto& prev : rows) {
        std::vector<std::int64_t> diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = cand[i] - prev[i];
        if (!good(diff)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      rows.push_back(std::move(cand));
      found = true;
    }
    if (!found) throw SearchExhausted("generic_basis: no admissible multiplier within the search bound");
  }
  return IntegerMatrix(n, n, std::move(rows));
}

}  // namespace tropconn
