#pragma once

// Exact two-phase simplex over the rationals with Bland's anti-cycling rule.
//
// Problems are stated over free variables x ∈ ℚⁿ with constraints
// eq(x) = 0 and ineq(x) ≥ 0. Internally x = p − q with p, q ≥ 0 and every
// inequality gets a surplus variable, which gives the standard form
// A·y = b, y ≥ 0 the tableau works on.

#include <cstddef>
#include <span>
#include <vector>

#include "tropconn/linalg.hpp"
#include "tropconn/rational.hpp"

namespace tropconn {

enum class LpStatus { infeasible, unbounded, optimal };
enum class Sense { minimize, maximize };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value = 0;  // meaningful only when optimal
  QVector point;       // an optimal point (or, for unbounded, the last feasible vertex)

  bool optimal() const { return status == LpStatus::optimal; }
  bool feasible() const { return status != LpStatus::infeasible; }
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows + 1, QVector(cols + 1, Rational(0))), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r].back(); }
  Rational& cost(std::size_t c) { return t_.back()[c]; }
  Rational& cost_rhs() { return t_.back().back(); }
  std::size_t rows() const { return t_.size() - 1; }
  std::size_t cols() const { return t_.front().size() - 1; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    QVector& pr = t_[r];
    Rational inv = 1 / pr[c];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < pr.size(); ++k) {
      if (sgn(pr[k]) == 0) continue;
      pr[k] *= inv;
      nz.push_back(k);
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Rational f = t_[i][c];
      for (auto k : nz) t_[i][k] -= f * pr[k];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Rewrite the cost row for costs c (indexed by column) against the current basis.
  void price(const QVector& c) {
    QVector& z = t_.back();
    for (std::size_t j = 0; j < cols(); ++j) z[j] = c[j];
    z.back() = 0;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols(); ++j)
        if (sgn(t_[i][j]) != 0) z[j] -= cb * t_[i][j];
    }
  }

  /// Minimize the priced cost using columns [0, allowed). Returns false if unbounded.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (sgn(cost(j)) < 0) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i].back() / t_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::vector<QVector> t_;  // last row is the reduced-cost row
  std::vector<std::size_t> basis_;
};

inline LpResult solve_tableau(std::size_t n, std::span<const AffineFunctional> equalities,
                              std::span<const AffineFunctional> inequalities, const QVector& objective, Sense sense) {
  if (objective.size() != n) throw InputError("objective length does not match the ambient dimension");
  for (const auto& f : equalities)
    if (f.dim() != n) throw InputError("constraint dimension mismatch");
  for (const auto& f : inequalities)
    if (f.dim() != n) throw InputError("constraint dimension mismatch");

  const std::size_t mi = inequalities.size(), me = equalities.size(), m = mi + me;
  const std::size_t surplus0 = 2 * n, art0 = 2 * n + mi;

  // Rows that cannot start with their surplus variable basic need an artificial.
  std::vector<bool> needs_art(m, true);
  std::vector<int> row_sign(m, 1);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < mi; ++i) {
    // a·p − a·q − s = −b
    if (sgn(inequalities[i].offset) >= 0) {
      row_sign[i] = -1;
      needs_art[i] = false;
    } else {
      ++n_art;
    }
  }
  for (std::size_t k = 0; k < me; ++k) {
    if (sgn(equalities[k].offset) > 0) row_sign[mi + k] = -1;
    ++n_art;
  }

  detail::Tableau tab(m, art0 + n_art);
  std::size_t next_art = art0;
  for (std::size_t r = 0; r < m; ++r) {
    const AffineFunctional& f = r < mi ? inequalities[r] : equalities[r - mi];
    const int s = row_sign[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(f.normal[j]) == 0) continue;
      tab.at(r, j) = s * f.normal[j];
      tab.at(r, n + j) = -s * f.normal[j];
    }
    if (r < mi) tab.at(r, surplus0 + r) = -s;
    tab.rhs(r) = -s * f.offset;
    if (needs_art[r]) {
      tab.at(r, next_art) = 1;
      tab.basis()[r] = next_art++;
    } else {
      tab.basis()[r] = surplus0 + r;
    }
  }

  const std::size_t total = art0 + n_art;
  if (n_art > 0) {
    QVector c(total, Rational(0));
    for (std::size_t j = art0; j < total; ++j) c[j] = 1;
    tab.price(c);
    tab.run(total);
    if (sgn(tab.cost_rhs()) != 0) return {LpStatus::infeasible, 0, {}};
    // Drive zero-valued artificials out of the basis; rows where that is
    // impossible are linearly dependent and can go.
    for (std::size_t r = tab.rows(); r-- > 0;) {
      if (tab.basis()[r] < art0) continue;
      std::size_t j = 0;
      while (j < art0 && sgn(tab.at(r, j)) == 0) ++j;
      if (j < art0)
        tab.pivot(r, j);
      else
        tab.drop_row(r);
    }
  }

  QVector c(total, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = sense == Sense::minimize ? objective[j] : Rational(-objective[j]);
    c[n + j] = -c[j];
  }
  tab.price(c);
  const bool bounded = tab.run(art0);

  QVector y(total, Rational(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) y[tab.basis()[r]] = tab.rhs(r);
  QVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
  if (!bounded) return {LpStatus::unbounded, 0, std::move(x)};
  Rational value = dot(objective, x);
  return {LpStatus::optimal, std::move(value), std::move(x)};
}

}  // namespace detail

/// Optimize objective·x subject to equalities(x) = 0 and inequalities(x) ≥ 0.
/// The equalities are eliminated first, so the simplex only sees the free
/// coordinates of their solution space.
inline LpResult solve_lp(std::size_t n, std::span<const AffineFunctional> equalities,
                         std::span<const AffineFunctional> inequalities, const QVector& objective, Sense sense) {
  if (equalities.empty()) return detail::solve_tableau(n, equalities, inequalities, objective, sense);
  if (objective.size() != n) throw InputError("objective length does not match the ambient dimension");
  QMatrix aug;
  for (const auto& f : equalities) {
    if (f.dim() != n) throw InputError("constraint dimension mismatch");
    QVector row = f.normal;
    row.push_back(f.offset);
    aug.push_back(std::move(row));
  }
  RowEchelon e = reduced_row_echelon(std::move(aug), n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n) return {LpStatus::infeasible, 0, {}};

  // x_pivot = −offset − Σ_free row·x_free; x = base + Σ_k z_k·dir_k.
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  QVector base = zero_vector(n);
  for (std::size_t r = 0; r < e.rank(); ++r) base[e.pivots[r]] = -e.rows[r][n];
  QMatrix dir(free.size(), zero_vector(n));
  for (std::size_t k = 0; k < free.size(); ++k) {
    dir[k][free[k]] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) dir[k][e.pivots[r]] = -e.rows[r][free[k]];
  }
  auto reduce = [&](const QVector& a) {
    QVector out(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) out[k] = dot(a, dir[k]);
    return out;
  };
  std::vector<AffineFunctional> reduced;
  for (const auto& f : inequalities) {
    if (f.dim() != n) throw InputError("constraint dimension mismatch");
    reduced.emplace_back(reduce(f.normal), f(base));
  }
  auto lift = [&](const QVector& z) {
    QVector x = base;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (sgn(z[k]) != 0)
        for (std::size_t j = 0; j < n; ++j) x[j] += z[k] * dir[k][j];
    return x;
  };

  if (free.empty()) {
    for (const auto& f : reduced)
      if (sgn(f.offset) < 0) return {LpStatus::infeasible, 0, {}};
    return {LpStatus::optimal, dot(objective, base), base};
  }
  LpResult r = detail::solve_tableau(free.size(), {}, reduced, reduce(objective), sense);
  if (r.status == LpStatus::infeasible) return r;
  QVector x = lift(r.point);
  Rational value = dot(objective, x);
  return {r.status, r.status == LpStatus::optimal ? std::move(value) : Rational(0), std::move(x)};
}

}  // namespace tropconn
