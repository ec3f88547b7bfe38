#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tropconn;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QVector vec(std::initializer_list<long> xs) {
  QVector v;
  for (auto x : xs) v.push_back(q(x));
  return v;
}

PolyhedralComplex sheets_by_monomial_map() {
  auto plane = uniform_bergman_fan(4, 2);
  auto pts = root_valuation_complex(root_valuations(ValuedUnivariate({{0, q(1)}, {1, q(0)}, {2, q(0)}})));
  IntegerMatrix a({{1, 0, 0, 0, 1}, {0, 1, 0, 0, 2}, {0, 0, 1, 0, 3}, {0, 0, 0, 1, 4}});
  return linear_image(cartesian_product(plane, pts), a);
}

/// Some x in supp(c) with a·x = y, by LP on each cell.
bool has_preimage(const PolyhedralComplex& c, const IntegerMatrix& a, const QVector& y) {
  for (const auto& cell : c.cells()) {
    std::vector<AffineFunctional> eqs = cell.equalities();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      QVector row;
      for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(Rational(static_cast<long>(a(i, j))));
      eqs.emplace_back(row, -y[i]);
    }
    if (solve_lp(a.cols(), eqs, cell.inequalities(), zero_vector(a.cols()), Sense::minimize).feasible()) return true;
  }
  return false;
}

}  // namespace

TEST(IntegerMatrix, DeterminantInverseProduct) {
  IntegerMatrix a({{2, 1}, {7, 4}}), b({{1, 3}, {0, 1}});
  EXPECT_EQ(a.determinant(), 1);
  EXPECT_TRUE(a.is_unimodular());
  EXPECT_EQ(a * a.inverse(), IntegerMatrix::identity(2));
  EXPECT_EQ((a * b).determinant(), a.determinant() * b.determinant());
  IntegerMatrix c({{2, 0}, {0, 3}});
  EXPECT_FALSE(c.is_unimodular());
  EXPECT_THROW(c.inverse(), InputError);
  EXPECT_EQ((c * a).determinant(), c.determinant() * a.determinant());
}

TEST(LinearImage, IdentityPreservesSupport) {
  auto c = uniform_bergman_fan(3, 2);
  EXPECT_TRUE(supports_equal(linear_image(c, IntegerMatrix::identity(3)), c));
}

TEST(LinearImage, ProjectionOfDiagonalSegment) {
  auto seg = validated(PolyhedralComplex(2, {hull_from_generators(2, {vec({0, 0}), vec({1, 1})}, {}, {})}));
  auto img = linear_image(seg, IntegerMatrix({{1, 0}}));
  EXPECT_TRUE(supports_equal(img, PolyhedralComplex(1, {hull_from_generators(1, {vec({0}), vec({1})}, {}, {})})));
}

TEST(LinearImage, MonomialMapGivesTwoSheets) {
  auto z = sheets_by_monomial_map();
  auto plane = uniform_bergman_fan(4, 2);
  EXPECT_TRUE(validate(z).ok());
  EXPECT_TRUE(supports_equal(z, union_with_repair(plane, translate(plane, vec({1, 2, 3, 4})))));
}

TEST(LinearImage, SupportCorrectnessBySampling) {
  auto plane = uniform_bergman_fan(4, 2);
  auto src = cartesian_product(plane, point_complex({{q(0)}, {q(1)}}));
  IntegerMatrix a({{1, 0, 0, 0, 1}, {0, 1, 0, 0, 2}, {0, 0, 1, 0, 3}, {0, 0, 0, 1, 4}});
  auto img = linear_image(src, a);
  for (const auto& cell : src.cells()) EXPECT_TRUE(support_contains(img, a.apply(relative_interior_point(cell))));
  for (const auto& cell : img.cells()) EXPECT_TRUE(has_preimage(src, a, relative_interior_point(cell)));
}

TEST(LinearImage, RejectsSizeMismatch) {
  EXPECT_THROW(linear_image(uniform_bergman_fan(3, 2), IntegerMatrix::identity(2)), InputError);
}

TEST(GenericBasis, SinglePointGivesIdentity) {
  EXPECT_EQ(generic_basis(point_complex({vec({1, 2, 3})})), IntegerMatrix::identity(3));
}

TEST(GenericBasis, HyperplaneFansPassIndependentCheck) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto c = uniform_bergman_fan(n, n - 1);
    auto u = generic_basis(c);
    EXPECT_EQ(abs(u.determinant()), 1);
    EXPECT_TRUE(oracle::basis_is_generic(c, u));
    EXPECT_TRUE(is_generic_basis(c, u));
  }
}

TEST(GenericBasis, IdentityIsNotGenericForTheFan) {
  auto c = uniform_bergman_fan(3, 2);
  EXPECT_FALSE(is_generic_basis(c, IntegerMatrix::identity(3)));
  EXPECT_FALSE(oracle::basis_is_generic(c, IntegerMatrix::identity(3)));
}

TEST(GenericBasis, XAxisNeedsNonzeroFirstCoordinates) {
  auto axis = validated(PolyhedralComplex(2, {Polyhedron(2, {AffineFunctional(vec({0, 1}), q(0))}, {})}));
  auto u = generic_basis(axis);
  EXPECT_EQ(abs(u.determinant()), 1);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NE(u(i, 0), 0);
    for (std::size_t j = 0; j < i; ++j) EXPECT_NE(u(i, 0) - u(j, 0), 0);
  }
}

TEST(GenericBasis, SheetsPassIndependentCheck) {
  auto z = sheets_by_monomial_map();
  auto u = generic_basis(z);
  EXPECT_EQ(abs(u.determinant()), 1);
  EXPECT_TRUE(oracle::basis_is_generic(z, u));
}

TEST(GenericBasis, Deterministic) {
  auto c = uniform_bergman_fan(4, 3);
  EXPECT_EQ(generic_basis(c), generic_basis(c));
}

TEST(ChangeCoordinates, IdentityAndInverse) {
  auto c = uniform_bergman_fan(3, 2);
  EXPECT_TRUE(supports_equal(change_coordinates(c, IntegerMatrix::identity(3)), c));
  IntegerMatrix u({{1, 1, 0}, {0, 1, 2}, {1, 0, -1}});
  ASSERT_TRUE(u.is_unimodular());
  auto moved = change_coordinates(c, u);
  EXPECT_TRUE(supports_equal(change_coordinates(moved, u.inverse()), c));
  EXPECT_EQ(is_connected(moved), is_connected(c));
  EXPECT_EQ(is_connected_through_codim1(moved), is_connected_through_codim1(c));
  EXPECT_THROW(change_coordinates(c, IntegerMatrix({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})), InputError);
}

TEST(ChangeCoordinates, PreservesVerdictsOnSheets) {
  auto z = sheets_by_monomial_map();
  auto moved = change_coordinates(z, generic_basis(z));
  EXPECT_TRUE(is_connected(moved));
  EXPECT_FALSE(is_connected_through_codim1(moved));
}

TEST(ChangeCoordinates, GenericBasisMakesSlicesProper) {
  auto c = uniform_bergman_fan(3, 2);
  auto moved = change_coordinates(c, generic_basis(c));
  std::mt19937_64 rng(6);
  int proper = 0;
  for (int k = 0; k < 10; ++k) {
    QVector v = oracle::random_vector(rng, 3, 3, 10);
    if (properness_check(moved, tropical_hyperplane(v)).proper) ++proper;
  }
  EXPECT_GE(proper, 8);
}
