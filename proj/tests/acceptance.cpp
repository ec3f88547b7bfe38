// Acceptance run: one PASS/FAIL line per criterion, each with a wall-clock limit.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"

namespace {

using namespace tropconn;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

ValuedUnivariate quadratic(const Rational& vc, const Rational& vb) {
  return ValuedUnivariate({{0, vc}, {1, vb}, {2, Rational(0)}});
}

void example_two_points(Outcome& out) {
  auto roots = root_valuations(quadratic(1, 0));
  RootValuationMultiset expected{{{Rational(0), 1}, {Rational(1), 1}}};
  out.require(roots == expected, "root valuations are " + to_string(roots));
  auto points = validated(root_valuation_complex(roots));
  out.require(points.size() == 2, "expected two points");
  out.require(!is_connected(points), "two points reported connected");
}

PolyhedralComplex trop_z() {
  auto plane = uniform_bergman_fan(4, 2);
  auto y = cartesian_product(plane, root_valuation_complex(root_valuations(quadratic(1, 0))));
  IntegerMatrix monomial({{1, 0, 0, 0, 1}, {0, 1, 0, 0, 2}, {0, 0, 1, 0, 3}, {0, 0, 0, 1, 4}});
  return linear_image(y, monomial);
}

void example_two_sheets(Outcome& out) {
  auto plane = uniform_bergman_fan(4, 2);
  auto shifted = translate(plane, {Rational(1), Rational(2), Rational(3), Rational(4)});
  auto z = trop_z();
  out.require(supports_equal(z, union_with_repair(plane, shifted)), "image support differs from the union of sheets");
  out.require(is_connected(z), "image not connected");
  out.require(!is_connected_through_codim1(z), "image connected through codim 1");
  auto meet = common_refinement(plane, shifted);
  auto point = point_complex({{Rational(0), Rational(0), Rational(1), Rational(2)}});
  out.require(supports_equal(meet, point), "sheets do not meet exactly in (0,0,1,2)");
}

void hyperplane_is_translated_fan(Outcome& out) {
  std::mt19937_64 rng(20240601);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int s = 0; s < 5; ++s) {
      QVector v = oracle::random_vector(rng, n, 3, 10);
      auto h = tropical_hypersurface(TropicalPolynomial::linear(v));
      auto fan = translate(uniform_bergman_fan(n, n - 1), -v);
      out.require(supports_equal(h, fan), "mismatch for n=" + std::to_string(n) + " v=" + to_string(v));
    }
}

void facet_normals(Outcome& out) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 3; n <= 4; ++n) {
    QVector v = oracle::random_vector(rng, n, 3, 10);
    auto h = tropical_hyperplane(v);
    for (const auto& cell : h.cells()) {
      QMatrix normals = oracle::normal_space(cell);
      out.require(normals.size() == 1, "facet normal space is not a line");
      if (normals.size() == 1)
        out.require(oracle::is_coordinate_or_difference(normals.front()), "facet normal " + to_string(normals.front()));
    }
  }
}

void generic_bases(Outcome& out, const PolyhedralComplex& c, const std::string& name) {
  auto start = std::chrono::steady_clock::now();
  IntegerMatrix u = generic_basis(c);
  out.require(abs(u.determinant()) == 1, name + ": basis is not unimodular");
  out.require(oracle::basis_is_generic(c, u), name + ": basis is orthogonal to some face");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 10, name + ": exceeded 10 s");
}

void slicing_properties(Outcome& out) {
  for (std::size_t n = 3; n <= 4; ++n) {
    const std::string name = "fan in R^" + std::to_string(n);
    auto c = validated(uniform_bergman_fan(n, n - 1));
    auto cg = facet_graph(c);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      std::mt19937_64 rng(seed);
      QVector v = choose_slicing_translate(c, 0, c.size() - 1, rng);
      auto check = check_slicing_translate(c, 0, c.size() - 1, v);
      out.require(check.ok(), name + ": chosen translate fails its own checks");
      out.require(properness_check(c, tropical_hyperplane(v)).proper, name + ": improper slice");
      auto cert = slice(c, v);
      const auto& cut = cert.intersection;
      for (std::size_t k = 0; k < cut.size(); ++k) {
        std::size_t holders = 0, holder = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
          if (is_subset(cut.cells()[k], c.cells()[i])) ++holders, holder = i;
        out.require(holders == 1, name + ": slice facet without a unique ambient facet");
        out.require(holders != 1 || cert.assignment[k] == holder, name + ": assignment disagrees with containment");
      }
      for (std::size_t a = 0; a < cut.size(); ++a)
        for (std::size_t b = a + 1; b < cut.size(); ++b) {
          if (!oracle::share_ridge(cut, a, b)) continue;
          auto fa = cert.assignment[a], fb = cert.assignment[b];
          out.require(fa == fb || oracle::share_ridge(c, fa, fb), name + ": adjacent slice facets map apart");
        }
      for (std::size_t a = 0; a < cut.size(); ++a)
        for (std::size_t b = 0; b < cut.size(); ++b) {
          auto inner = walk_bfs(cert.intersection_graph, a, b);
          if (!inner) continue;
          FacetWalk lifted = lift_walk(cert, *inner);
          out.require(is_valid_walk(lifted, cg), name + ": lifted walk rejected by the facet graph");
          out.require(oracle::walk_ok(c, lifted, cert.assignment[a], cert.assignment[b]),
                      name + ": lifted walk fails the ridge oracle");
        }
    }
    auto components = oracle::ridge_components(c);
    for (std::size_t f = 0; f < c.size(); ++f)
      for (std::size_t g = 0; g < c.size(); ++g) {
        const bool reachable = components[f] == components[g];
        out.require(walk_bfs(cg, f, g).has_value() == reachable, name + ": walk_bfs reachability disagrees");
        if (!reachable || g <= f) continue;
        FacetWalk w = theorem_walk(c, f, g, std::uint64_t{f * 31 + g});
        out.require(oracle::walk_ok(c, w, f, g),
                    name + ": theorem walk " + std::to_string(f) + "->" + std::to_string(g) + " invalid");
      }
  }
}

void fm_oracle(Outcome& out) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 4), count(1, 6), coef(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = dim(rng);
    std::vector<AffineFunctional> ineqs;
    for (int k = count(rng); k > 0; --k) {
      QVector a;
      for (std::size_t i = 0; i < n; ++i) a.push_back(Rational(coef(rng)));
      ineqs.emplace_back(a, Rational(coef(rng) + 3));
    }
    Polyhedron p(n, {}, ineqs);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 2) keep.push_back(i);
    if (keep.empty()) keep.push_back(0);
    Polyhedron proj = fm_project(p, keep);
    for (const auto& y : oracle::grid(keep.size(), 2, keep.size() > 2 ? 1 : 2))
      out.require(proj.contains(y) == oracle::projection_contains(p, keep, y),
                  "projection membership differs at " + to_string(y) + " (trial " + std::to_string(trial) + ")");
  }
}

void hypersurface_grid_oracle(Outcome& out) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> expo(0, 2), nterms(2, 5);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<TropicalPolynomial::Term> terms;
      std::vector<std::vector<std::int64_t>> used;
      while (terms.size() < 2) {
        terms.clear();
        used.clear();
        for (int k = nterms(rng); k > 0; --k) {
        std::vector<std::int64_t> e;
        for (std::size_t i = 0; i < n; ++i) e.push_back(expo(rng));
        if (std::find(used.begin(), used.end(), e) != used.end()) continue;
        used.push_back(e);
        terms.push_back({e, Rational(static_cast<long>(rng() % 5)) - 2});
        }
      }
      TropicalPolynomial f(n, terms);
      auto h = tropical_hypersurface(f);
      for (const auto& x : oracle::grid(n, 2, n == 3 ? 2 : 4))
        out.require(support_contains(h, x) == oracle::min_attained_twice(f, x), "membership differs at " + to_string(x));
    }
}

void quadratic_oracle(Outcome& out) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Rational vc = oracle::random_rational(rng, 4, 10);
    Rational vb = vc / 2 + abs(oracle::random_rational(rng, 2, 10));
    auto r = root_valuations(quadratic(vc, vb));
    RootValuationMultiset expected{{{Rational(vc / 2), 2}}};
    out.require(r == expected, "val c=" + to_string(vc) + " val b=" + to_string(vb) + " gives " + to_string(r));
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "two points from a quadratic are disconnected", 1, example_two_points},
      {2, "monomial image of a plane is two sheets meeting in a point", 30, example_two_sheets},
      {3, "tropical hyperplane equals the translated fan", 30, hyperplane_is_translated_fan},
      {4, "hyperplane facet normals are coordinate vectors or differences", 5, facet_normals},
      {5, "generic lattice bases, each under 10 s", 30,
       [](Outcome& out) {
         generic_bases(out, validated(uniform_bergman_fan(3, 2)), "fan in R^3");
         generic_bases(out, validated(uniform_bergman_fan(4, 3)), "fan in R^4");
         generic_bases(out, validated(trop_z()), "two-sheet image");
       }},
      {6, "slicing, lifting and theorem walks on hyperplane fans", 60, slicing_properties},
      {7, "projection, hypersurface and quadratic oracles", 60,
       [](Outcome& out) {
         fm_oracle(out);
         hypersurface_grid_oracle(out);
         quadratic_oracle(out);
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs >= c.limit_seconds) {
      out.ok = false;
      out.note = "time limit exceeded";
    }
    failures += !out.ok;
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (out.ok ? "PASS" : "FAIL") << " [" << std::fixed << std::setprecision(2)
         << secs << " s, limit " << c.limit_seconds << " s] " << c.title;
    if (!out.ok) line << " (" << out.note << ")";
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
