// Command-line front end. Exit codes: 0 success or true, 1 false or search
// failure, 2 input error, 3 contract violation.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropconn/tropconn.hpp"

namespace {

using namespace tropconn;

constexpr int kTrue = 0, kFalse = 1, kInputError = 2, kContractError = 3;

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PolyhedralComplex read_complex(const std::string& path) { return parse_complex(slurp(path)); }
PolyhedralComplex read_valid(const std::string& path) { return validated(read_complex(path)); }

std::string walk_text(const FacetWalk& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " -> " : "") + std::to_string(w[i]);
  return s;
}

int example_ex13() {
  // x² + x + p with the p-adic valuation: constant term has valuation 1.
  auto roots = root_valuations(ValuedUnivariate({{0, Rational(1)}, {1, Rational(0)}, {2, Rational(0)}}));
  PolyhedralComplex points = root_valuation_complex(roots);
  const bool connected = is_connected(points);
  std::cout << "root valuations: " << to_string(roots) << "\n";
  std::cout << "connected: " << (connected ? "true" : "false") << "\n";
  std::cout << (connected ? "connected" : "disconnected") << "\n";
  return kTrue;
}

int example_ex14() {
  PolyhedralComplex plane = uniform_bergman_fan(4, 2);
  auto roots = root_valuations(ValuedUnivariate({{0, Rational(1)}, {1, Rational(0)}, {2, Rational(0)}}));
  PolyhedralComplex y = cartesian_product(plane, root_valuation_complex(roots));
  IntegerMatrix monomial({{1, 0, 0, 0, 1}, {0, 1, 0, 0, 2}, {0, 0, 1, 0, 3}, {0, 0, 0, 1, 4}});
  PolyhedralComplex z = linear_image(y, monomial);
  PolyhedralComplex shifted = translate(plane, {Rational(1), Rational(2), Rational(3), Rational(4)});
  if (!supports_equal(z, union_with_repair(plane, shifted)))
    throw ContractError("image of the product does not match the union of the two sheets");
  PolyhedralComplex meet = common_refinement(plane, shifted);
  if (meet.size() != 1 || meet.dimension() != 0) throw ContractError("the two sheets do not meet in a single point");
  std::cout << "connected: " << (is_connected(z) ? "true" : "false")
            << ", connected-through-codim-1: " << (is_connected_through_codim1(z) ? "true" : "false")
            << ", intersection point: " << to_string(meet.cells().front().analysis().interior_point) << "\n";
  return kTrue;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact polyhedral and tropical connectivity toolkit"};
  app.require_subcommand(1);
  int code = kTrue;

  std::string in = "-", in2, matrix_path, vector_text;
  std::size_t f = 0, f2 = 0, n = 0, d = 0;
  std::uint64_t seed = 0;
  int depth = 8, rounds = kDefaultRepairRounds;
  std::string which;

  auto input = [&](CLI::App* c) { c->add_option("file", in, "Input document (- for stdin)")->capture_default_str(); };

  auto* normalize = app.add_subcommand("normalize", "Print the canonical form of a complex document");
  input(normalize);
  normalize->callback([&] { std::cout << serialize_complex(read_complex(in)); });

  auto* val = app.add_subcommand("validate", "Check that cells pairwise meet in common faces");
  input(val);
  val->callback([&] {
    auto c = read_complex(in);
    auto report = validate(c);
    std::cout << "valid: " << (report.ok() ? "true" : "false") << "\n";
    for (auto [i, j] : report.violations) std::cout << "cells " << i << " and " << j << " meet in a non-face\n";
    code = report.ok() ? kTrue : kFalse;
  });

  auto* conn = app.add_subcommand("connectivity", "Connected and connected-through-codimension-1 verdicts");
  input(conn);
  conn->callback([&] {
    auto c = read_valid(in);
    std::cout << "connected: " << (is_connected(c) ? "true" : "false") << "\n";
    if (!c.is_pure()) {
      std::cout << "connected-through-codim-1: n/a (complex is not pure)\n";
      code = kFalse;
      return;
    }
    const bool strong = is_connected_through_codim1(c);
    std::cout << "connected-through-codim-1: " << (strong ? "true" : "false") << "\n";
    code = strong ? kTrue : kFalse;
  });

  auto* walk = app.add_subcommand("walk", "Shortest facet walk by breadth-first search");
  walk->add_option("F", f)->required();
  walk->add_option("G", f2)->required();
  input(walk);
  walk->callback([&] {
    auto w = walk_bfs(read_valid(in), f, f2);
    std::cout << (w ? "walk: " + walk_text(*w) : std::string("unreachable")) << "\n";
    code = w ? kTrue : kFalse;
  });

  auto* hyp = app.add_subcommand("hypersurface", "Tropical hypersurface of a polynomial document");
  input(hyp);
  hyp->callback([&] { std::cout << serialize_complex(tropical_hypersurface(parse_polynomial(slurp(in)))); });

  auto* newton = app.add_subcommand("newton", "Root valuations of a univariate polynomial document");
  input(newton);
  newton->callback([&] { std::cout << to_string(root_valuations(parse_univariate(slurp(in)))) << "\n"; });

  auto* berg = app.add_subcommand("bergman", "Fan spanned by any d of e1..en and -(e1+...+en)");
  berg->add_option("n", n)->required();
  berg->add_option("d", d)->required();
  berg->callback([&] { std::cout << serialize_complex(uniform_bergman_fan(n, d)); });

  auto* tr = app.add_subcommand("translate", "Shift a complex by a vector");
  tr->add_option("--vector,-v", vector_text, "Comma-separated rationals")->required();
  input(tr);
  tr->callback([&] { std::cout << serialize_complex(translate(read_complex(in), parse_vector_list(vector_text))); });

  auto* prod = app.add_subcommand("product", "Cartesian product of two complexes");
  prod->add_option("first", in)->required();
  prod->add_option("second", in2)->required();
  prod->callback([&] { std::cout << serialize_complex(cartesian_product(read_valid(in), read_valid(in2))); });

  auto* img = app.add_subcommand("image", "Image under an integer matrix, repaired into a complex");
  img->add_option("matrix", matrix_path)->required();
  input(img);
  img->add_option("--rounds", rounds, "Subdivision rounds allowed for repair")->capture_default_str();
  img->callback([&] {
    std::cout << serialize_complex(linear_image(read_complex(in), parse_matrix(slurp(matrix_path)), rounds));
  });

  auto* basis = app.add_subcommand("basis", "Lattice basis avoiding orthogonality to all faces");
  input(basis);
  basis->callback([&] { std::cout << matrix_to_json(generic_basis(read_valid(in))).dump() << "\n"; });

  auto* inter = app.add_subcommand("intersect", "Common refinement of two complexes");
  inter->add_option("first", in)->required();
  inter->add_option("second", in2)->required();
  inter->callback([&] { std::cout << serialize_complex(common_refinement(read_valid(in), read_valid(in2))); });

  auto* proper = app.add_subcommand("properness", "Whether two pure complexes meet properly");
  proper->add_option("first", in)->required();
  proper->add_option("second", in2)->required();
  proper->callback([&] {
    auto r = properness_check(read_valid(in), read_valid(in2));
    std::cout << "proper: " << (r.proper ? "true" : "false") << "\n";
    for (auto [i, j] : r.violations) std::cout << "cells " << i << " and " << j << " meet improperly\n";
    code = r.proper ? kTrue : kFalse;
  });

  auto* sl = app.add_subcommand("slice", "Intersect with the tropical hyperplane translated by -v");
  sl->add_option("--vector,-v", vector_text, "Comma-separated rationals")->required();
  input(sl);
  sl->callback([&] {
    auto cert = slice(read_valid(in), parse_vector_list(vector_text));
    std::cout << "proper: " << (cert.properness ? "true" : "false") << "\nassignment:";
    for (auto a : cert.assignment) std::cout << " " << a;
    std::cout << "\n" << serialize_complex(cert.intersection);
  });

  auto* tw = app.add_subcommand("theorem-walk", "Facet walk built by recursive slicing");
  tw->add_option("F", f)->required();
  tw->add_option("G", f2)->required();
  input(tw);
  tw->add_option("--seed", seed, "Seed for translate sampling")->capture_default_str();
  tw->add_option("--depth", depth, "Recursion budget")->capture_default_str();
  tw->callback([&] {
    TheoremWalkOptions opt;
    opt.depth_budget = depth;
    std::cout << "walk: " << walk_text(theorem_walk(read_valid(in), f, f2, seed, opt)) << "\n";
  });

  auto* ex = app.add_subcommand("example", "Worked examples: ex13, ex14");
  ex->add_option("name", which)->required()->check(CLI::IsMember({"ex13", "ex14"}));
  ex->callback([&] { code = which == "ex13" ? example_ex13() : example_ex14(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kTrue : kInputError;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const SearchExhausted& e) {
    std::cerr << "search failed: " << e.what() << "\n";
    return kFalse;
  } catch (const DisconnectedSlice& e) {
    std::cerr << "disconnected slice: " << e.what() << "\n";
    return kFalse;
  } catch (const ImproperSlice& e) {
    std::cerr << "improper slice: " << e.what() << "\n";
    return kFalse;
  } catch (const std::exception& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContractError;
  }
}
