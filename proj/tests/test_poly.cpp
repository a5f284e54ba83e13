#include <catch2/catch_amalgamated.hpp>

#include "tropicurve/parser.hpp"
#include "tropicurve/poly.hpp"

using namespace trop;

namespace {

LaurentPolynomial poly(const std::string& text,
                       const std::vector<std::string>& names) {
  return parse_polynomial(text, names);
}

}  // namespace

TEST_CASE("terms accumulate and cancel exactly") {
  LaurentPolynomial f(2);
  f.add_term({1, 0}, {2.0, 0.0});
  f.add_term({1, 0}, {3.0, 0.0});
  REQUIRE(f.term_count() == 1);
  f.add_term({1, 0}, {-5.0, 0.0});
  REQUIRE(f.is_zero());
}

TEST_CASE("evaluation handles negative exponents and rejects zero bases") {
  auto f = poly("x^-2*y + 3", {"x", "y"});
  const Complex v = f.evaluate({{2.0, 0.0}, {8.0, 0.0}});
  REQUIRE(std::abs(v - Complex{5.0, 0.0}) < 1e-14);
  REQUIRE_THROWS_AS(f.evaluate({{0.0, 0.0}, {1.0, 0.0}}), std::domain_error);
}

TEST_CASE("evaluation order is deterministic") {
  auto f = poly("x^3 + 7*x*y - 2*y^2 + 5", {"x", "y"});
  const ComplexPoint p{{0.3, 0.7}, {-1.2, 0.4}};
  const Complex a = f.evaluate(p);
  for (int rep = 0; rep < 20; ++rep) REQUIRE(f.evaluate(p) == a);
}

TEST_CASE("partial derivatives match finite differences") {
  auto f = poly("x^3*y - 2*x*y^-1 + 4", {"x", "y"});
  const ComplexPoint p{{1.3, -0.2}, {0.8, 0.5}};
  const double h = 1e-6;
  for (int var = 0; var < 2; ++var) {
    ComplexPoint hi = p, lo = p;
    hi[var] += h;
    lo[var] -= h;
    const Complex fd = (f.evaluate(hi) - f.evaluate(lo)) / (2.0 * h);
    const Complex ex = f.partial(var).evaluate(p);
    REQUIRE(std::abs(fd - ex) <= 1e-6 * (1.0 + std::abs(ex)));
  }
}

TEST_CASE("product distributes over evaluation") {
  auto f = poly("x^2 + y", {"x", "y"});
  auto g = poly("x - 3*y^2", {"x", "y"});
  const ComplexPoint p{{0.5, 1.1}, {-0.3, 0.2}};
  const Complex lhs = f.times(g).evaluate(p);
  const Complex rhs = f.evaluate(p) * g.evaluate(p);
  REQUIRE(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("square_up returns the system unchanged at target size") {
  auto sys = parse_system("ring x y\nx^2 + y\n");
  auto out = square_up(sys, 1, 42);
  REQUIRE(out.size() == 1);
  REQUIRE(out.polys[0] == sys.polys[0]);
}

TEST_CASE("square_up combines generators with unit coefficients") {
  auto sys = parse_system("ring x y z\nx + 1\ny + 2\nz + 3\n");
  auto out = square_up(sys, 2, 7);
  REQUIRE(out.size() == 2);
  // any common zero of the generators stays a zero of the combinations
  const ComplexPoint p{{-1.0, 0.0}, {-2.0, 0.0}, {-3.0, 0.0}};
  for (const auto& f : out.polys) REQUIRE(std::abs(f.evaluate(p)) < 1e-14);
  // deterministic in the seed
  auto again = square_up(sys, 2, 7);
  REQUIRE(again.polys[0] == out.polys[0]);
  auto other = square_up(sys, 2, 8);
  REQUIRE(!(other.polys[0] == out.polys[0]));
}

TEST_CASE("substitute_weight twists exponents and normalizes t powers") {
  auto sys = parse_system("ring x y\nx^3 + y^2 + 1\n");
  auto tw = substitute_weight(sys, {2, 3});
  REQUIRE(tw.num_vars == 3);
  REQUIRE(tw.t_index.has_value());
  REQUIRE(*tw.t_index == 2);
  // x^3 + y^2 + t^6 after clearing the common t^-6
  const auto expect =
      parse_polynomial("x^3 + y^2 + t^6", {"x", "y", "t"});
  LaurentPolynomial got = tw.polys[0];
  REQUIRE(got.terms().size() == 3);
  for (const auto& [exp, coeff] : expect.terms()) {
    auto it = tw.polys[0].terms().find(exp);
    REQUIRE(it != tw.polys[0].terms().end());
    REQUIRE(std::abs(it->second - coeff) < 1e-15);
  }
}

TEST_CASE("substitute_weight keeps an existing t variable fixed") {
  PolynomialSystem sys = parse_system("ring x y\nx*y^-1 + 1\n");
  // embed a path variable by hand: f = x*y^-1 + t
  PolynomialSystem emb;
  emb.num_vars = 3;
  emb.t_index = 2;
  emb.var_names = {"x", "y", "t"};
  LaurentPolynomial f(3, 2);
  f.add_term({1, -1, 0}, {1.0, 0.0});
  f.add_term({0, 0, 1}, {1.0, 0.0});
  emb.polys.push_back(f);
  auto tw = substitute_weight(emb, {2, 3});
  // x*y^-1 picks up t^{3-2} = t, matching the bare t term; the common t
  // normalizes away
  LaurentPolynomial want(3, 2);
  want.add_term({1, -1, 0}, {1.0, 0.0});
  want.add_term({0, 0, 0}, {1.0, 0.0});
  REQUIRE(tw.polys[0] == want);
}

TEST_CASE("t_initial_form keeps the terms of maximal weighted degree") {
  // weight deg t = -1, deg x_i = w_i
  auto sys = parse_system("ring x y\nx^3 + y^2 + 1\n");
  auto tw = substitute_weight(sys, {2, 3});  // x^3 + y^2 + t^6
  auto init = t_initial_form(tw.polys[0], {2, 3});
  const auto want = parse_polynomial("x^3 + y^2", {"x", "y"});
  REQUIRE(init == want);

  // mixed example: (3t+1)xy + ty + 5t^-2 x with weight (1, 2)
  LaurentPolynomial g(3, 2);
  g.add_term({1, 1, 1}, {3.0, 0.0});   // 3t x y, degree -1+1+2 = 2
  g.add_term({1, 1, 0}, {1.0, 0.0});   // x y, degree 3
  g.add_term({0, 1, 1}, {1.0, 0.0});   // t y, degree 1
  g.add_term({1, 0, -2}, {5.0, 0.0});  // 5 t^-2 x, degree 3
  auto init2 = t_initial_form(g, {1, 2});
  LaurentPolynomial want2(2);
  want2.add_term({1, 1}, {1.0, 0.0});
  want2.add_term({1, 0}, {5.0, 0.0});
  REQUIRE(init2 == want2);

  // zero weight drops every term carrying a positive t power
  auto init3 = t_initial_form(tw.polys[0], {0, 0});
  LaurentPolynomial want3(2);
  want3.add_term({3, 0}, {1.0, 0.0});
  want3.add_term({0, 2}, {1.0, 0.0});
  REQUIRE(init3 == want3);
}

TEST_CASE("clear_denominators multiplies by the minimal monomial") {
  auto sys = parse_system("ring x y\nx^-2*y + y^-1 + 3\n");
  auto cleared = clear_denominators(sys);
  for (const auto& [exp, coeff] : cleared.polys[0].terms()) {
    (void)coeff;
    for (auto e : exp) REQUIRE(e >= 0);
  }
  // x^-2 y + y^-1 + 3 times x^2 y = y^2 + x^2 + 3 x^2 y
  const auto want = parse_polynomial("y^2 + x^2 + 3*x^2*y", {"x", "y"});
  REQUIRE(cleared.polys[0] == want);
  // torus zeros are preserved both ways
  auto f = sys.polys[0];
  auto g = cleared.polys[0];
  const ComplexPoint p{{0.7, 0.9}, {-1.1, 0.3}};
  const Complex fv = f.evaluate(p);
  const Complex gv = g.evaluate(p);
  const Complex unit = cpow_int(p[0], 2) * p[1];
  REQUIRE(std::abs(fv * unit - gv) < 1e-12);
}

TEST_CASE("total_degree reports the max term degree") {
  auto sys = parse_system("ring x y\nx^3*y + y^2 + 7\n");
  REQUIRE(sys.polys[0].total_degree() == 4);
}

TEST_CASE("substitute_t freezes the path variable") {
  auto f = parse_polynomial("x^2*t^3 + x*t + 5", {"x", "t"});
  // rebuild with the t index marked
  LaurentPolynomial g(2, 1);
  for (const auto& [exp, coeff] : f.terms()) g.add_term(exp, coeff);
  auto frozen = g.substitute_t({2.0, 0.0});
  LaurentPolynomial want(1);
  want.add_term({2}, {8.0, 0.0});
  want.add_term({1}, {2.0, 0.0});
  want.add_term({0}, {5.0, 0.0});
  REQUIRE(frozen == want);
}

TEST_CASE("printing round-trips through the parser") {
  const char* samples[] = {
      "x^3 + y^2 + 1",
      "x^-2*y + 3*x - 0.125",
      "(1+2i)*x*y + (0.5-0.25i)",
      "2.5e-3*x^5 - 7*y^-4",
  };
  for (const char* s : samples) {
    auto f = parse_polynomial(s, {"x", "y"});
    auto printed = to_string(f, {"x", "y"});
    auto back = parse_polynomial(printed, {"x", "y"});
    REQUIRE(back == f);
  }
}
