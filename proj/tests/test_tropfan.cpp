#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "tropicurve/json_io.hpp"
#include "tropicurve/parser.hpp"
#include "tropicurve/tropfan.hpp"

using namespace trop;

namespace {

TropicalCurve load_fixture(const std::string& name) {
  std::ifstream in(std::string(TROPICURVE_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return curve_from_json(OrderedJson::parse(os.str()));
}

TropicalCurve make(int n, std::vector<std::pair<ExponentVector, std::int64_t>> rays) {
  TropicalCurve c;
  c.n = n;
  for (auto& [d, m] : rays) c.rays.push_back({d, m, {}});
  sort_rays(c);
  return c;
}

}  // namespace

TEST_CASE("balancing detects a missing ray") {
  auto line = make(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  REQUIRE(is_balanced(line));
  line.rays.pop_back();
  REQUIRE(!is_balanced(line));
  REQUIRE(balancing_sum(line) == ExponentVector{1, 1});
}

TEST_CASE("tropical degree weights rays by their positive part") {
  // the standard line has degree 1, the cubic fan degree 3
  auto line = make(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  REQUIRE(tropical_degree(line) == 1);
  auto cubic = make(2, {{{1, 0}, 3}, {{0, 1}, 3}, {{-1, -1}, 3}});
  REQUIRE(tropical_degree(cubic) == 3);
  // a ray with mixed signs contributes max(0, entries) per unit weight
  auto skew = make(2, {{{2, -1}, 1}, {{-1, 2}, 1}, {{-1, -1}, 1}});
  REQUIRE(tropical_degree(skew) == 2);
  // an unbalanced collection has no uniform lifted sum
  auto broken = make(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  REQUIRE(!tropical_degree(broken).has_value());
}

TEST_CASE("completeness defect measures missing weight") {
  auto line = make(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  REQUIRE(completeness_defect(line, 1) == 0);
  auto partial = make(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  REQUIRE(completeness_defect(partial, 1) > 0);
}

TEST_CASE("the tabulated ten-dimensional curve has degree 22") {
  const TropicalCurve knot = load_fixture("knot_8_1_curve.json");
  REQUIRE(knot.n == 10);
  REQUIRE(knot.rays.size() == 8);
  REQUIRE(is_balanced(knot));
  REQUIRE(tropical_degree(knot) == 22);
  REQUIRE(completeness_defect(knot, 22) == 0);
}

TEST_CASE("plane curve oracle reads the Newton polygon") {
  // dense cubic: the standard three-ray fan with weight 3
  auto cubic = plane_curve_oracle(
      parse_polynomial("x^3 + y^3 + x*y + 1", {"x", "y"}));
  REQUIRE(cubic.rays.size() == 3);
  REQUIRE(tropical_degree(cubic) == 3);
  REQUIRE(is_balanced(cubic));

  // x^2*y + y^2 + x: triangle with primitive edges
  auto tri = plane_curve_oracle(
      parse_polynomial("x^2*y + y^2 + x", {"x", "y"}));
  REQUIRE(tri.rays.size() == 3);
  REQUIRE(is_balanced(tri));
  for (const auto& r : tri.rays) REQUIRE(r.multiplicity == 1);

  // a segment gives two opposite rays of the lattice length
  auto seg = plane_curve_oracle(parse_polynomial("x^2 + 2 + y^4", {"x", "y"}));
  (void)seg;
  auto binom = plane_curve_oracle(parse_polynomial("x^4 + y^2", {"x", "y"}));
  REQUIRE(binom.rays.size() == 2);
  REQUIRE(binom.rays[0].multiplicity == 2);
  REQUIRE(binom.rays[0].direction ==
          ExponentVector{-binom.rays[1].direction[0],
                         -binom.rays[1].direction[1]});

  // a monomial cuts out nothing in the torus
  auto none = plane_curve_oracle(parse_polynomial("7*x^3*y", {"x", "y"}));
  REQUIRE(none.rays.empty());
}

TEST_CASE("oracle fans are always balanced and of the polygon degree") {
  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    LaurentPolynomial f(2);
    const int terms = 3 + static_cast<int>(rng.uniform_int(0, 5));
    for (int t = 0; t < terms; ++t)
      f.add_term({rng.uniform_int(-3, 4), rng.uniform_int(-3, 4)},
                 rng.unit_complex());
    if (f.is_zero() || f.term_count() < 3) continue;
    const auto fan = plane_curve_oracle(f);
    if (fan.rays.empty()) continue;
    REQUIRE(is_balanced(fan));
    REQUIRE(tropical_degree(fan).has_value());
  }
}

TEST_CASE("pushforward stretches multiplicities and merges directions") {
  auto line = make(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  // the squaring map doubles each ray's lattice stretch
  const auto sq = pushforward(line, {{2, 0}, {0, 2}});
  REQUIRE(tropical_degree(sq) == 2);
  REQUIRE(is_balanced(sq));
  // projecting onto the antidiagonal collapses two rays onto one direction
  auto proj = pushforward(line, {{1, -1}}, true);
  REQUIRE(proj.n == 1);
  REQUIRE(proj.rays.size() == 2);
  // (0,1) and (-1,-1) both map negative; weights add
  for (const auto& r : proj.rays)
    REQUIRE(r.multiplicity == (r.direction[0] == 1 ? 1 : 2));
}

TEST_CASE("pushforward refuses contracted rays unless told to drop") {
  auto line = make(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
  REQUIRE_THROWS_AS(pushforward(line, {{0, 1}}), std::invalid_argument);
  const auto dropped = pushforward(line, {{0, 1}}, true);
  REQUIRE(dropped.rays.size() == 2);
  REQUIRE_THROWS_AS(pushforward(line, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(pushforward(line, {{1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("pushforward carries witnesses through the monomial map") {
  TropicalCurve c;
  c.n = 2;
  Ray r;
  r.direction = {1, 0};
  r.multiplicity = 1;
  r.witnesses.push_back({{2.0, 0.0}, {3.0, 0.0}});
  c.rays.push_back(r);
  const auto img = pushforward(c, {{1, 1}, {0, -1}});
  REQUIRE(img.rays.size() == 1);
  REQUIRE(img.rays[0].witnesses.size() == 1);
  REQUIRE(std::abs(img.rays[0].witnesses[0][0] - Complex{6.0, 0.0}) < 1e-14);
  REQUIRE(std::abs(img.rays[0].witnesses[0][1] - Complex{1.0 / 3.0, 0.0}) <
          1e-14);
}

TEST_CASE("boundary slopes are reduced, deduplicated, and sorted") {
  auto c = make(2, {{{2, 4}, 1}, {{1, 2}, 1}, {{0, 1}, 1}, {{0, -1}, 2},
                    {{-3, -7}, 1}});
  const auto slopes = boundary_slopes(c);
  // 2/1 appears twice, vertical twice; sorted finite first
  REQUIRE(slopes.size() == 3);
  REQUIRE(slopes[0] == Slope{false, 2, 1});
  REQUIRE(slopes[1] == Slope{false, 7, 3});
  REQUIRE(slopes[2].infinite);
  REQUIRE(slopes[2].str() == "inf");
  REQUIRE(slopes[1].str() == "7/3");
  auto naked = make(3, {{{1, 0, 0}, 1}});
  REQUIRE_THROWS_AS(boundary_slopes(naked), std::invalid_argument);
}

TEST_CASE("the tabulated curve maps to slopes -12, 0, 4") {
  const TropicalCurve knot = load_fixture("knot_8_1_curve.json");
  std::ifstream in(std::string(TROPICURVE_DATA_DIR) + "/knot_8_1_matrix.txt");
  std::ostringstream os;
  os << in.rdbuf();
  const auto A = parse_int_matrix(os.str());
  std::vector<ExponentVector> rows(A.begin(), A.end());
  // two rays land in the kernel of the peripheral matrix
  REQUIRE_THROWS_AS(pushforward(knot, rows), std::invalid_argument);
  const auto slopes = boundary_slopes(pushforward(knot, rows, true));
  const std::vector<Slope> want{{false, -12, 1}, {false, 0, 1}, {false, 4, 1}};
  REQUIRE(slopes == want);
}

TEST_CASE("numeric degree counts hyperplane sections with multiplicity") {
  // a conic meets a line in two points
  PolynomialSystem conic = parse_system("ring x y\nx^2 + y^2 - 3*x + 1\n");
  REQUIRE(numeric_degree(conic, 17) == 2);
  // a plane cubic with negative exponents still has polygon degree
  PolynomialSystem curve = parse_system("ring x y\nx*y^-1 + x^2*y + 3 + y^2\n");
  const auto oracle =
      plane_curve_oracle(parse_polynomial("x*y^-1 + x^2*y + 3 + y^2", {"x", "y"}));
  REQUIRE(numeric_degree(curve, 17) == *tropical_degree(oracle));
  REQUIRE_THROWS_AS(numeric_degree(parse_system("ring x y\nx + 1\ny + 1\n"), 1),
                    std::invalid_argument);
}
