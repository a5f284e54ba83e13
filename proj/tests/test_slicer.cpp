#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "tropicurve/parser.hpp"
#include "tropicurve/slicer.hpp"
#include "tropicurve/tropfan.hpp"

using namespace trop;

namespace {

std::set<ExponentVector> slice_union(const PolynomialSystem& F,
                                     const std::vector<ExponentVector>& dirs,
                                     std::int64_t degree_bound,
                                     std::uint64_t seed) {
  std::set<ExponentVector> got;
  for (const auto& a : dirs)
    for (const auto& r : candidate_rays(F, a, degree_bound, seed))
      got.insert(r);
  return got;
}

}  // namespace

TEST_CASE("slice binomial splits positive and negative parts") {
  const auto f = slice_binomial({2, -1, 0}, Complex{3.0, 0.0});
  REQUIRE(f.num_vars() == 3);
  REQUIRE(f.terms().at(ExponentVector{2, 0, 0}) == Complex{1.0, 0.0});
  REQUIRE(f.terms().at(ExponentVector{0, 1, 0}) == Complex{-3.0, 0.0});
  REQUIRE(f.term_count() == 2);
}

TEST_CASE("level widening keeps thresholds ahead of tentacle scales") {
  TrackerOptions base;
  const auto wide = relaxed_for_level(base, 16.0, 3);
  REQUIRE(wide.divergence_threshold > std::exp(16.0 * 3.0));
  REQUIRE(wide.collapse_threshold < 1.0 / std::exp(16.0 * 3.0));
  REQUIRE(wide.residual_floor <= 1e-300);
}

TEST_CASE("slicing a plane cubic reproduces the polygon rays") {
  const auto F = parse_system("ring x y\nx^3 + y^3 + x*y + 1\n");
  const auto oracle = plane_curve_oracle(F.polys[0]);
  // each slice direction a sees exactly the rays with a.r > 0
  for (const ExponentVector& a :
       {ExponentVector{1, 0}, ExponentVector{0, 1}, ExponentVector{-1, -1},
        ExponentVector{2, -3}}) {
    const auto got = candidate_rays(F, a, 3, 7);
    std::set<ExponentVector> want;
    for (const auto& r : oracle.rays)
      if (dot(a, r.direction) > 0) want.insert(r.direction);
    REQUIRE(std::set<ExponentVector>(got.begin(), got.end()) == want);
  }
}

TEST_CASE("slices of random plane curves stay inside the polygon fan") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    LaurentPolynomial f(2);
    for (int t = 0; t < 5; ++t)
      f.add_term({rng.uniform_int(-2, 3), rng.uniform_int(-2, 3)},
                 rng.unit_complex());
    if (f.term_count() < 3) continue;
    const auto fan = plane_curve_oracle(f);
    if (fan.rays.empty()) continue;
    std::int64_t deg = 0;
    for (const auto& r : fan.rays)
      for (auto e : r.direction) deg = std::max(deg, std::abs(e) * 4);
    PolynomialSystem F;
    F.num_vars = 2;
    F.var_names = {"x", "y"};
    F.polys.push_back(f);
    std::set<ExponentVector> truth;
    for (const auto& r : fan.rays) truth.insert(r.direction);
    const auto got = slice_union(
        F, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}}, deg, 70 + rep);
    for (const auto& r : got) REQUIRE(truth.count(r) == 1);
  }
}

TEST_CASE("slicing a three-torus line finds its four rays") {
  // x = 1+s, y = 1+2s parameterizes a line; its fan has the four directions
  const auto F = parse_system(
      "ring x y z\n"
      "2*x - y - 1\n"
      "x + y - z - 1\n");
  const std::set<ExponentVector> truth{
      {1, 2, 3}, {-1, -1, -1}, {0, -1, -1}, {0, 0, -1}};
  const auto got = slice_union(
      F,
      {{1, 1, 1}, {-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
       {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
      1, 7);
  REQUIRE(got == truth);
}

TEST_CASE("candidates are deterministic in the seed") {
  const auto F = parse_system("ring x y z\n2*x - y - 1\nx + y - z - 1\n");
  const ExponentVector a{1, 1, 1};
  const auto one = candidate_rays(F, a, 1, 42);
  const auto two = candidate_rays(F, a, 1, 42);
  REQUIRE(one == two);
}

TEST_CASE("slice direction input is validated") {
  const auto F = parse_system("ring x y\nx + y + 1\n");
  REQUIRE_THROWS_AS(candidate_rays(F, {0, 0}, 1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(candidate_rays(F, {1, 0, 0}, 1, 1), std::invalid_argument);
  const auto square = parse_system("ring x y\nx + y + 1\nx - y\n");
  REQUIRE_THROWS_AS(candidate_rays(square, {1, 0}, 1, 1),
                    std::invalid_argument);
}
