#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "tropicurve/parser.hpp"
#include "tropicurve/tracker.hpp"

using namespace trop;

namespace {

PolynomialSystem with_t(const std::string& text) {
  // parse over x t and mark the second variable as the path parameter
  PolynomialSystem sys = parse_system("ring x t\n" + text + "\n");
  sys.t_index = 1;
  return sys;
}

}  // namespace

TEST_CASE("total-degree continuation solves a dense system") {
  const auto F = parse_system(
      "ring x y\n"
      "(1+0.3i)*x^2 + 2*x*y - y^2 + 0.7*x - 3\n"
      "x^3 - (0.5-1i)*y^3 + x*y + y - 2\n");
  const SolveResult sol = solve_square(F, 5);
  REQUIRE(sol.total_paths == 6);
  REQUIRE(sol.accounted());
  REQUIRE(sol.solutions.size() == 6);
  for (const auto& s : sol.solutions) {
    REQUIRE(s.path_count == 1);
    REQUIRE(max_relative_residual(F, s.x) < 1e-9);
  }
}

TEST_CASE("solver roots agree across seeds") {
  const auto F = parse_system(
      "ring x y\n"
      "x^2 + y^2 - 4\n"
      "x*y - 1\n");
  const SolveResult a = solve_square(F, 5);
  const SolveResult b = solve_square(F, 5);
  const SolveResult c = solve_square(F, 99);
  REQUIRE(a.solutions.size() == 4);
  REQUIRE(c.solutions.size() == 4);
  // identical seed reproduces the run bit for bit
  for (std::size_t i = 0; i < a.solutions.size(); ++i)
    REQUIRE(a.solutions[i].x == b.solutions[i].x);
  // a different gamma still lands on the same root set
  for (const auto& s : c.solutions) {
    double best = 1e300;
    for (const auto& t : a.solutions) {
      double d = 0.0;
      for (int i = 0; i < 2; ++i) d = std::max(d, std::abs(s.x[i] - t.x[i]));
      best = std::min(best, d);
    }
    REQUIRE(best < 1e-8);
  }
}

TEST_CASE("roots off the torus are reported as collapses") {
  // x = y and x*y = 0 meet only at the origin
  const auto F = parse_system("ring x y\nx - y\nx*y\n");
  const SolveResult sol = solve_square(F, 3);
  REQUIRE(sol.solutions.empty());
  REQUIRE(sol.collapsed_paths == 2);
  REQUIRE(sol.accounted());
}

TEST_CASE("escapes to infinity are reported as divergences") {
  // parallel lines share no finite point
  const auto F = parse_system("ring x y\nx + y - 1\nx + y - 2\n");
  const SolveResult sol = solve_square(F, 3);
  REQUIRE(sol.solutions.empty());
  REQUIRE(sol.diverged_paths == 1);
  REQUIRE(sol.accounted());
}

TEST_CASE("coincident roots merge with their path count") {
  // x + y = 2, x*y = 1 forces x = y = 1 twice
  const auto F = parse_system("ring x y\nx + y - 2\nx*y - 1\n");
  const SolveResult sol = solve_square(F, 3);
  REQUIRE(sol.accounted());
  REQUIRE(sol.solutions.size() == 1);
  REQUIRE(sol.solutions[0].path_count == 2);
  REQUIRE(std::abs(sol.solutions[0].x[0] - Complex{1.0, 0.0}) < 1e-5);
}

TEST_CASE("parameter segments carry a solution along t") {
  const PolynomialSystem J = with_t("x - t^2");
  const auto H = CoefficientPathHomotopy::parameter_segment(
      J, Complex{1.0, 0.0}, Complex{0.5, 0.0});
  const PathResult r = track(H, ComplexPoint{{1.0, 0.0}}, TrackerOptions{});
  REQUIRE(r.status == PathStatus::Converged);
  REQUIRE(std::abs(r.endpoint[0] - Complex{0.25, 0.0}) < 1e-4);
}

TEST_CASE("parameter segments reject misuse") {
  const auto no_t = parse_system("ring x\nx - 1\n");
  REQUIRE_THROWS_AS(CoefficientPathHomotopy::parameter_segment(
                        no_t, Complex{1.0, 0.0}, Complex{0.0, 0.0}),
                    std::invalid_argument);
  const PolynomialSystem neg = with_t("x^-1 - t");
  REQUIRE_THROWS_AS(CoefficientPathHomotopy::parameter_segment(
                        neg, Complex{1.0, 0.0}, Complex{0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("the root chart agrees with the linear chart away from branch points") {
  const PolynomialSystem J = with_t("x^2 - t");
  const Complex t0{1.0, 0.0}, t1{0.0625, 0.0};
  const auto lin = CoefficientPathHomotopy::parameter_segment(J, t0, t1);
  const auto sq =
      CoefficientPathHomotopy::parameter_segment_root(J, t0, t1, 2);
  const ComplexPoint x0{{1.0, 0.0}};
  const PathResult a = track(lin, x0, TrackerOptions{});
  const PathResult b = track(sq, x0, TrackerOptions{});
  REQUIRE(a.status == PathStatus::Converged);
  REQUIRE(b.status == PathStatus::Converged);
  REQUIRE(std::abs(a.endpoint[0] - b.endpoint[0]) < 1e-6);
  REQUIRE(std::abs(b.endpoint[0] - Complex{0.25, 0.0}) < 1e-4);
  REQUIRE_THROWS_AS(
      CoefficientPathHomotopy::parameter_segment_root(J, t0, t1, 0),
      std::invalid_argument);
}

TEST_CASE("homotopy derivatives match finite differences") {
  const auto F = parse_system(
      "ring x y\n"
      "x^2 + 2*x*y - y^2 + 0.7*x - 3\n"
      "x^3 - y^3 + x*y + y - 2\n");
  const auto H = CoefficientPathHomotopy::total_degree(F, Complex{0.6, 0.8});
  const ComplexPoint x{{0.4, -0.9}, {1.1, 0.2}};
  const double s = 0.37, h = 1e-6;

  Eigen::VectorXcd v0, vp, vm;
  Eigen::VectorXd mags;
  Eigen::MatrixXcd J;
  H.jacobian_x(x, s, J);
  for (int var = 0; var < 2; ++var) {
    ComplexPoint hi = x, lo = x;
    hi[var] += h;
    lo[var] -= h;
    H.evaluate(hi, s, vp, mags);
    H.evaluate(lo, s, vm, mags);
    for (int i = 0; i < 2; ++i) {
      const Complex fd = (vp(i) - vm(i)) / (2.0 * h);
      REQUIRE(std::abs(fd - J(i, var)) < 1e-5 * (1.0 + std::abs(J(i, var))));
    }
  }

  Eigen::VectorXcd ds;
  H.ds_derivative(x, s, ds);
  H.evaluate(x, s + h, vp, mags);
  H.evaluate(x, s - h, vm, mags);
  for (int i = 0; i < 2; ++i) {
    const Complex fd = (vp(i) - vm(i)) / (2.0 * h);
    REQUIRE(std::abs(fd - ds(i)) < 1e-5 * (1.0 + std::abs(ds(i))));
  }
}

TEST_CASE("polish sharpens a nearby point and reports drift") {
  const auto F = parse_system("ring x y\nx^2 + y^2 - 2\nx - y\n");
  ComplexPoint x{{1.001, 0.0}, {0.999, 0.0}};
  REQUIRE(polish(F, x, 20, 1e-12, 1.0));
  REQUIRE(std::abs(x[0] - Complex{1.0, 0.0}) < 1e-10);
  REQUIRE(max_relative_residual(F, x) < 1e-12);
  // a polish that moves far from its seed is flagged by the drift check
  const ComplexPoint seed{{1.001, 0.0}, {0.999, 0.0}};
  REQUIRE(polish_stayed_near(seed, seed, 1e-2));
  REQUIRE(!polish_stayed_near(seed, ComplexPoint{{2.0, 0.0}, {2.0, 0.0}}, 1e-2));
}

TEST_CASE("track_all is deterministic across thread counts") {
  const auto F = parse_system(
      "ring x y\n"
      "x^2 + y^2 - 4\n"
      "x*y - 1\n");
  const auto H = CoefficientPathHomotopy::total_degree(F, Complex{0.28, 0.96});
  std::vector<ComplexPoint> starts;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      starts.push_back(ComplexPoint{{i ? -1.0 : 1.0, 0.0}, {j ? -1.0 : 1.0, 0.0}});
  const auto one = track_all(H, starts, TrackerOptions{}, 1);
  const auto four = track_all(H, starts, TrackerOptions{}, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].status == four[i].status);
    REQUIRE(one[i].endpoint == four[i].endpoint);
  }
}
