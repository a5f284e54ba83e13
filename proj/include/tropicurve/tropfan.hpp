#pragma once

// Tropical curves as weighted ray collections, plus the combinatorial
// checks used to certify a computed curve: balancing, the degree read off
// from lifted ray sums, Newton-polygon oracles for plane curves, monomial
// pushforwards, and numeric degrees from random hyperplane sections.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropicurve/intlin.hpp"
#include "tropicurve/poly.hpp"
#include "tropicurve/tracker.hpp"

namespace trop {

struct Ray {
  ExponentVector direction;  // primitive
  std::int64_t multiplicity = 0;
  std::vector<ComplexPoint> witnesses;
};

struct TropicalCurve {
  int n = 0;  // ambient torus dimension
  std::vector<Ray> rays;
};

inline void sort_rays(TropicalCurve& c) {
  std::sort(c.rays.begin(), c.rays.end(), [](const Ray& a, const Ray& b) {
    return GrlexLess{}(a.direction, b.direction);
  });
}

// sum of multiplicity-weighted directions; zero iff balanced
inline ExponentVector balancing_sum(const TropicalCurve& c) {
  ExponentVector s(c.n, 0);
  for (const auto& r : c.rays)
    for (int i = 0; i < c.n; ++i) s[i] += r.multiplicity * r.direction[i];
  return s;
}

inline bool is_balanced(const TropicalCurve& c) {
  return is_zero_vector(balancing_sum(c));
}

// Lift r to (r, 0) minus its max entry times the all-ones vector, weight by
// multiplicity, and sum.  A curve of projective degree d sums to -d*(1,..,1).
inline std::vector<std::int64_t> lifted_degree_sum(const TropicalCurve& c) {
  std::vector<std::int64_t> s(c.n + 1, 0);
  for (const auto& r : c.rays) {
    std::int64_t mx = 0;
    for (auto v : r.direction) mx = std::max(mx, v);
    for (int i = 0; i < c.n; ++i)
      s[i] += r.multiplicity * (r.direction[i] - mx);
    s[c.n] += r.multiplicity * (0 - mx);
  }
  return s;
}

// degree when the lifted sum is uniform, nothing otherwise
inline std::optional<std::int64_t> tropical_degree(const TropicalCurve& c) {
  const auto s = lifted_degree_sum(c);
  for (auto v : s)
    if (v != s[0]) return std::nullopt;
  if (s[0] > 0) return std::nullopt;
  return -s[0];
}

// How far the ray set falls short of a target degree.  Any sub-collection
// of the true curve satisfies max_j(-S_j) <= d, with equality in every
// coordinate exactly when the collection is complete.
inline std::int64_t completeness_defect(const TropicalCurve& c,
                                        std::int64_t numeric_deg) {
  const auto s = lifted_degree_sum(c);
  std::int64_t seen = 0;
  for (auto v : s) seen = std::max(seen, -v);
  return numeric_deg - seen;
}

// ---- plane curve oracle ----------------------------------------------------

namespace detail {

using LatticePoint = std::pair<std::int64_t, std::int64_t>;

inline std::int64_t cross(const LatticePoint& o, const LatticePoint& a,
                          const LatticePoint& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

// Andrew monotone chain, counterclockwise, collinear points dropped.
// Collapses to {point} or {segment endpoints} in degenerate cases.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<LatticePoint> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 2) {
    // all input points collinear; keep the extreme pair
    return {pts.front(), pts.back()};
  }
  return hull;
}

}  // namespace detail

// Rays of the tropicalization of a plane curve, read off the Newton
// polygon: one ray per edge, direction the primitive outward normal,
// multiplicity the edge's lattice length.
inline TropicalCurve plane_curve_oracle(const LaurentPolynomial& f) {
  if (f.num_vars() != 2)
    throw std::invalid_argument("plane_curve_oracle: need two variables");
  if (f.is_zero())
    throw std::invalid_argument("plane_curve_oracle: zero polynomial");
  std::vector<detail::LatticePoint> pts;
  for (const auto& [exp, coeff] : f.terms()) {
    (void)coeff;
    pts.emplace_back(exp[0], exp[1]);
  }
  const auto hull = detail::convex_hull(pts);
  TropicalCurve c;
  c.n = 2;
  if (hull.size() == 1) return c;  // monomial, empty curve in the torus
  if (hull.size() == 2) {
    const std::int64_t vx = hull[1].first - hull[0].first;
    const std::int64_t vy = hull[1].second - hull[0].second;
    const std::int64_t len = std::gcd(std::abs(vx), std::abs(vy));
    ExponentVector d1 = primitive({vy, -vx});
    ExponentVector d2 = {-d1[0], -d1[1]};
    c.rays.push_back({d1, len, {}});
    c.rays.push_back({d2, len, {}});
    sort_rays(c);
    return c;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    const std::int64_t vx = b.first - a.first;
    const std::int64_t vy = b.second - a.second;
    const std::int64_t len = std::gcd(std::abs(vx), std::abs(vy));
    // counterclockwise edge, outward normal (vy, -vx)
    c.rays.push_back({primitive({vy, -vx}), len, {}});
  }
  sort_rays(c);
  return c;
}

// ---- pushforward and slopes ------------------------------------------------

// Image of the curve under the monomial map with exponent matrix A (rows
// index image coordinates).  Each ray maps to A*r with multiplicity scaled
// by the lattice stretch content(A*r); rays with A*r = 0 are rejected
// unless drop_contracted is set.  Witnesses map through y_j = prod x_i^{A_ji}.
inline TropicalCurve pushforward(const TropicalCurve& c,
                                 const std::vector<ExponentVector>& A,
                                 bool drop_contracted = false) {
  const int m = static_cast<int>(A.size());
  if (m == 0) throw std::invalid_argument("pushforward: empty matrix");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != c.n)
      throw std::invalid_argument("pushforward: matrix width mismatch");

  TropicalCurve out;
  out.n = m;
  for (const auto& r : c.rays) {
    ExponentVector img(m, 0);
    for (int i = 0; i < m; ++i) img[i] = dot(A[i], r.direction);
    if (is_zero_vector(img)) {
      if (drop_contracted) continue;
      throw std::invalid_argument("pushforward: ray contracted to zero");
    }
    const std::int64_t stretch = content(img);
    Ray ray;
    ray.direction = primitive(img);
    ray.multiplicity = r.multiplicity * stretch;
    for (const auto& w : r.witnesses) {
      ComplexPoint y(m, Complex{1.0, 0.0});
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < c.n; ++j)
          if (A[i][j] != 0) y[i] *= cpow_int(w[j], A[i][j]);
      ray.witnesses.push_back(std::move(y));
    }
    // merge with an existing ray in the same direction
    bool merged = false;
    for (auto& ex : out.rays) {
      if (ex.direction == ray.direction) {
        ex.multiplicity += ray.multiplicity;
        for (auto& w : ray.witnesses) ex.witnesses.push_back(std::move(w));
        merged = true;
        break;
      }
    }
    if (!merged) out.rays.push_back(std::move(ray));
  }
  sort_rays(out);
  return out;
}

struct Slope {
  bool infinite = false;
  std::int64_t num = 0;  // reduced, den > 0 when finite
  std::int64_t den = 1;

  bool operator==(const Slope& o) const {
    return infinite == o.infinite && num == o.num && den == o.den;
  }
  bool operator<(const Slope& o) const {
    if (infinite != o.infinite) return !infinite;  // finite slopes first
    if (infinite) return false;
    return num * o.den < o.num * den;
  }
  std::string str() const {
    if (infinite) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Slopes q/p of the ray directions (p, q) of a planar curve, deduplicated
// and sorted; a vertical ray contributes the infinite slope.
inline std::vector<Slope> boundary_slopes(const TropicalCurve& c) {
  if (c.n != 2)
    throw std::invalid_argument("boundary_slopes: need a planar curve");
  std::vector<Slope> out;
  for (const auto& r : c.rays) {
    Slope s;
    const std::int64_t p = r.direction[0], q = r.direction[1];
    if (p == 0) {
      s.infinite = true;
    } else {
      const std::int64_t g = std::gcd(std::abs(p), std::abs(q));
      s.num = q / g;
      s.den = p / g;
      if (s.den < 0) { s.num = -s.num; s.den = -s.den; }
    }
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- numeric degree --------------------------------------------------------

// Number of torus points cut out by a random affine hyperplane, counted
// with multiplicity.  Two independent sections must fully account for
// their paths and agree; one fresh pair is attempted before giving up.
inline std::int64_t numeric_degree(const PolynomialSystem& F, std::uint64_t seed,
                                   const TrackerOptions& opt = {},
                                   int threads = 1) {
  const int n = F.num_x_vars();
  if (F.t_index) throw std::invalid_argument("numeric_degree: unexpected t");
  if (F.size() != n - 1)
    throw std::invalid_argument("numeric_degree: need n-1 equations");

  // curves through boundary points make every term of an equation small
  // there; a fully relative residual keeps such false roots from passing
  TrackerOptions sopt = opt;
  sopt.residual_floor = std::min(sopt.residual_floor, 1e-300);

  auto section_count = [&](std::uint64_t trial) -> std::optional<std::int64_t> {
    Rng rng(derive_seed(seed, 0xde9, trial));
    LaurentPolynomial plane(n);
    plane.add_term(ExponentVector(n, 0), rng.unit_complex());
    for (int i = 0; i < n; ++i) {
      ExponentVector e(n, 0);
      e[i] = 1;
      plane.add_term(e, rng.unit_complex());
    }
    PolynomialSystem sys = F;
    sys.polys.push_back(plane);
    const SolveResult sol =
        solve_square(sys, derive_seed(seed, 0xd50e, trial), sopt, threads);
    if (!sol.accounted()) return std::nullopt;
    std::int64_t count = 0;
    for (const auto& s : sol.solutions) count += s.path_count;
    return count;
  };

  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    const auto c0 = section_count(2 * attempt);
    const auto c1 = section_count(2 * attempt + 1);
    if (c0 && c1 && *c0 == *c1) return *c0;
  }
  throw std::runtime_error("numeric degree: hyperplane sections disagree");
}

}  // namespace trop
