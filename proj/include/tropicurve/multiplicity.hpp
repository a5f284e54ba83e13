#pragma once

// Multiplicity of a tropical ray by path counting.  For a primitive
// weight w, pick v with w.v = -1, append x^v + t to the curve equations,
// apply x_i -> t^{-w_i} x_i, and clear denominators.  The appended row
// becomes the t-free binomial x^{v+} + x^{v-}, and the deformed system J
// degenerates to weighted initial forms as t -> 0.  Solving J at a random
// t = a0 and following every torus solution to t = 0 counts the branches
// that stay in the torus; that count is the multiplicity of w.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "tropicurve/intlin.hpp"
#include "tropicurve/poly.hpp"
#include "tropicurve/slicer.hpp"
#include "tropicurve/tracker.hpp"

namespace trop {

struct MultOptions {
  double a0_modulus = 0.1;
  double epsilon = 1e-3;       // junction between the two tracking legs
  double tail_tolerance = 0.1; // exponent estimate agreement and zero band
  // any v with w.v = -1 works; the default is the folded-Bezout choice
  std::optional<ExponentVector> complement;
  TrackerOptions tracker;
};

enum class MultStatus { Determinate, Indeterminate };

struct MultResult {
  MultStatus status = MultStatus::Indeterminate;
  std::int64_t multiplicity = 0;        // torus path count (lower bound when
                                        // indeterminate)
  std::vector<ComplexPoint> witnesses;  // t -> 0 torus limit points
  int torus_paths = 0;
  int boundary_paths = 0;
  int infinity_paths = 0;
  int unresolved_paths = 0;
};

// J in variables x_1..x_n, t with the appended binomial row; requires a
// primitive weight and any complement v with w.v = -1
inline PolynomialSystem build_mult_system(const PolynomialSystem& F,
                                          const ExponentVector& w,
                                          const ExponentVector& v) {
  const int n = F.num_x_vars();
  if (F.t_index)
    throw std::invalid_argument("build_mult_system: system already has t");
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("build_mult_system: weight length mismatch");
  if (static_cast<int>(v.size()) != n || dot(w, v) != -1)
    throw std::invalid_argument("build_mult_system: need w.v = -1");

  PolynomialSystem emb;
  emb.num_vars = n + 1;
  emb.t_index = n;
  emb.var_names = F.var_names;
  emb.var_names.push_back("t");
  for (const auto& f : F.polys) {
    LaurentPolynomial g(n + 1, n);
    for (const auto& [exp, coeff] : f.terms()) {
      ExponentVector e = exp;
      e.push_back(0);
      g.add_term(e, coeff);
    }
    emb.polys.push_back(std::move(g));
  }
  LaurentPolynomial cut(n + 1, n);
  {
    ExponentVector e = v;
    e.push_back(0);
    cut.add_term(e, Complex{1.0, 0.0});  // x^v
    ExponentVector t_only(n + 1, 0);
    t_only[n] = 1;
    cut.add_term(t_only, Complex{1.0, 0.0});  // + t
  }
  emb.polys.push_back(std::move(cut));

  return clear_denominators(substitute_weight(emb, w));
}

inline PolynomialSystem build_mult_system(const PolynomialSystem& F,
                                          const ExponentVector& w) {
  return build_mult_system(F, w, complement_vector(w));
}

namespace detail {

enum class LimitClass { Torus, Boundary, Infinity, Unresolved };

// Tail samples sit at t, t/2, t/4.  Coordinate i behaving like c*t^{e_i}
// gives log2 ratios equal to e_i; the two estimates must agree.  Positive
// exponents head to the boundary, negative ones to infinity, and a path
// is in the torus when every exponent is flat.  Exponents are rational in
// general, so only the zero band is special.
inline LimitClass classify_limit(const std::vector<ComplexPoint>& tails,
                                 double tol) {
  if (tails.size() < 3) return LimitClass::Unresolved;
  const int n = static_cast<int>(tails[0].size());
  const double log2inv = 1.4426950408889634;
  double big = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) big = std::max(big, std::abs(tails[k][i]));
  bool to_boundary = false, to_infinity = false;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(tails[0][i]);
    const double b = std::abs(tails[1][i]);
    const double c = std::abs(tails[2][i]);
    // below the relative noise floor the ratios measure round-off, and a
    // coordinate that small is already off the torus
    if (a <= 1e-14 * big || b <= 1e-14 * big || c <= 1e-14 * big) {
      to_boundary = true;
      continue;
    }
    const double e1 = std::log(a / b) * log2inv;
    const double e2 = std::log(b / c) * log2inv;
    if (std::abs(e1 - e2) > tol) return LimitClass::Unresolved;
    if (e2 >= tol) to_boundary = true;
    else if (e2 <= -tol) to_infinity = true;
  }
  if (to_infinity) return LimitClass::Infinity;
  if (to_boundary) return LimitClass::Boundary;
  return LimitClass::Torus;
}

inline PolynomialSystem at_t(const PolynomialSystem& J, Complex t_value) {
  PolynomialSystem out;
  out.num_vars = J.num_vars - 1;
  out.var_names = J.var_names;
  out.var_names.pop_back();
  for (const auto& f : J.polys) out.polys.push_back(f.substitute_t(t_value));
  return out;
}

}  // namespace detail

// Path-counted multiplicity of the primitive direction w on the curve cut
// out by F (n-1 equations, no t).  Deterministic in (seed, w).  The result
// is Indeterminate, never an undercount, when any path resists tracking
// or classification.
inline MultResult ray_multiplicity(const PolynomialSystem& F,
                                   const ExponentVector& w, std::uint64_t seed,
                                   const MultOptions& opt = {},
                                   int threads = 1) {
  const int n = F.num_x_vars();
  if (F.size() != n - 1)
    throw std::invalid_argument("ray_multiplicity: need n-1 equations");
  MultResult res;

  const PolynomialSystem J =
      opt.complement ? build_mult_system(F, w, *opt.complement)
                     : build_mult_system(F, w);

  Rng rng(fold_seed(derive_seed(seed, 0x3017), w));
  const Complex a0 = opt.a0_modulus * rng.unit_complex();
  // the junction gets a random phase too: with a real input the branch
  // points of the t-fibration sit on the real axis, and a real segment
  // eps -> 0 would run straight through them
  const Complex eps = opt.epsilon * rng.unit_complex();

  // near the origin every term of the start system vanishes, so the start
  // solve needs a fully relative residual or such points pass for roots
  TrackerOptions ssolve = opt.tracker;
  ssolve.residual_floor = std::min(ssolve.residual_floor, 1e-300);
  const SolveResult sol = solve_square(detail::at_t(J, a0),
                                       fold_seed(derive_seed(seed, 0x3017a0), w),
                                       ssolve, threads);
  bool all_resolved = sol.accounted();

  // both legs may legitimately pass through very large or very small
  // coordinates on their way to a boundary or infinity limit, so the
  // escape thresholds sit far beyond any transit; 1e30 still leaves
  // headroom to evaluate degree-nine monomials without overflowing
  TrackerOptions leg = opt.tracker;
  leg.divergence_threshold = std::max(leg.divergence_threshold, 1e30);
  leg.collapse_threshold = std::min(leg.collapse_threshold, 1e-30);
  leg.residual_floor = std::min(leg.residual_floor, 1e-300);

  const CoefficientPathHomotopy H1 =
      CoefficientPathHomotopy::parameter_segment(J, a0, eps);
  const CoefficientPathHomotopy H2 =
      CoefficientPathHomotopy::parameter_segment(J, eps, Complex{0.0, 0.0});
  const PolynomialSystem J_eps = detail::at_t(J, eps);
  const PolynomialSystem J_zero = detail::at_t(J, Complex{0.0, 0.0});

  for (const auto& start : sol.solutions) {
    const int weight = start.path_count;
    const PathResult leg1 = track(H1, start.x, leg);
    if (leg1.status != PathStatus::Converged) {
      // an escape before t=0 cannot be told apart from a near-pole arc,
      // so give up on certifying rather than risk an undercount
      res.unresolved_paths += weight;
      all_resolved = false;
      continue;
    }
    ComplexPoint mid = leg1.tail_samples.empty() ? leg1.endpoint
                                                 : leg1.tail_samples.back();
    const ComplexPoint mid_seed = mid;
    if (!polish(J_eps, mid, leg.polish_iterations, leg.newton_tolerance,
                leg.residual_floor) ||
        !polish_within_trend(leg1.tail_samples, mid_seed, mid))
      mid = mid_seed;

    PathResult leg2 = track(H2, mid, leg);
    if (leg2.status == PathStatus::Converged &&
        leg2.tail_samples.size() == 3 && leg.end_offset > 4e-9 &&
        detail::classify_limit(leg2.tail_samples, opt.tail_tolerance) ==
            detail::LimitClass::Unresolved) {
      // exponent estimates straddle the tolerance; resume the path nearer
      // t=0 where they settle
      TrackerOptions deep = leg;
      deep.end_offset = 1e-9;
      leg2 = track(H2, leg2.tail_samples.back(), deep,
                   1.0 - leg.end_offset / 4.0);
    }
    if (leg2.status == PathStatus::StepSizeUnderflow) {
      const double stall = leg2.s_reached;
      // a branch ramified over t, x ~ c + d*t^{1/q}, stalls the stepper
      // approaching t = 0; rerun the leg in a root chart that makes every
      // branch with small ramification analytic through the limit
      leg2 = track(CoefficientPathHomotopy::parameter_segment_root(
                       J, eps, Complex{0.0, 0.0}, 60),
                   mid, leg);
      if (leg2.status == PathStatus::StepSizeUnderflow && stall >= 0.99) {
        // members of a conjugate bunch pinch together faster than double
        // precision keeps them apart, so no chart reaches t = 0; by this
        // depth the series corrections t^{1/q} are far inside the ratio
        // tolerance, and tails sampled shy of the stall classify cleanly
        TrackerOptions shallow = leg;
        shallow.end_offset = 8.0 * (1.0 - stall);
        leg2 = track(H2, mid, shallow);
      }
    }
    detail::LimitClass cls;
    switch (leg2.status) {
      case PathStatus::Converged:
        cls = detail::classify_limit(leg2.tail_samples, opt.tail_tolerance);
        break;
      case PathStatus::DivergedToInfinity: cls = detail::LimitClass::Infinity; break;
      case PathStatus::CollapsedToBoundary: cls = detail::LimitClass::Boundary; break;
      default: cls = detail::LimitClass::Unresolved; break;
    }
    switch (cls) {
      case detail::LimitClass::Torus: {
        res.torus_paths += weight;
        ComplexPoint wit = leg2.tail_samples.empty() ? leg2.endpoint
                                                     : leg2.tail_samples.back();
        const ComplexPoint wit_seed = wit;
        if (polish(J_zero, wit, leg.polish_iterations, leg.newton_tolerance,
                   leg.residual_floor) &&
            polish_within_trend(leg2.tail_samples, wit_seed, wit)) {
          bool torus = true;
          for (const auto& c : wit)
            if (!(std::abs(c) > opt.tracker.collapse_threshold)) torus = false;
          if (!torus) wit = wit_seed;
        } else {
          wit = wit_seed;
        }
        bool dup = false;
        for (const auto& prev : res.witnesses) {
          double diff = 0.0, norm = 0.0;
          for (int i = 0; i < n; ++i) {
            diff = std::max(diff, std::abs(wit[i] - prev[i]));
            norm = std::max({norm, std::abs(wit[i]), std::abs(prev[i])});
          }
          if (diff <= 1e-8 * (1.0 + norm)) { dup = true; break; }
        }
        if (!dup) res.witnesses.push_back(std::move(wit));
        break;
      }
      case detail::LimitClass::Boundary: res.boundary_paths += weight; break;
      case detail::LimitClass::Infinity: res.infinity_paths += weight; break;
      case detail::LimitClass::Unresolved:
        res.unresolved_paths += weight;
        all_resolved = false;
        break;
    }
  }

  res.multiplicity = res.torus_paths;
  res.status = all_resolved ? MultStatus::Determinate : MultStatus::Indeterminate;
  return res;
}

}  // namespace trop
