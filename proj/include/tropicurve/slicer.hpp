#pragma once

// Ray detection by amoeba slicing.  For a slice direction a, the binomial
// constraint x^a = C with |C| = e^L pins points far out on every tentacle
// r with a.r > 0, at log-distance L/(a.r).  The slice system is solved at
// a shallow level log_c0, the points are carried up to log_c1, and each
// is then followed as |C| grows to e^{log_c2}; the per-coordinate log
// differences over that last stage are proportional to r and snap to a
// primitive integer direction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "tropicurve/intlin.hpp"
#include "tropicurve/poly.hpp"
#include "tropicurve/tracker.hpp"

namespace trop {

struct SlicerOptions {
  double log_c0 = 4.0;  // solve level; total-degree paths stay well scaled
  double log_c1 = 8.0;
  double log_c2 = 16.0;
  double snap_scale = 1e4;
  double snap_min_cosine = 0.9999;
  TrackerOptions tracker;  // thresholds are widened per slice level
};

// mixes a vector into a seed, entry by entry
inline std::uint64_t fold_seed(std::uint64_t seed, const ExponentVector& v) {
  std::uint64_t h = derive_seed(seed, 0xf01d, v.size());
  for (auto x : v)
    h = derive_seed(h, static_cast<std::uint64_t>(x + 0x40000000ll));
  return h;
}

// Tentacle coordinates at slice level L reach e^{L*d}; widen the escape
// thresholds so legitimate slice points are not mistaken for divergence,
// and keep the corrector relative at sub-unit scales so equations whose
// terms all shrink along a tentacle still pin the path.
inline TrackerOptions relaxed_for_level(TrackerOptions base, double log_c,
                                        std::int64_t degree_bound) {
  const double e =
      std::min(600.0, log_c * static_cast<double>(degree_bound + 2));
  base.divergence_threshold = std::max(base.divergence_threshold, std::exp(e));
  base.collapse_threshold = std::min(base.collapse_threshold, std::exp(-e));
  base.residual_floor = std::min(base.residual_floor, 1e-300);
  return base;
}

// x^{a+} - C*x^{a-} over n variables
inline LaurentPolynomial slice_binomial(const ExponentVector& a, Complex C) {
  const int n = static_cast<int>(a.size());
  ExponentVector pos(n, 0), neg(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] > 0) pos[i] = a[i];
    if (a[i] < 0) neg[i] = -a[i];
  }
  LaurentPolynomial b(n);
  b.add_term(pos, Complex{1.0, 0.0});
  b.add_term(neg, -C);
  return b;
}

namespace detail {

// One-variable view of a plane-curve slice.  Term j contributes
// exp(lc0[j] + p[j]*L + q[j]*eta) where L = log|C| and eta = log z, so
// coefficient magnitudes spanning hundreds of orders stay finite.
struct SliceUniPoly {
  std::vector<std::int64_t> p, q;
  std::vector<Complex> lc0;
};

// value and eta-derivative at (L, eta), both scaled by a common dominant
// term; only their ratio and the residual-vs-1 scale are meaningful
inline void slice_uni_eval(const SliceUniPoly& P, double L, Complex eta,
                           Complex& val, Complex& dval, Complex& lval) {
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < P.q.size(); ++j) {
    const double re =
        P.lc0[j].real() + static_cast<double>(P.p[j]) * L +
        static_cast<double>(P.q[j]) * eta.real();
    shift = std::max(shift, re);
  }
  val = dval = lval = Complex{0.0, 0.0};
  for (std::size_t j = 0; j < P.q.size(); ++j) {
    const Complex t = std::exp(P.lc0[j] + static_cast<double>(P.p[j]) * L +
                               static_cast<double>(P.q[j]) * eta - shift);
    val += t;
    dval += static_cast<double>(P.q[j]) * t;
    lval += static_cast<double>(P.p[j]) * t;
  }
}

// Newton in eta = log z; scale-free in both the variable and the values
inline bool slice_uni_newton(const SliceUniPoly& P, double L, Complex& eta,
                             int iters, double tol) {
  for (int it = 0; it < iters; ++it) {
    Complex v, dv, lv;
    slice_uni_eval(P, L, eta, v, dv, lv);
    if (std::abs(v) <= tol) return true;
    if (!(std::abs(dv) > 0.0)) return false;
    const Complex step = v / dv;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
    eta -= step;
  }
  Complex v, dv, lv;
  slice_uni_eval(P, L, eta, v, dv, lv);
  return std::abs(v) <= tol;
}

// All torus roots at one level, one hull edge at a time: an edge of slope
// -mu on the upper hull of (q, log|coeff|) holds the roots of magnitude
// e^mu, which are O(1) after substituting z = e^mu * u.
inline std::vector<Complex> slice_uni_roots(const SliceUniPoly& P, double L) {
  std::vector<Complex> roots;
  if (P.q.empty()) return roots;
  std::int64_t qmin = P.q[0], qmax = P.q[0];
  for (auto v : P.q) { qmin = std::min(qmin, v); qmax = std::max(qmax, v); }
  const std::int64_t span = qmax - qmin;
  if (span <= 0 || span > 400) return roots;

  // per-exponent effective log-magnitude, summed against the local max
  std::vector<double> lmag(span + 1,
                           -std::numeric_limits<double>::infinity());
  {
    std::vector<double> mq(span + 1,
                           -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < P.q.size(); ++j)
      mq[P.q[j] - qmin] =
          std::max(mq[P.q[j] - qmin],
                   P.lc0[j].real() + static_cast<double>(P.p[j]) * L);
    std::vector<Complex> vq(span + 1, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < P.q.size(); ++j)
      vq[P.q[j] - qmin] += std::exp(P.lc0[j] +
                                    static_cast<double>(P.p[j]) * L -
                                    mq[P.q[j] - qmin]);
    for (std::int64_t k = 0; k <= span; ++k)
      if (std::isfinite(mq[k]) && std::abs(vq[k]) > 0.0)
        lmag[k] = mq[k] + std::log(std::abs(vq[k]));
  }

  // upper concave hull over exponents with surviving coefficients
  std::vector<std::int64_t> hull;
  for (std::int64_t k = 0; k <= span; ++k) {
    if (!std::isfinite(lmag[k])) continue;
    while (hull.size() >= 2) {
      const std::int64_t k1 = hull[hull.size() - 2], k2 = hull.back();
      if ((lmag[k2] - lmag[k1]) * static_cast<double>(k - k2) <=
          (lmag[k] - lmag[k2]) * static_cast<double>(k2 - k1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::int64_t ka = hull[e], kb = hull[e + 1];
    const double mu = (lmag[ka] - lmag[kb]) / static_cast<double>(kb - ka);
    // renormalized dense coefficients, dominant terms at O(1)
    double M = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < P.q.size(); ++j)
      M = std::max(M, P.lc0[j].real() + static_cast<double>(P.p[j]) * L +
                          static_cast<double>(P.q[j] - qmin) * mu);
    std::vector<Complex> c(span + 1, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < P.q.size(); ++j)
      c[P.q[j] - qmin] +=
          std::exp(P.lc0[j] + static_cast<double>(P.p[j]) * L +
                   static_cast<double>(P.q[j] - qmin) * mu - M);
    std::int64_t lo = 0, hi = span;
    while (hi > 0 && std::abs(c[hi]) < 1e-300) --hi;
    while (lo < hi && std::abs(c[lo]) < 1e-300) ++lo;
    if (hi - lo < 1) continue;
    const std::int64_t d = hi - lo;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(d, d);
    for (std::int64_t k = 0; k < d - 1; ++k) A(k + 1, k) = Complex{1.0, 0.0};
    for (std::int64_t k = 0; k < d; ++k) A(k, d - 1) = -c[lo + k] / c[hi];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    if (es.info() != Eigen::Success) continue;
    for (std::int64_t k = 0; k < d; ++k) {
      const Complex u = es.eigenvalues()(k);
      const double au = std::abs(u);
      // roots belonging to other edges reappear here far from |u|=1
      if (!(au > 0.0) || std::abs(std::log(au)) > 2.0) continue;
      Complex eta = Complex{mu, 0.0} + std::log(u);
      if (!slice_uni_newton(P, L, eta, 40, 1e-11)) continue;
      bool dup = false;
      for (const auto& r : roots) {
        if (std::abs(r.real() - eta.real()) < 1e-7 &&
            std::abs(std::exp(Complex{0.0, r.imag()}) -
                     std::exp(Complex{0.0, eta.imag()})) < 1e-7) {
          dup = true;
          break;
        }
      }
      if (!dup) roots.push_back(eta);
    }
  }
  return roots;
}

// follows one root in eta as the level grows from L1 to L2, with an Euler
// predictor in L and adaptive halving
inline bool slice_uni_continue(const SliceUniPoly& P, double L1, double L2,
                               Complex& eta) {
  double L = L1;
  const double full = (L2 - L1) / 8.0;
  double dL = full;
  int guard = 0;
  while (L < L2 - 1e-12) {
    if (++guard > 4000) return false;
    const double step = std::min(dL, L2 - L);
    Complex v, dv, lv;
    slice_uni_eval(P, L, eta, v, dv, lv);
    if (!(std::abs(dv) > 0.0)) return false;
    const Complex slope = -lv / dv;  // d eta / d L along the root
    Complex trial = eta + slope * step;
    if (slice_uni_newton(P, L + step, trial, 16, 1e-10) &&
        std::abs(trial - (eta + slope * step)) <=
            0.3 + 0.1 * std::abs(slope) * step) {
      eta = trial;
      L += step;
      dL = std::min(2.0 * dL, full);
    } else {
      dL *= 0.5;
      if (dL < 1e-5) return false;
    }
  }
  return true;
}

// Exact route for plane curves: completing a to a unimodular basis turns
// the slice into a univariate solve per level, and the level sweep into a
// one-dimensional continuation.  No path can be lost to scale transits.
inline std::vector<ExponentVector> plane_candidate_rays(
    const PolynomialSystem& F, const ExponentVector& a_in,
    std::int64_t degree_bound, std::uint64_t seed, const SlicerOptions& opt) {
  const ExponentVector a = primitive(a_in);
  std::int64_t bs, bt;
  extended_gcd(a[0], a[1], bs, bt);
  ExponentVector w{-bt, bs};  // rows (a, w) have determinant 1
  {
    const std::int64_t num = dot(w, a), den = dot(a, a);
    const std::int64_t k = static_cast<std::int64_t>(
        std::llround(static_cast<double>(num) / static_cast<double>(den)));
    w[0] -= k * a[0];
    w[1] -= k * a[1];
  }

  Rng rng(fold_seed(derive_seed(seed, 0x511ce), a));
  const double argC = std::arg(rng.unit_complex());

  // x^e becomes exp(p*log C + q*eta) with (p,q) the coordinates of e in
  // the dual basis
  SliceUniPoly P;
  for (const auto& [e, coeff] : F.polys[0].terms()) {
    if (std::abs(coeff) == 0.0) continue;
    P.p.push_back(w[1] * e[0] - w[0] * e[1]);
    P.q.push_back(a[0] * e[1] - a[1] * e[0]);
    P.lc0.push_back(Complex{std::log(std::abs(coeff)),
                            std::arg(coeff)} +
                    Complex{0.0, static_cast<double>(P.p.back()) * argC});
  }

  SnapOptions snap;
  snap.scale = opt.snap_scale;
  snap.min_cosine = opt.snap_min_cosine;
  snap.max_entry = degree_bound;
  const double dlevel = opt.log_c2 - opt.log_c1;

  std::vector<ExponentVector> found;
  for (const Complex eta1 : slice_uni_roots(P, opt.log_c1)) {
    Complex eta = eta1;
    if (!slice_uni_continue(P, opt.log_c1, opt.log_c2, eta)) continue;
    const double de = eta.real() - eta1.real();
    const std::vector<double> u{
        static_cast<double>(w[1]) * dlevel - static_cast<double>(a[1]) * de,
        -static_cast<double>(w[0]) * dlevel + static_cast<double>(a[0]) * de};
    const auto cand = snap_direction(u, snap);
    if (!cand) continue;
    if (std::find(found.begin(), found.end(), *cand) == found.end())
      found.push_back(*cand);
  }
  return found;
}

}  // namespace detail

// Candidate primitive ray directions seen through one slice direction.
// F cuts the curve (n-1 equations, no t); degree_bound caps snapped
// entries.  Deterministic in (seed, a).
inline std::vector<ExponentVector> candidate_rays(
    const PolynomialSystem& F, const ExponentVector& a,
    std::int64_t degree_bound, std::uint64_t seed,
    const SlicerOptions& opt = {}, int threads = 1) {
  const int n = F.num_x_vars();
  if (F.t_index) throw std::invalid_argument("candidate_rays: unexpected t");
  if (F.size() != n - 1)
    throw std::invalid_argument("candidate_rays: need n-1 equations");
  if (static_cast<int>(a.size()) != n || is_zero_vector(a))
    throw std::invalid_argument("candidate_rays: bad slice direction");

  if (n == 2)
    return detail::plane_candidate_rays(F, a, degree_bound, seed, opt);

  Rng rng(fold_seed(derive_seed(seed, 0x511ce), a));
  const Complex phase = rng.unit_complex();
  const double log_solve = std::min(opt.log_c0, opt.log_c1);
  const Complex C0 = std::exp(log_solve) * phase;
  const Complex C1 = std::exp(opt.log_c1) * phase;
  const double growth = std::exp(opt.log_c2 - opt.log_c1);

  const PolynomialSystem base = clear_denominators(F);
  ExponentVector pos(n, 0), neg(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] > 0) pos[i] = a[i];
    if (a[i] < 0) neg[i] = -a[i];
  }
  auto level_system = [&](Complex C) {
    PolynomialSystem s = base;
    s.polys.push_back(slice_binomial(a, C));
    return s;
  };
  // coefficient path C(s) = from*(1 + s*(g - 1)); the curve equations
  // stay fixed in s
  auto grow_homotopy = [&](Complex from, double g) {
    std::vector<std::vector<PathTerm>> eqs(n);
    for (int i = 0; i < n - 1; ++i) {
      for (const auto& [exp, coeff] : base.polys[i].terms())
        eqs[i].push_back(
            {exp, coeff, Complex{1.0, 0.0}, Complex{0.0, 0.0}, 0});
    }
    eqs[n - 1].push_back(
        {pos, Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}, 0});
    eqs[n - 1].push_back(
        {neg, -from, Complex{1.0, 0.0}, Complex{g - 1.0, 0.0}, 1});
    return CoefficientPathHomotopy(n, std::move(eqs));
  };

  const SolveResult sol = solve_square(
      level_system(C0), fold_seed(derive_seed(seed, 0x511ce50), a),
      relaxed_for_level(opt.tracker, log_solve, degree_bound), threads);
  if (sol.solutions.empty()) return {};

  std::vector<ComplexPoint> starts;
  starts.reserve(sol.solutions.size());
  for (const auto& s : sol.solutions) starts.push_back(s.x);

  // deep slice points sit behind scale transits that kill start-system
  // paths, so they are reached by growing the level from the shallow
  // solve instead of solving in place
  if (log_solve < opt.log_c1) {
    const TrackerOptions lift_opts =
        relaxed_for_level(opt.tracker, opt.log_c1, degree_bound);
    const std::vector<PathResult> lifted =
        track_all(grow_homotopy(C0, std::exp(opt.log_c1 - log_solve)),
                  starts, lift_opts, threads);
    const PolynomialSystem level1 = level_system(C1);
    std::vector<ComplexPoint> kept;
    for (const auto& p : lifted) {
      if (p.status != PathStatus::Converged) continue;
      ComplexPoint end =
          p.tail_samples.empty() ? p.endpoint : p.tail_samples.back();
      const ComplexPoint raw = end;
      if (!polish(level1, end, lift_opts.polish_iterations,
                  lift_opts.newton_tolerance, lift_opts.residual_floor) ||
          !polish_within_trend(p.tail_samples, raw, end))
        end = raw;
      kept.push_back(std::move(end));
    }
    if (kept.empty()) return {};
    starts = std::move(kept);
  }

  const CoefficientPathHomotopy H = grow_homotopy(C1, growth);
  const TrackerOptions track_opts =
      relaxed_for_level(opt.tracker, opt.log_c2, degree_bound);
  const std::vector<PathResult> paths = track_all(H, starts, track_opts, threads);

  const PolynomialSystem level2 = level_system(C1 * growth);

  SnapOptions snap;
  snap.scale = opt.snap_scale;
  snap.min_cosine = opt.snap_min_cosine;
  snap.max_entry = degree_bound;

  std::vector<ExponentVector> found;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    if (paths[p].status != PathStatus::Converged) continue;
    ComplexPoint end = paths[p].tail_samples.empty()
                           ? paths[p].endpoint
                           : paths[p].tail_samples.back();
    const ComplexPoint end_seed = end;
    if (!polish(level2, end, track_opts.polish_iterations,
                track_opts.newton_tolerance, track_opts.residual_floor) ||
        !polish_within_trend(paths[p].tail_samples, end_seed, end))
      end = end_seed;
    std::vector<double> u(n);
    bool usable = true;
    for (int i = 0; i < n; ++i) {
      const double lo = std::abs(starts[p][i]);
      const double hi = std::abs(end[i]);
      if (!(lo > 0.0) || !(hi > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
        usable = false;
        break;
      }
      u[i] = std::log(hi) - std::log(lo);
    }
    if (!usable) continue;
    const auto cand = snap_direction(u, snap);
    if (!cand) continue;
    if (std::find(found.begin(), found.end(), *cand) == found.end())
      found.push_back(*cand);
  }
  return found;
}

}  // namespace trop
