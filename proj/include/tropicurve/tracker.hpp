#pragma once

// Predictor-corrector path tracking for square polynomial homotopies.
// The homotopy H(x, s) has coefficients of the form c*(alpha + beta*s)^k
// per term, which covers both total-degree continuation
// (1-s)*gamma*G + s*F and parameter segments where a distinguished
// variable t moves along a line in the complex plane.
//
// Residuals are always relative: |H_i| / (1 + sum of term magnitudes).
// This keeps the tracker usable at the enormous coordinate scales that
// amoeba tentacles reach.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "tropicurve/poly.hpp"
#include "tropicurve/rng.hpp"

namespace trop {

struct TrackerOptions {
  double initial_step = 0.05;
  double max_step = 0.1;
  double min_step = 1e-14;
  int successes_to_grow = 3;      // step doubles after this many accepts
  int newton_iterations = 3;      // corrector iterations per step
  double newton_tolerance = 1e-10;
  double divergence_threshold = 1e8;
  double collapse_threshold = 1e-8;
  double end_offset = 1e-6;       // tracking stops at s = 1 - end_offset
  int polish_iterations = 20;
  // Hard bound on predictor/corrector trials per path.  A path whose step
  // size equilibrates at a sliver (typically heading into a root collision)
  // would otherwise crawl for hours; past the bound it fails and the
  // caller's accounting treats it as unresolved.
  int max_steps = 20000;
  // Residual denominators are floor + sum of term magnitudes.  The default
  // floor of 1 treats sub-unit equations absolutely; legs that must follow
  // paths all the way into a boundary stratum shrink it so the test stays
  // relative at every scale (otherwise such paths freeze in place once all
  // terms drop below the tolerance).
  double residual_floor = 1.0;
};

enum class PathStatus {
  Converged,
  DivergedToInfinity,
  CollapsedToBoundary,
  StepSizeUnderflow,
};

struct PathResult {
  PathStatus status = PathStatus::StepSizeUnderflow;
  ComplexPoint endpoint;                 // x at the last accepted s
  double s_reached = 0.0;
  // x at s = 1-d, 1-d/2, 1-d/4 for d = end_offset; full only when Converged
  std::vector<ComplexPoint> tail_samples;
  int steps = 0;
};

struct PathTerm {
  ExponentVector exp;   // exponents over the x variables, nonnegative
  Complex c;            // coefficient value is c * (alpha + beta*s)^k
  Complex alpha;
  Complex beta;
  std::int64_t k = 0;
};

class CoefficientPathHomotopy {
 public:
  CoefficientPathHomotopy() = default;
  CoefficientPathHomotopy(int num_vars, std::vector<std::vector<PathTerm>> eqs)
      : num_vars_(num_vars), eqs_(std::move(eqs)) {
    if (static_cast<int>(eqs_.size()) != num_vars_)
      throw std::invalid_argument("homotopy is not square");
  }

  int num_vars() const { return num_vars_; }
  const std::vector<std::vector<PathTerm>>& equations() const { return eqs_; }

  // (1-s)*gamma*(x_i^{d_i} - 1) + s*F_i for a square system with
  // nonnegative exponents; degrees() reports d_i
  static CoefficientPathHomotopy total_degree(const PolynomialSystem& F,
                                              Complex gamma) {
    const int n = F.num_x_vars();
    if (F.t_index) throw std::invalid_argument("total_degree: unexpected t");
    if (F.size() != n)
      throw std::invalid_argument("total_degree: system is not square");
    CoefficientPathHomotopy H;
    H.num_vars_ = n;
    H.eqs_.resize(n);
    H.degrees_.resize(n);
    for (int i = 0; i < n; ++i) {
      const std::int64_t d = F.polys[i].total_degree();
      H.degrees_[i] = d;
      for (const auto& [exp, coeff] : F.polys[i].terms()) {
        for (auto e : exp)
          if (e < 0)
            throw std::invalid_argument("total_degree: negative exponent");
        // s * coeff * x^exp
        H.eqs_[i].push_back({exp, coeff, Complex{0.0, 0.0}, Complex{1.0, 0.0}, 1});
      }
      // (1-s) * gamma * (x_i^d - 1)
      ExponentVector lead(n, 0);
      lead[i] = d;
      H.eqs_[i].push_back({lead, gamma, Complex{1.0, 0.0}, Complex{-1.0, 0.0}, 1});
      H.eqs_[i].push_back(
          {ExponentVector(n, 0), -gamma, Complex{1.0, 0.0}, Complex{-1.0, 0.0}, 1});
    }
    return H;
  }

  // J with its t variable moving along t(s) = from + s*(to - from)
  static CoefficientPathHomotopy parameter_segment(const PolynomialSystem& J,
                                                   Complex t_from, Complex t_to) {
    if (!J.t_index)
      throw std::invalid_argument("parameter_segment: system has no t");
    const int n = J.num_x_vars();
    if (J.size() != n)
      throw std::invalid_argument("parameter_segment: system is not square");
    const int ti = *J.t_index;
    CoefficientPathHomotopy H;
    H.num_vars_ = n;
    H.eqs_.resize(n);
    for (int i = 0; i < n; ++i) {
      for (const auto& [exp, coeff] : J.polys[i].terms()) {
        PathTerm term;
        term.exp.reserve(n);
        for (int v = 0; v < J.num_vars; ++v) {
          if (v == ti) continue;
          if (exp[v] < 0)
            throw std::invalid_argument("parameter_segment: negative exponent");
          term.exp.push_back(exp[v]);
        }
        if (exp[ti] < 0)
          throw std::invalid_argument("parameter_segment: negative t exponent");
        term.c = coeff;
        term.alpha = t_from;
        term.beta = t_to - t_from;
        term.k = exp[ti];
        H.eqs_[i].push_back(std::move(term));
      }
    }
    return H;
  }

  // J with its t variable moving along t(s) = (u0 + s*(u1 - u0))^R where
  // u = t^{1/R}; a branch x ~ c + d*t^{1/q} is analytic in this chart
  // whenever q divides R, so the step control no longer stalls at t = 0
  static CoefficientPathHomotopy parameter_segment_root(
      const PolynomialSystem& J, Complex t_from, Complex t_to,
      std::int64_t root) {
    if (root < 1)
      throw std::invalid_argument("parameter_segment_root: bad root");
    CoefficientPathHomotopy H = parameter_segment(J, t_from, t_to);
    const double inv = 1.0 / static_cast<double>(root);
    const Complex u_from =
        std::abs(t_from) > 0.0 ? std::pow(t_from, inv) : Complex{0.0, 0.0};
    const Complex u_to =
        std::abs(t_to) > 0.0 ? std::pow(t_to, inv) : Complex{0.0, 0.0};
    for (auto& eq : H.eqs_) {
      for (auto& term : eq) {
        term.alpha = u_from;
        term.beta = u_to - u_from;
        term.k *= root;
      }
    }
    return H;
  }

  const std::vector<std::int64_t>& degrees() const { return degrees_; }

  // H values and per-equation term-magnitude sums
  void evaluate(const ComplexPoint& x, double s, Eigen::VectorXcd& out,
                Eigen::VectorXd& mags) const {
    out.resize(num_vars_);
    mags.resize(num_vars_);
    for (int i = 0; i < num_vars_; ++i) {
      Complex sum{0.0, 0.0};
      double mag = 0.0;
      for (const auto& term : eqs_[i]) {
        const Complex v = term_value(term, x, s);
        sum += v;
        mag += std::abs(v);
      }
      out(i) = sum;
      mags(i) = mag;
    }
  }

  void jacobian_x(const ComplexPoint& x, double s, Eigen::MatrixXcd& J) const {
    J.setZero(num_vars_, num_vars_);
    for (int i = 0; i < num_vars_; ++i) {
      for (const auto& term : eqs_[i]) {
        const Complex base = term.c * cpow_int(term.alpha + term.beta * s, term.k);
        for (int j = 0; j < num_vars_; ++j) {
          if (term.exp[j] == 0) continue;
          Complex p = base * static_cast<double>(term.exp[j]);
          for (int v = 0; v < num_vars_; ++v) {
            const std::int64_t e = (v == j) ? term.exp[v] - 1 : term.exp[v];
            if (e != 0) p *= cpow_int(x[v], e);
          }
          J(i, j) += p;
        }
      }
    }
  }

  void ds_derivative(const ComplexPoint& x, double s, Eigen::VectorXcd& out) const {
    out.setZero(num_vars_);
    for (int i = 0; i < num_vars_; ++i) {
      for (const auto& term : eqs_[i]) {
        if (term.k == 0) continue;
        Complex v = term.c * static_cast<double>(term.k) * term.beta *
                    cpow_int(term.alpha + term.beta * s, term.k - 1);
        for (int j = 0; j < num_vars_; ++j)
          if (term.exp[j] != 0) v *= cpow_int(x[j], term.exp[j]);
        out(i) += v;
      }
    }
  }

 private:
  static Complex term_value(const PathTerm& t, const ComplexPoint& x, double s) {
    Complex v = t.c * cpow_int(t.alpha + t.beta * s, t.k);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (t.exp[j] != 0) v *= cpow_int(x[j], t.exp[j]);
    return v;
  }

  int num_vars_ = 0;
  std::vector<std::vector<PathTerm>> eqs_;
  std::vector<std::int64_t> degrees_;
};

namespace detail {

// row-equilibrated LU solve; false when the result is not finite
inline bool lu_solve(Eigen::MatrixXcd A, Eigen::VectorXcd b,
                     Eigen::VectorXcd& out) {
  const int n = static_cast<int>(A.rows());
  for (int i = 0; i < n; ++i) {
    const double m = A.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0 && std::isfinite(m)) {
      A.row(i) /= m;
      b(i) /= m;
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  out = lu.solve(b);
  return out.allFinite();
}

inline bool point_finite(const ComplexPoint& x) {
  for (const auto& v : x)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace detail

// max_i |H_i| / (floor + mag_i)
inline double relative_residual(const CoefficientPathHomotopy& H,
                                const ComplexPoint& x, double s,
                                double floor = 1.0) {
  Eigen::VectorXcd val;
  Eigen::VectorXd mags;
  H.evaluate(x, s, val, mags);
  double r = 0.0;
  for (int i = 0; i < val.size(); ++i)
    r = std::max(r, std::abs(val(i)) / (floor + mags(i)));
  return r;
}

// Newton iterations on H(., s); true when the relative residual drops
// below tol within the iteration budget.  When `from` is given (the point
// the step started at, with x holding the prediction), acceptance also
// requires at least one measured update and a total correction that stays
// a fraction of the predicted displacement per coordinate.  A correction
// comparable to the step itself means the prediction left the basin of
// its own path, which is how paths silently merge onto a neighbor.
inline bool newton_correct(const CoefficientPathHomotopy& H, double s,
                           ComplexPoint& x, int iterations, double tol,
                           double floor = 1.0,
                           const ComplexPoint* from = nullptr) {
  const int n = H.num_vars();
  Eigen::VectorXcd val, dx;
  Eigen::VectorXd mags;
  Eigen::MatrixXcd J;
  ComplexPoint pred;
  std::vector<double> dpred;
  if (from) {
    pred = x;
    dpred.resize(n);
    for (int i = 0; i < n; ++i) dpred[i] = std::abs(pred[i] - (*from)[i]);
  }
  bool entry_ok = false;
  ComplexPoint entry_point;
  for (int it = 0; it <= iterations; ++it) {
    H.evaluate(x, s, val, mags);
    double r = 0.0;
    for (int i = 0; i < n; ++i)
      r = std::max(r, std::abs(val(i)) / (floor + mags(i)));
    if (r <= tol) {
      if (!from) return true;
      if (it > 0) {
        // coordinates at the relative noise floor carry no path identity
        // and their corrections are linear-algebra residue, so skip them
        double big = 0.0;
        for (int i = 0; i < n; ++i) big = std::max(big, std::abs(x[i]));
        for (int i = 0; i < n; ++i) {
          const double a = std::abs(x[i]);
          if (a <= 1e-15 * big) continue;
          const double moved = std::abs(x[i] - pred[i]);
          if (moved > 0.5 * dpred[i] + 1e-3 * a) return false;
        }
        return true;
      }
      // fall through and take one update so the correction is measured;
      // keep the entry in case that update just bounces on Jacobian
      // noise, as happens beside a near-singular fiber
      entry_ok = true;
      entry_point = x;
    }
    if (it == iterations) break;
    H.jacobian_x(x, s, J);
    if (!detail::lu_solve(J, -val, dx)) break;
    for (int i = 0; i < n; ++i) x[i] += dx(i);
    if (!detail::point_finite(x)) break;
  }
  if (entry_ok) {
    x = entry_point;
    return true;
  }
  return false;
}

namespace detail {

// one RK4 step of dx/ds = -J_x^{-1} dH/ds from (x, s) with size h
inline bool rk4_predict(const CoefficientPathHomotopy& H, const ComplexPoint& x,
                        double s, double h, ComplexPoint& out) {
  const int n = H.num_vars();
  Eigen::MatrixXcd J;
  Eigen::VectorXcd rhs;
  auto field = [&](const ComplexPoint& p, double sp, Eigen::VectorXcd& k) {
    H.jacobian_x(p, sp, J);
    H.ds_derivative(p, sp, rhs);
    return lu_solve(J, -rhs, k);
  };
  Eigen::VectorXcd k1, k2, k3, k4;
  ComplexPoint tmp(n);
  if (!field(x, s, k1)) return false;
  for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1(i);
  if (!field(tmp, s + 0.5 * h, k2)) return false;
  for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2(i);
  if (!field(tmp, s + 0.5 * h, k3)) return false;
  for (int i = 0; i < n; ++i) tmp[i] = x[i] + h * k3(i);
  if (!field(tmp, s + h, k4)) return false;
  out.resize(n);
  for (int i = 0; i < n; ++i)
    out[i] = x[i] + (h / 6.0) * (k1(i) + 2.0 * k2(i) + 2.0 * k3(i) + k4(i));
  return point_finite(out);
}

// advance from (x, s) to s_target, adapting the step size
inline PathStatus advance(const CoefficientPathHomotopy& H, ComplexPoint& x,
                          double& s, double s_target, double& h,
                          const TrackerOptions& opt, int& steps) {
  int successes = 0;
  while (s < s_target - 1e-15) {
    // the homotopy degenerates at s=1, so resolve the approach
    // geometrically instead of striding over it
    const double step =
        std::min({h, s_target - s, 0.5 * (1.0 - s)});
    ComplexPoint pred;
    bool ok = rk4_predict(H, x, s, step, pred);
    if (ok)
      ok = newton_correct(H, s + step, pred, opt.newton_iterations,
                          opt.newton_tolerance, opt.residual_floor, &x);
    if (++steps > opt.max_steps) return PathStatus::StepSizeUnderflow;
    if (ok) {
      x = std::move(pred);
      s += step;
      if (++successes >= opt.successes_to_grow) {
        h = std::min(2.0 * h, opt.max_step);
        successes = 0;
      }
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (const auto& v : x) {
        const double a = std::abs(v);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > opt.divergence_threshold) return PathStatus::DivergedToInfinity;
      if (lo < opt.collapse_threshold) return PathStatus::CollapsedToBoundary;
    } else {
      h = 0.5 * std::min(h, step);
      successes = 0;
      if (h < opt.min_step) return PathStatus::StepSizeUnderflow;
    }
  }
  return PathStatus::Converged;
}

}  // namespace detail

// Tracks one path from x0 at s=s_start to s = 1 - end_offset, then on to
// 1 - end_offset/2 and 1 - end_offset/4 to collect the tail samples.
inline PathResult track(const CoefficientPathHomotopy& H, const ComplexPoint& x0,
                        const TrackerOptions& opt = {}, double s_start = 0.0) {
  PathResult res;
  ComplexPoint x = x0;
  double s = s_start;
  double h = opt.initial_step;
  const double d = opt.end_offset;
  const double stops[3] = {1.0 - d, 1.0 - d / 2.0, 1.0 - d / 4.0};
  for (int leg = 0; leg < 3; ++leg) {
    const PathStatus st =
        detail::advance(H, x, s, stops[leg], h, opt, res.steps);
    res.endpoint = x;
    res.s_reached = s;
    res.status = st;
    if (st != PathStatus::Converged) return res;
    res.tail_samples.push_back(x);
  }
  res.endpoint = res.tail_samples.front();  // x at s = 1 - end_offset
  res.s_reached = stops[0];
  return res;
}

// Tracks every start point; work is split across threads by index, so the
// result is identical for any thread count.
inline std::vector<PathResult> track_all(const CoefficientPathHomotopy& H,
                                         const std::vector<ComplexPoint>& starts,
                                         const TrackerOptions& opt = {},
                                         int threads = 1) {
  std::vector<PathResult> results(starts.size());
  threads = std::max(1, threads);
  if (threads == 1 || starts.size() <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i)
      results[i] = track(H, starts[i], opt);
    return results;
  }
  std::vector<std::thread> pool;
  std::size_t nthreads = std::min<std::size_t>(threads, starts.size());
  for (std::size_t tid = 0; tid < nthreads; ++tid) {
    pool.emplace_back([&, tid]() {
      for (std::size_t i = tid; i < starts.size(); i += nthreads)
        results[i] = track(H, starts[i], opt);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

// Newton polish on a plain square system (no homotopy parameter)
inline bool polish(const PolynomialSystem& F, ComplexPoint& x, int iterations,
                   double tol, double floor = 1.0) {
  const int n = F.num_x_vars();
  if (F.t_index || F.size() != n)
    throw std::invalid_argument("polish: need a square system without t");
  Eigen::MatrixXcd J(n, n);
  Eigen::VectorXcd val(n), dx;
  for (int it = 0; it <= iterations; ++it) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto [v, mag] = F.polys[i].evaluate_with_magnitude(x);
      val(i) = v;
      r = std::max(r, std::abs(v) / (floor + mag));
    }
    if (r <= tol) return true;
    if (it == iterations) break;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        J(i, j) = F.polys[i].partial(j).evaluate(x);
    if (!detail::lu_solve(J, -val, dx)) return false;
    for (int i = 0; i < n; ++i) x[i] += dx(i);
    if (!detail::point_finite(x)) return false;
  }
  return false;
}

inline double max_relative_residual(const PolynomialSystem& F,
                                    const ComplexPoint& x,
                                    double floor = 1.0) {
  double r = 0.0;
  for (const auto& f : F.polys) {
    const auto [v, mag] = f.evaluate_with_magnitude(x);
    r = std::max(r, std::abs(v) / (floor + mag));
  }
  return r;
}

// True when polishing left every coordinate close to where tracking put it.
// A large move means Newton teleported an off-root endpoint onto some root
// it never belonged to.
inline bool polish_stayed_near(const ComplexPoint& before,
                               const ComplexPoint& after) {
  for (std::size_t i = 0; i < before.size(); ++i)
    if (std::abs(after[i] - before[i]) >
        1e-2 * (1e-300 + std::abs(before[i])))
      return false;
  return true;
}

// Trend-aware version for tracked endpoints.  A path stopped at offset d
// from the end still sits about one d-size stride from its limit, so each
// coordinate may legitimately move by a few multiples of its latest
// inter-sample stride; jumps to a foreign root dwarf that local motion.
inline bool polish_within_trend(const std::vector<ComplexPoint>& tails,
                                const ComplexPoint& before,
                                const ComplexPoint& after) {
  if (tails.size() < 3) return polish_stayed_near(before, after);
  double big = 0.0;
  for (const auto& c : before) big = std::max(big, std::abs(c));
  for (std::size_t i = 0; i < before.size(); ++i) {
    const double s1 = std::abs(tails[1][i] - tails[0][i]);
    const double s2 = std::abs(tails[2][i] - tails[1][i]);
    // contracting strides witness a finite limit and bound the distance
    // still to cover; growing strides mean the coordinate is escaping and
    // a large polish move is a capture by some other root
    const double stride = (s2 < 0.9 * s1) ? std::max(s1, s2) : 0.0;
    const double allowed =
        1e-2 * std::abs(before[i]) + 4.0 * stride + 1e-13 * big;
    if (std::abs(after[i] - before[i]) > allowed) return false;
  }
  return true;
}

namespace detail {

// smallest/largest singular value ratio below 1e-10 counts as singular
inline bool jacobian_singular(const PolynomialSystem& F, const ComplexPoint& x) {
  const int n = F.num_x_vars();
  Eigen::MatrixXcd J(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      J(i, j) = F.polys[i].partial(j).evaluate(x);
  if (!J.allFinite()) return true;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  const auto& sv = svd.singularValues();
  const double hi = sv(0);
  const double lo = sv(sv.size() - 1);
  return !(hi > 0.0) || lo < 1e-10 * hi;
}

}  // namespace detail

struct TorusSolution {
  ComplexPoint x;
  int path_count = 1;  // paths that landed here; >1 for non-reduced roots
};

struct SolveResult {
  std::vector<TorusSolution> solutions;  // deduplicated torus solutions
  int total_paths = 0;
  int converged_paths = 0;
  int diverged_paths = 0;
  int collapsed_paths = 0;
  int failed_paths = 0;   // step underflow or unclassifiable endpoint
  bool accounted() const { return failed_paths == 0; }
};

namespace detail {

// Growth exponents from the three tail samples: coordinate i behaves like
// (1-s)^{-g_i} near s=1, estimated twice and accepted when stable.  Sorts
// endpoints that resist polishing into diverging or collapsing bins.
inline PathStatus classify_tail_growth(const std::vector<ComplexPoint>& tail) {
  if (tail.size() < 3) return PathStatus::StepSizeUnderflow;
  const int n = static_cast<int>(tail[0].size());
  const double log2inv = 1.4426950408889634;
  double big = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) big = std::max(big, std::abs(tail[k][i]));
  bool diverge = false, collapse = false;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(tail[0][i]);
    const double b = std::abs(tail[1][i]);
    const double c = std::abs(tail[2][i]);
    // a coordinate at the relative noise floor has already left the torus
    if (a <= 1e-14 * big || b <= 1e-14 * big || c <= 1e-14 * big) {
      collapse = true;
      continue;
    }
    const double g1 = std::log(b / a) * log2inv;
    const double g2 = std::log(c / b) * log2inv;
    if (std::abs(g1 - g2) > 0.1) return PathStatus::StepSizeUnderflow;
    const double g = g2;
    // slowest real escapes grow like (1-s)^(-1/k), so the dead band must
    // sit below 1/k for the multiplicities that actually occur
    if (g > 0.05) diverge = true;
    if (g < -0.05) collapse = true;
  }
  if (diverge) return PathStatus::DivergedToInfinity;
  if (collapse) return PathStatus::CollapsedToBoundary;
  return PathStatus::StepSizeUnderflow;  // looks finite yet would not polish
}

}  // namespace detail

// Total-degree continuation for a square system without t.  Negative
// exponents are cleared first (a unit rescaling in the torus).  Endpoints
// are polished on F itself, filtered to the torus, and deduplicated at
// relative tolerance 1e-8.
inline SolveResult solve_square(const PolynomialSystem& F_in, std::uint64_t seed,
                                const TrackerOptions& opt = {}, int threads = 1) {
  PolynomialSystem F = clear_denominators(F_in);
  const int n = F.num_x_vars();
  if (F.t_index || F.size() != n)
    throw std::invalid_argument("solve_square: need a square system without t");

  SolveResult out;
  std::vector<std::int64_t> deg(n);
  for (int i = 0; i < n; ++i) {
    if (F.polys[i].is_zero())
      throw std::invalid_argument("solve_square: zero polynomial");
    deg[i] = F.polys[i].total_degree();
    if (deg[i] == 0) return out;  // nonzero constant equation, no solutions
  }

  Rng rng(derive_seed(seed, 0x67616d));
  const Complex gamma = rng.unit_complex();
  const CoefficientPathHomotopy H = CoefficientPathHomotopy::total_degree(F, gamma);

  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= deg[i];
  std::vector<ComplexPoint> starts;
  starts.reserve(total);
  std::vector<std::int64_t> idx(n, 0);
  const double two_pi = 6.283185307179586476925286766559;
  for (std::int64_t c = 0; c < total; ++c) {
    ComplexPoint p(n);
    for (int i = 0; i < n; ++i) {
      const double ang = two_pi * static_cast<double>(idx[i]) /
                         static_cast<double>(deg[i]);
      p[i] = Complex{std::cos(ang), std::sin(ang)};
    }
    starts.push_back(std::move(p));
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < deg[i]) break;
      idx[i] = 0;
    }
  }

  const std::vector<PathResult> paths = track_all(H, starts, opt, threads);
  out.total_paths = static_cast<int>(paths.size());

  std::vector<ComplexPoint> endpoints;
  for (const auto& p : paths) {
    PathStatus st = p.status;
    if (st == PathStatus::Converged) {
      // seed Newton from the sample nearest s=1, where transit to the
      // limit is smallest
      ComplexPoint x = p.tail_samples.back();
      if (polish(F, x, opt.polish_iterations, opt.newton_tolerance,
                 opt.residual_floor) &&
          polish_within_trend(p.tail_samples, p.tail_samples.back(), x)) {
        ++out.converged_paths;
        endpoints.push_back(std::move(x));
        continue;
      }
      // endpoints that resist polishing are usually paths escaping to the
      // boundary too slowly to trip the thresholds before s_end
      st = detail::classify_tail_growth(p.tail_samples);
      if (st == PathStatus::StepSizeUnderflow && opt.end_offset > 4e-9 &&
          p.tail_samples.size() == 3) {
        // too close to call at the default offset; resume the path nearer
        // s=1 where the growth exponents separate
        TrackerOptions deep = opt;
        deep.end_offset = 1e-9;
        const PathResult q =
            track(H, p.tail_samples.back(), deep, 1.0 - opt.end_offset / 4.0);
        if (q.status == PathStatus::Converged) {
          ComplexPoint y = q.tail_samples.back();
          if (polish(F, y, opt.polish_iterations, opt.newton_tolerance,
                     opt.residual_floor) &&
              polish_within_trend(q.tail_samples, q.tail_samples.back(), y)) {
            ++out.converged_paths;
            endpoints.push_back(std::move(y));
            continue;
          }
          st = detail::classify_tail_growth(q.tail_samples);
        } else {
          st = q.status;
        }
      }
    }
    switch (st) {
      case PathStatus::DivergedToInfinity: ++out.diverged_paths; break;
      case PathStatus::CollapsedToBoundary: ++out.collapsed_paths; break;
      default: ++out.failed_paths; break;
    }
  }

  // torus filter, then relative-tolerance deduplication
  for (auto& x : endpoints) {
    bool torus = true;
    for (const auto& v : x)
      if (std::abs(v) < opt.collapse_threshold) { torus = false; break; }
    if (!torus) {
      ++out.collapsed_paths;
      continue;
    }
    double norm = 0.0;
    for (const auto& v : x) norm = std::max(norm, std::abs(v));
    bool dup = false;
    for (auto& sol : out.solutions) {
      double diff = 0.0, ynorm = 0.0;
      for (int i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(x[i] - sol.x[i]));
        ynorm = std::max(ynorm, std::abs(sol.x[i]));
      }
      if (diff <= 1e-8 * (1.0 + std::max(norm, ynorm))) {
        ++sol.path_count;
        dup = true;
        break;
      }
    }
    if (!dup) out.solutions.push_back({x, 1});
  }

  // a simple root absorbs exactly one path, so a crowd on a root with a
  // nonsingular Jacobian means other paths were silently lost; demote the
  // surplus to failures rather than report an inflated count
  for (auto& sol : out.solutions) {
    if (sol.path_count > 1 && !detail::jacobian_singular(F, sol.x)) {
      out.failed_paths += sol.path_count - 1;
      out.converged_paths -= sol.path_count - 1;
      sol.path_count = 1;
    }
  }
  return out;
}

}  // namespace trop
