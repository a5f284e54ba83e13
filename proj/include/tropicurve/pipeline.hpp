#pragma once

// End to end: from a polynomial system cutting a curve in the torus to its
// tropicalization.  Rounds of slicing propose candidate directions, path
// counting fixes multiplicities, and the run stops as soon as the lifted
// degree of the collected rays matches the numeric degree of the curve.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "tropicurve/multiplicity.hpp"
#include "tropicurve/poly.hpp"
#include "tropicurve/rng.hpp"
#include "tropicurve/slicer.hpp"
#include "tropicurve/tracker.hpp"
#include "tropicurve/tropfan.hpp"

namespace trop {

struct Config {
  std::uint64_t seed = 1729;
  int max_rounds = 5;
  int threads = 1;
  double log_c1 = 8.0;
  double log_c2 = 16.0;
  double epsilon = 1e-3;
  double a0_modulus = 0.1;
  double snap_scale = 1e4;
  double snap_min_cosine = 0.9999;
  TrackerOptions tracker;
};

struct RunReport {
  int n = 0;
  TropicalCurve curve;
  std::int64_t numeric_deg = 0;
  std::optional<std::int64_t> trop_deg;
  bool balanced = false;
  bool complete = false;
  std::int64_t defect = 0;
  std::uint64_t seed = 0;
  Config config;
  int rounds_used = 0;
  int indeterminate_rays = 0;  // candidates still unresolved at the end
};

namespace detail {

inline std::vector<ExponentVector> default_directions(int n) {
  std::vector<ExponentVector> dirs;
  for (int i = 0; i < n; ++i) {
    ExponentVector e(n, 0);
    e[i] = 1;
    dirs.push_back(e);
    e[i] = -1;
    dirs.push_back(e);
  }
  dirs.push_back(ExponentVector(n, 1));
  dirs.push_back(ExponentVector(n, -1));
  return dirs;
}

inline std::vector<ExponentVector> random_directions(int n, int count, Rng& rng) {
  std::vector<ExponentVector> dirs;
  int guard = 0;
  while (static_cast<int>(dirs.size()) < count && guard < 100 * count) {
    ++guard;
    ExponentVector d(n);
    for (int i = 0; i < n; ++i) d[i] = rng.uniform_int(-3, 3);
    if (is_zero_vector(d)) continue;
    d = primitive(d);
    bool dup = false;
    for (const auto& e : dirs)
      if (e == d) { dup = true; break; }
    if (!dup) dirs.push_back(std::move(d));
  }
  return dirs;
}

}  // namespace detail

inline RunReport tropicalize(const PolynomialSystem& input, const Config& cfg) {
  if (input.t_index)
    throw std::invalid_argument("tropicalize: unexpected path variable");
  const int n = input.num_vars;
  if (n < 2) throw std::invalid_argument("tropicalize: need at least 2 variables");
  if (input.size() < n - 1)
    throw std::invalid_argument(
        "tropicalize: fewer equations than the curve codimension");

  const PolynomialSystem F =
      (input.size() == n - 1)
          ? input
          : square_up(input, n - 1, derive_seed(cfg.seed, 0x5c0b));

  RunReport rep;
  rep.n = n;
  rep.seed = cfg.seed;
  rep.config = cfg;
  rep.curve.n = n;

  rep.numeric_deg = numeric_degree(F, cfg.seed, cfg.tracker, cfg.threads);
  if (rep.numeric_deg == 0) {
    // the torus misses the curve entirely
    rep.trop_deg = 0;
    rep.balanced = true;
    rep.complete = true;
    rep.defect = 0;
    return rep;
  }

  SlicerOptions sopts;
  sopts.log_c1 = cfg.log_c1;
  sopts.log_c2 = cfg.log_c2;
  sopts.snap_scale = cfg.snap_scale;
  sopts.snap_min_cosine = cfg.snap_min_cosine;
  sopts.tracker = cfg.tracker;

  MultOptions mopts;
  mopts.a0_modulus = cfg.a0_modulus;
  mopts.epsilon = cfg.epsilon;
  mopts.tracker = cfg.tracker;

  std::set<ExponentVector> sliced;
  std::map<ExponentVector, MultResult> decided;
  std::map<ExponentVector, int> pending;  // candidate -> attempts so far

  auto rebuild = [&]() {
    rep.curve.rays.clear();
    for (const auto& [dir, mr] : decided) {
      if (mr.multiplicity <= 0) continue;
      Ray r;
      r.direction = dir;
      r.multiplicity = mr.multiplicity;
      r.witnesses = mr.witnesses;
      rep.curve.rays.push_back(std::move(r));
    }
    sort_rays(rep.curve);
    rep.trop_deg = tropical_degree(rep.curve);
    rep.balanced = is_balanced(rep.curve);
    rep.defect = completeness_defect(rep.curve, rep.numeric_deg);
    rep.complete = rep.balanced && rep.trop_deg &&
                   *rep.trop_deg == rep.numeric_deg;
  };

  // a few certification attempts per round: each draws fresh junction
  // randomness, and a flaky verdict usually settles within one or two
  auto certify = [&](const ExponentVector& cand) {
    int& attempt = pending[cand];
    for (int tries = 0; tries < 3; ++tries) {
      const MultResult mr = ray_multiplicity(
          F, cand,
          derive_seed(cfg.seed, 0xa77, static_cast<std::uint64_t>(attempt)),
          mopts, cfg.threads);
      ++attempt;
      if (mr.status == MultStatus::Determinate) {
        decided.emplace(cand, mr);
        pending.erase(cand);
        return;
      }
    }
  };

  for (int round = 0; round < cfg.max_rounds; ++round) {
    rep.rounds_used = round + 1;

    if (round > 0 && !pending.empty()) {
      // fresh attempts on held-over candidates cost far less than a
      // slicing pass, so spend them first in case they close the fan
      std::vector<ExponentVector> held;
      for (const auto& [cand, attempts] : pending) {
        (void)attempts;
        held.push_back(cand);
      }
      for (const auto& cand : held) certify(cand);
      rebuild();
      if (rep.complete) break;
    }

    std::vector<ExponentVector> dirs;
    if (round == 0) {
      dirs = detail::default_directions(n);
    } else {
      Rng rng(derive_seed(cfg.seed, 0xd12, static_cast<std::uint64_t>(round)));
      dirs = detail::random_directions(n, n + 2, rng);
    }

    std::vector<ExponentVector> fresh;
    for (const auto& a : dirs) {
      if (!sliced.insert(a).second) continue;
      for (auto& cand : candidate_rays(F, a, rep.numeric_deg, cfg.seed, sopts,
                                       cfg.threads)) {
        if (decided.count(cand) || pending.count(cand)) continue;
        pending.emplace(cand, 0);
        fresh.push_back(cand);
      }
    }
    for (const auto& cand : fresh) certify(cand);

    rebuild();
    if (rep.complete) break;
  }

  rep.indeterminate_rays = static_cast<int>(pending.size());
  return rep;
}

}  // namespace trop
