#pragma once

// Exact integer linear algebra: primitive vectors, Bezout complements,
// integral LLL reduction, and snapping of real vectors to nearby primitive
// integer directions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tropicurve/poly.hpp"

namespace trop {

using BigInt = boost::multiprecision::cpp_int;

inline std::int64_t content(const ExponentVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

inline bool is_zero_vector(const ExponentVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

inline ExponentVector primitive(const ExponentVector& v) {
  const std::int64_t g = content(v);
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  ExponentVector r = v;
  for (auto& x : r) x /= g;
  return r;
}

inline std::int64_t dot(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// g = gcd(a, b) >= 0 with a*x + b*y = g
inline std::int64_t extended_gcd(std::int64_t a, std::int64_t b,
                                 std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_x = 1, xx = 0;
  std::int64_t old_y = 0, yy = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_x - q * xx; old_x = xx; xx = tmp;
    tmp = old_y - q * yy; old_y = yy; yy = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
  x = old_x;
  y = old_y;
  return old_r;
}

// v with w.v = -1, for primitive w; folds Bezout coefficients across entries
inline ExponentVector complement_vector(const ExponentVector& w) {
  if (w.empty()) throw std::invalid_argument("complement_vector: empty vector");
  std::vector<std::int64_t> c{1};
  std::int64_t g = w[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::int64_t a, b;
    const std::int64_t g2 = extended_gcd(g, w[i], a, b);
    for (auto& cj : c) cj *= a;
    c.push_back(b);
    g = g2;
  }
  if (g < 0) { g = -g; for (auto& cj : c) cj = -cj; }
  if (g != 1)
    throw std::invalid_argument("complement_vector: vector is not primitive");
  ExponentVector v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = -c[i];
  return v;
}

// ---- integral LLL ----------------------------------------------------------

struct LllResult {
  std::vector<ExponentVector> rows;       // reduced basis
  std::vector<ExponentVector> transform;  // unimodular U with U*input = rows
};

namespace detail {

inline BigInt big_round_div(const BigInt& num, const BigInt& den) {
  // nearest integer to num/den, den > 0, ties away from zero
  const BigInt two_num = 2 * num;
  const BigInt two_den = 2 * den;
  BigInt q;
  if (two_num >= 0) q = (two_num + den) / two_den;
  else q = -((den - two_num) / two_den);
  return q;
}

}  // namespace detail

// Row reduction by the exact integer LLL recurrence (Gram determinants d_i
// and scaled coefficients lambda_{i,j}), Lovasz parameter delta = 99/100.
// Rows must be linearly independent; dependence surfaces as a vanishing
// Gram determinant and is reported as an error.
inline LllResult lll_reduce(const std::vector<ExponentVector>& input) {
  const int n = static_cast<int>(input.size());
  if (n == 0) throw std::invalid_argument("lll_reduce: no rows");
  const int m = static_cast<int>(input[0].size());
  for (const auto& r : input)
    if (static_cast<int>(r.size()) != m)
      throw std::invalid_argument("lll_reduce: ragged rows");

  const BigInt delta_p = 99, delta_q = 100;

  // 1-based working arrays
  std::vector<std::vector<BigInt>> b(n + 1, std::vector<BigInt>(m));
  std::vector<std::vector<BigInt>> h(n + 1, std::vector<BigInt>(n, 0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < m; ++j) b[i][j] = input[i - 1][j];
    h[i][i - 1] = 1;
  }
  std::vector<BigInt> d(n + 1);
  std::vector<std::vector<BigInt>> lam(n + 1, std::vector<BigInt>(n + 1, 0));
  d[0] = 1;

  auto ip = [&](int i, int j) {
    BigInt s = 0;
    for (int t = 0; t < m; ++t) s += b[i][t] * b[j][t];
    return s;
  };

  auto redi = [&](int k, int l) {
    if (2 * abs(lam[k][l]) <= d[l]) return;
    const BigInt q = detail::big_round_div(lam[k][l], d[l]);
    for (int t = 0; t < m; ++t) b[k][t] -= q * b[l][t];
    for (int t = 0; t < n; ++t) h[k][t] -= q * h[l][t];
    lam[k][l] -= q * d[l];
    for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  int k_max = 1;
  d[1] = ip(1, 1);
  if (d[1] == 0) throw std::invalid_argument("lll_reduce: zero row");

  int k = 2;
  while (k <= n) {
    if (k > k_max) {
      k_max = k;
      for (int j = 1; j <= k; ++j) {
        BigInt u = ip(k, j);
        for (int i = 1; i < j; ++i)
          u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) lam[k][j] = u;
        else d[k] = u;
      }
      if (d[k] == 0)
        throw std::invalid_argument("lll_reduce: linearly dependent rows");
    }
    for (;;) {
      redi(k, k - 1);
      // Lovasz test with delta = p/q
      if (delta_q * d[k] * d[k - 2] <
          delta_p * d[k - 1] * d[k - 1] - delta_q * lam[k][k - 1] * lam[k][k - 1]) {
        // swap rows k-1 and k, update the recurrence in place
        std::swap(b[k], b[k - 1]);
        std::swap(h[k], h[k - 1]);
        for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        const BigInt lambda = lam[k][k - 1];
        const BigInt B = (d[k - 2] * d[k] + lambda * lambda) / d[k - 1];
        for (int i = k + 1; i <= k_max; ++i) {
          const BigInt t = lam[i][k];
          lam[i][k] = (d[k] * lam[i][k - 1] - lambda * t) / d[k - 1];
          lam[i][k - 1] = (B * t + lambda * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
        k = std::max(2, k - 1);
      } else {
        for (int l = k - 2; l >= 1; --l) redi(k, l);
        ++k;
        break;
      }
    }
  }

  auto narrow = [](const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("lll_reduce: entry exceeds 64 bits");
    return static_cast<std::int64_t>(v);
  };
  LllResult res;
  res.rows.resize(n, ExponentVector(m));
  res.transform.resize(n, ExponentVector(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < m; ++j) res.rows[i - 1][j] = narrow(b[i][j]);
    for (int j = 0; j < n; ++j) res.transform[i - 1][j] = narrow(h[i][j]);
  }
  return res;
}

// fraction-free Gaussian elimination; exact determinant of a square matrix
inline BigInt integer_determinant(const std::vector<ExponentVector>& mat) {
  const int n = static_cast<int>(mat.size());
  for (const auto& r : mat)
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("integer_determinant: not square");
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = mat[i][j];
  BigInt prev = 1;
  int sign = 1;
  for (int p = 0; p < n - 1; ++p) {
    if (a[p][p] == 0) {
      int r = p + 1;
      while (r < n && a[r][p] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (int i = p + 1; i < n; ++i)
      for (int j = p + 1; j < n; ++j)
        a[i][j] = (a[p][p] * a[i][j] - a[i][p] * a[p][j]) / prev;
    prev = a[p][p];
  }
  return sign * a[n - 1][n - 1];
}

// ---- direction snapping ----------------------------------------------------

struct SnapOptions {
  double scale = 1e4;
  double min_cosine = 0.9999;
  std::int64_t max_entry = 64;  // callers pass the curve degree
};

// Recovers the primitive integer direction r from u ~ lambda*r with small
// relative noise.  Scales and rounds u, forms the cross-difference lattice
// augmented with an identity block, and LLL-reduces; the identity tail of
// the shortest basis row is the candidate.  Rejects (nullopt) when the
// candidate fails the cosine or entry-size gates, and never returns a
// direction that disagrees with u.
inline std::optional<ExponentVector> snap_direction(
    const std::vector<double>& u, const SnapOptions& opt = {}) {
  const int n = static_cast<int>(u.size());
  if (n == 0) return std::nullopt;

  std::vector<std::int64_t> x(n);
  std::int64_t max_abs = 0;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(u[i])) return std::nullopt;
    x[i] = std::llround(opt.scale * u[i]);
    if (std::abs(x[i]) > max_abs) { max_abs = std::abs(x[i]); k = i; }
  }
  if (max_abs == 0) return std::nullopt;

  ExponentVector cand(n, 0);
  if (n == 1) {
    cand[0] = x[0] > 0 ? 1 : -1;
  } else {
    // row j of the first block: entry over columns i != k of x_i*[j==k] - x_k*[j==i]
    std::vector<ExponentVector> rows(n, ExponentVector(n - 1 + n, 0));
    for (int j = 0; j < n; ++j) {
      int col = 0;
      for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        std::int64_t entry = 0;
        if (j == k) entry += x[i];
        if (j == i) entry -= x[k];
        rows[j][col] = entry;
        ++col;
      }
      rows[j][n - 1 + j] = 1;
    }
    const LllResult red = lll_reduce(rows);
    for (int i = 0; i < n; ++i) cand[i] = red.rows[0][n - 1 + i];
  }

  if (is_zero_vector(cand)) return std::nullopt;
  cand = primitive(cand);

  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (int i = 0; i < n; ++i) {
    uu += u[i] * u[i];
    vv += static_cast<double>(cand[i]) * static_cast<double>(cand[i]);
    uv += u[i] * static_cast<double>(cand[i]);
  }
  if (uv < 0.0) {
    for (auto& c : cand) c = -c;
    uv = -uv;
  }
  const double cosine = uv / std::sqrt(uu * vv);
  if (!(cosine >= opt.min_cosine)) return std::nullopt;
  for (auto c : cand)
    if (std::abs(c) > opt.max_entry) return std::nullopt;
  return cand;
}

}  // namespace trop
