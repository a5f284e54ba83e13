#pragma once

// Sparse Laurent polynomials with complex double coefficients.  Exponents
// are integer vectors of fixed length per ring and may be negative.  A ring
// optionally carries one distinguished path parameter t, identified by its
// variable index; everything else is an "x" variable.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropicurve/rng.hpp"

namespace trop {

using Complex = std::complex<double>;
using ExponentVector = std::vector<std::int64_t>;
using ComplexPoint = std::vector<Complex>;

// graded lexicographic: total degree first, then entry-wise lex
struct GrlexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    const std::int64_t da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const std::int64_t db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// integer power, exact for integer exponents; requires base != 0 when e < 0
inline Complex cpow_int(Complex base, std::int64_t e) {
  if (e < 0) {
    if (base == Complex{0.0, 0.0})
      throw std::domain_error("zero coordinate under negative exponent");
    base = 1.0 / base;
    e = -e;
  }
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

class LaurentPolynomial {
 public:
  using TermMap = std::map<ExponentVector, Complex, GrlexLess>;

  LaurentPolynomial() : num_vars_(0) {}
  explicit LaurentPolynomial(int num_vars, std::optional<int> t_index = {})
      : num_vars_(num_vars), t_index_(t_index) {}

  int num_vars() const { return num_vars_; }
  std::optional<int> t_index() const { return t_index_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // accumulates; drops the term when the coefficient cancels to exact zero
  void add_term(const ExponentVector& exp, Complex coeff) {
    if (static_cast<int>(exp.size()) != num_vars_)
      throw std::invalid_argument("exponent length mismatch");
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
      if (coeff != Complex{0.0, 0.0}) terms_.emplace(exp, coeff);
      return;
    }
    it->second += coeff;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }

  // term-by-term in graded-lex order; summation order is deterministic
  Complex evaluate(const ComplexPoint& p) const {
    if (static_cast<int>(p.size()) != num_vars_)
      throw std::invalid_argument("point length mismatch");
    Complex sum{0.0, 0.0};
    for (const auto& [exp, coeff] : terms_) {
      Complex mono = coeff;
      for (int i = 0; i < num_vars_; ++i)
        if (exp[i] != 0) mono *= cpow_int(p[i], exp[i]);
      sum += mono;
    }
    return sum;
  }

  // value together with the sum of term magnitudes, for relative residuals
  std::pair<Complex, double> evaluate_with_magnitude(const ComplexPoint& p) const {
    Complex sum{0.0, 0.0};
    double mag = 0.0;
    for (const auto& [exp, coeff] : terms_) {
      Complex mono = coeff;
      for (int i = 0; i < num_vars_; ++i)
        if (exp[i] != 0) mono *= cpow_int(p[i], exp[i]);
      sum += mono;
      mag += std::abs(mono);
    }
    return {sum, mag};
  }

  // formal partial derivative by variable `var`
  LaurentPolynomial partial(int var) const {
    LaurentPolynomial d(num_vars_, t_index_);
    for (const auto& [exp, coeff] : terms_) {
      if (exp[var] == 0) continue;
      ExponentVector e = exp;
      const double k = static_cast<double>(e[var]);
      e[var] -= 1;
      d.add_term(e, coeff * k);
    }
    return d;
  }

  LaurentPolynomial scaled(Complex c) const {
    LaurentPolynomial r(num_vars_, t_index_);
    if (c == Complex{0.0, 0.0}) return r;
    for (const auto& [exp, coeff] : terms_) r.add_term(exp, coeff * c);
    return r;
  }

  LaurentPolynomial plus(const LaurentPolynomial& other) const {
    LaurentPolynomial r = *this;
    for (const auto& [exp, coeff] : other.terms_) r.add_term(exp, coeff);
    return r;
  }

  LaurentPolynomial times(const LaurentPolynomial& other) const {
    LaurentPolynomial r(num_vars_, t_index_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : other.terms_) {
        ExponentVector e = ea;
        for (int i = 0; i < num_vars_; ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  // multiply by the monomial x^shift
  LaurentPolynomial shifted(const ExponentVector& shift) const {
    LaurentPolynomial r(num_vars_, t_index_);
    for (const auto& [exp, coeff] : terms_) {
      ExponentVector e = exp;
      for (int i = 0; i < num_vars_; ++i) e[i] += shift[i];
      r.add_term(e, coeff);
    }
    return r;
  }

  // minimal exponent of each variable over all terms (0 for the zero poly)
  ExponentVector min_exponents() const {
    ExponentVector m(num_vars_, 0);
    bool first = true;
    for (const auto& [exp, coeff] : terms_) {
      (void)coeff;
      if (first) { m = exp; first = false; continue; }
      for (int i = 0; i < num_vars_; ++i) m[i] = std::min(m[i], exp[i]);
    }
    return m;
  }

  // max total degree over terms; meaningful after denominator clearing
  std::int64_t total_degree() const {
    std::int64_t d = 0;
    for (const auto& [exp, coeff] : terms_) {
      (void)coeff;
      d = std::max(d, std::accumulate(exp.begin(), exp.end(), std::int64_t{0}));
    }
    return d;
  }

  // substitute a numeric value for t, dropping the t variable from the ring
  LaurentPolynomial substitute_t(Complex t_value) const {
    if (!t_index_) throw std::logic_error("substitute_t: ring has no t");
    const int ti = *t_index_;
    LaurentPolynomial r(num_vars_ - 1);
    for (const auto& [exp, coeff] : terms_) {
      ExponentVector e;
      e.reserve(num_vars_ - 1);
      for (int i = 0; i < num_vars_; ++i)
        if (i != ti) e.push_back(exp[i]);
      r.add_term(e, coeff * cpow_int(t_value, exp[ti]));
    }
    return r;
  }

  bool operator==(const LaurentPolynomial& other) const {
    return num_vars_ == other.num_vars_ && t_index_ == other.t_index_ &&
           terms_ == other.terms_;
  }

 private:
  TermMap terms_;
  int num_vars_;
  std::optional<int> t_index_;
};

struct PolynomialSystem {
  std::vector<LaurentPolynomial> polys;
  int num_vars = 0;                 // total, including t when present
  std::optional<int> t_index;
  std::vector<std::string> var_names;

  int size() const { return static_cast<int>(polys.size()); }
  // number of x variables (excludes t)
  int num_x_vars() const { return num_vars - (t_index ? 1 : 0); }
};

// Jacobian (|F| x n) of the system at p, formal partials evaluated exactly.
inline std::vector<std::vector<Complex>> jacobian(const PolynomialSystem& F,
                                                  const ComplexPoint& p) {
  std::vector<std::vector<Complex>> J(F.polys.size(),
                                      std::vector<Complex>(F.num_vars));
  for (std::size_t i = 0; i < F.polys.size(); ++i)
    for (int j = 0; j < F.num_vars; ++j)
      J[i][j] = F.polys[i].partial(j).evaluate(p);
  return J;
}

// Generic complex linear combinations with unit-modulus coefficients.
// Returns G unchanged when it already has the requested count.
inline PolynomialSystem square_up(const PolynomialSystem& G, int target_count,
                                  std::uint64_t rng_seed) {
  if (G.size() < target_count)
    throw std::invalid_argument("square_up: fewer generators than target");
  if (G.size() == target_count) return G;
  Rng rng(derive_seed(rng_seed, 0x5157u));
  PolynomialSystem F;
  F.num_vars = G.num_vars;
  F.t_index = G.t_index;
  F.var_names = G.var_names;
  for (int i = 0; i < target_count; ++i) {
    LaurentPolynomial combo(G.num_vars, G.t_index);
    for (const auto& g : G.polys)
      combo = combo.plus(g.scaled(rng.unit_complex()));
    F.polys.push_back(std::move(combo));
  }
  return F;
}

// Replaces x_i by t^{-w_i} x_i, then normalizes each polynomial by a t-power
// so its minimal t-exponent is zero (a unit multiple in the torus, where t
// never vanishes along tracked paths).  Adds the t variable when absent.
inline PolynomialSystem substitute_weight(const PolynomialSystem& F,
                                          const std::vector<std::int64_t>& w) {
  if (static_cast<int>(w.size()) != F.num_x_vars())
    throw std::invalid_argument("substitute_weight: weight length mismatch");
  PolynomialSystem R;
  const bool had_t = F.t_index.has_value();
  const int n = F.num_x_vars();
  R.num_vars = n + 1;
  R.t_index = n;  // x variables first, t last
  R.var_names = F.var_names;
  if (!had_t) R.var_names.push_back("t");

  const int old_t = had_t ? *F.t_index : -1;
  for (const auto& f : F.polys) {
    LaurentPolynomial g(n + 1, n);
    for (const auto& [exp, coeff] : f.terms()) {
      ExponentVector e(n + 1, 0);
      int xi = 0;
      std::int64_t texp = had_t ? exp[old_t] : 0;
      for (int i = 0; i < F.num_vars; ++i) {
        if (i == old_t) continue;
        e[xi] = exp[i];
        texp -= w[xi] * exp[i];
        ++xi;
      }
      e[n] = texp;
      g.add_term(e, coeff);
    }
    // normalize so the minimal t-exponent is zero
    std::int64_t tmin = 0;
    bool first = true;
    for (const auto& [exp, coeff] : g.terms()) {
      (void)coeff;
      if (first) { tmin = exp[n]; first = false; }
      else tmin = std::min(tmin, exp[n]);
    }
    if (tmin != 0) {
      ExponentVector shift(n + 1, 0);
      shift[n] = -tmin;
      g = g.shifted(shift);
    }
    R.polys.push_back(std::move(g));
  }
  return R;
}

// Terms of maximal degree with deg t = -1 and deg x_i = w_i, then t := 1.
// The t variable is dropped from the result's ring.
inline LaurentPolynomial t_initial_form(const LaurentPolynomial& f,
                                        const std::vector<std::int64_t>& w) {
  const bool has_t = f.t_index().has_value();
  const int ti = has_t ? *f.t_index() : -1;
  const int n = f.num_vars() - (has_t ? 1 : 0);
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("t_initial_form: weight length mismatch");

  std::int64_t best = 0;
  bool first = true;
  auto degree_of = [&](const ExponentVector& exp) {
    std::int64_t d = 0;
    int xi = 0;
    for (int i = 0; i < f.num_vars(); ++i) {
      if (i == ti) { d -= exp[i]; continue; }
      d += w[xi++] * exp[i];
    }
    return d;
  };
  for (const auto& [exp, coeff] : f.terms()) {
    (void)coeff;
    const std::int64_t d = degree_of(exp);
    if (first || d > best) { best = d; first = false; }
  }

  LaurentPolynomial r(n);
  for (const auto& [exp, coeff] : f.terms()) {
    if (degree_of(exp) != best) continue;
    ExponentVector e;
    e.reserve(n);
    for (int i = 0; i < f.num_vars(); ++i)
      if (i != ti) e.push_back(exp[i]);
    r.add_term(e, coeff);
  }
  return r;
}

// Multiplies each polynomial by the minimal monomial making all exponents
// nonnegative (t included when present).  Unit multiples in the torus.
inline PolynomialSystem clear_denominators(const PolynomialSystem& F) {
  PolynomialSystem R = F;
  for (auto& f : R.polys) {
    ExponentVector m = f.min_exponents();
    bool any = false;
    for (auto& v : m) {
      v = std::min<std::int64_t>(v, 0);
      if (v != 0) any = true;
      v = -v;
    }
    if (any) f = f.shifted(m);
  }
  return R;
}

// ---- printing --------------------------------------------------------------

inline std::string format_coefficient(Complex c) {
  std::ostringstream os;
  os.precision(17);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real();
    if (c.imag() >= 0.0) os << "+";
    os << c.imag() << "i)";
  }
  return os.str();
}

inline std::string to_string(const LaurentPolynomial& f,
                             const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending graded-lex reads most naturally
  const auto& terms = f.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [exp, coeff] = *it;
    Complex c = coeff;
    if (!first) {
      // negative reals print as subtraction so the output reparses
      if (c.imag() == 0.0 && c.real() < 0.0) {
        os << " - ";
        c = -c;
      } else {
        os << " + ";
      }
    }
    first = false;
    bool constant = std::all_of(exp.begin(), exp.end(),
                                [](std::int64_t e) { return e == 0; });
    os << format_coefficient(c);
    if (!constant) {
      for (std::size_t i = 0; i < exp.size(); ++i) {
        if (exp[i] == 0) continue;
        os << "*" << names[i];
        if (exp[i] != 1) os << "^" << exp[i];
      }
    }
  }
  return os.str();
}

inline std::string to_string(const PolynomialSystem& F) {
  std::ostringstream os;
  os << "ring";
  for (const auto& v : F.var_names) os << " " << v;
  os << "\n";
  for (const auto& f : F.polys) os << to_string(f, F.var_names) << "\n";
  return os.str();
}

}  // namespace trop
