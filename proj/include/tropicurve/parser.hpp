#pragma once

// Text format for polynomial systems.  First nonempty line declares the
// ring ("ring x y z"), each following nonempty line is one polynomial.
// '#' starts a comment.  Coefficients are reals or complex literals of the
// form (a+bi); exponents are integers and may be negative.  Adjacent
// factors multiply, so 3*x*y and 3x y mean the same thing.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropicurve/poly.hpp"

namespace trop {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, int lineno,
             const std::map<std::string, int>& var_index, int num_vars)
      : s_(text), lineno_(lineno), vars_(var_index), num_vars_(num_vars) {}

  LaurentPolynomial parse() {
    LaurentPolynomial p = parse_expr();
    skip_ws();
    if (!eof()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(lineno_, static_cast<int>(pos_) + 1, msg);
  }

  bool eof() const { return pos_ >= s_.size() || s_[pos_] == '#'; }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (eof() || s_[pos_] != c) return false;
    ++pos_;
    return true;
  }

  // expr := ['+'|'-'] term (('+'|'-') term)*
  LaurentPolynomial parse_expr() {
    LaurentPolynomial sum(num_vars_);
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    sum = sum.plus(parse_term().scaled(Complex{sign, 0.0}));
    for (;;) {
      skip_ws();
      if (accept('+')) sign = 1.0;
      else if (accept('-')) sign = -1.0;
      else break;
      sum = sum.plus(parse_term().scaled(Complex{sign, 0.0}));
    }
    return sum;
  }

  // term := factor (['*'] factor)*
  LaurentPolynomial parse_term() {
    LaurentPolynomial prod = parse_factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        prod = prod.times(parse_factor());
        continue;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '(') {
        prod = prod.times(parse_factor());
        continue;
      }
      break;
    }
    return prod;
  }

  // factor := base ('^' int)?
  LaurentPolynomial parse_factor() {
    LaurentPolynomial base = parse_base();
    skip_ws();
    if (!accept('^')) return base;
    const std::int64_t k = parse_int_exponent();
    return power(base, k);
  }

  LaurentPolynomial parse_base() {
    skip_ws();
    if (eof()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      LaurentPolynomial z;
      if (try_complex_literal(z)) return z;
      ++pos_;
      LaurentPolynomial inner = parse_expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const double v = parse_number();
      LaurentPolynomial p(num_vars_);
      p.add_term(ExponentVector(num_vars_, 0), Complex{v, 0.0});
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      const std::string name = parse_name();
      auto it = vars_.find(name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      LaurentPolynomial p(num_vars_);
      ExponentVector e(num_vars_, 0);
      e[it->second] = 1;
      p.add_term(e, Complex{1.0, 0.0});
      return p;
    }
    fail("expected a number, variable, or '('");
  }

  // (a+bi) with decimal a, b; backtracks and returns false when the text
  // after '(' is an ordinary subexpression
  bool try_complex_literal(LaurentPolynomial& out) {
    const std::size_t save = pos_;
    ++pos_;  // '('
    skip_ws();
    double re = 0.0, im = 0.0;
    double s1 = 1.0;
    if (accept('-')) s1 = -1.0;
    else accept('+');
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) { pos_ = save; return false; }
    re = s1 * parse_number();
    skip_ws();
    double s2;
    if (accept('+')) s2 = 1.0;
    else if (accept('-')) s2 = -1.0;
    else { pos_ = save; return false; }
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) { pos_ = save; return false; }
    im = s2 * parse_number();
    skip_ws();
    if (peek() != 'i') { pos_ = save; return false; }
    ++pos_;
    skip_ws();
    if (peek() != ')') { pos_ = save; return false; }
    ++pos_;
    LaurentPolynomial p(num_vars_);
    p.add_term(ExponentVector(num_vars_, 0), Complex{re, im});
    out = p;
    return true;
  }

  // unsigned decimal: digits [. digits] [e|E [+|-] digits]
  double parse_number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        pos_ = start;
        fail("malformed number");
      }
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        pos_ = mark;  // the 'e' was a variable, not an exponent marker
      } else {
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
      }
    }
    return std::stod(s_.substr(start, pos_ - start));
  }

  std::string parse_name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::int64_t parse_int_exponent() {
    skip_ws();
    bool neg = false;
    if (accept('-')) neg = true;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an integer exponent");
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  LaurentPolynomial power(const LaurentPolynomial& base, std::int64_t k) {
    if (k < 0) {
      if (base.term_count() != 1)
        fail("negative exponent requires a single-term base");
      const auto& [exp, coeff] = *base.terms().begin();
      LaurentPolynomial inv(num_vars_);
      ExponentVector e = exp;
      for (auto& v : e) v = -v;
      inv.add_term(e, 1.0 / coeff);
      return power(inv, -k);
    }
    LaurentPolynomial result(num_vars_);
    result.add_term(ExponentVector(num_vars_, 0), Complex{1.0, 0.0});
    LaurentPolynomial b = base;
    while (k > 0) {
      if (k & 1) result = result.times(b);
      b = b.times(b);
      k >>= 1;
    }
    return result;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int lineno_;
  const std::map<std::string, int>& vars_;
  int num_vars_;
};

inline std::string strip_comment(const std::string& line) {
  const auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

inline bool blank(const std::string& line) {
  for (char c : line)
    if (c != ' ' && c != '\t' && c != '\r') return false;
  return true;
}

}  // namespace detail

inline LaurentPolynomial parse_polynomial(const std::string& line,
                                          const std::vector<std::string>& names,
                                          int lineno = 1) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i)
    index[names[i]] = static_cast<int>(i);
  detail::PolyParser p(line, lineno, index, static_cast<int>(names.size()));
  return p.parse();
}

inline PolynomialSystem parse_system(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  PolynomialSystem sys;
  bool have_ring = false;
  std::map<std::string, int> index;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    if (detail::blank(line)) continue;
    if (!have_ring) {
      std::istringstream ls(line);
      std::string word;
      ls >> word;
      if (word != "ring")
        throw ParseError(lineno, 1, "expected a ring declaration");
      std::string name;
      while (ls >> name) {
        for (char c : name)
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw ParseError(lineno, 1, "invalid variable name '" + name + "'");
        if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
          throw ParseError(lineno, 1, "invalid variable name '" + name + "'");
        if (index.count(name))
          throw ParseError(lineno, 1, "duplicate variable '" + name + "'");
        index[name] = static_cast<int>(sys.var_names.size());
        sys.var_names.push_back(name);
      }
      if (sys.var_names.empty())
        throw ParseError(lineno, 1, "ring declares no variables");
      sys.num_vars = static_cast<int>(sys.var_names.size());
      have_ring = true;
      continue;
    }
    detail::PolyParser p(line, lineno, index, sys.num_vars);
    LaurentPolynomial poly = p.parse();
    if (poly.is_zero())
      throw ParseError(lineno, 1, "polynomial simplifies to zero");
    sys.polys.push_back(std::move(poly));
  }
  if (!have_ring) throw ParseError(lineno == 0 ? 1 : lineno, 1, "empty input");
  if (sys.polys.empty())
    throw ParseError(lineno, 1, "system contains no polynomials");
  return sys;
}

// "2,3", "(2, 3)", "[2 3]" and similar all describe the same vector
inline std::vector<std::int64_t> parse_int_vector(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',')
      cleaned.push_back(' ');
    else
      cleaned.push_back(c);
  }
  std::istringstream in(cleaned);
  std::vector<std::int64_t> v;
  std::int64_t x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw std::invalid_argument("malformed integer vector: " + text);
  if (v.empty()) throw std::invalid_argument("empty integer vector: " + text);
  return v;
}

// one matrix row per nonempty line, entries separated as in parse_int_vector
inline std::vector<std::vector<std::int64_t>> parse_int_matrix(
    const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<std::vector<std::int64_t>> rows;
  while (std::getline(in, raw)) {
    std::string line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;
    rows.push_back(parse_int_vector(line));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw std::invalid_argument("ragged matrix rows");
  return rows;
}

}  // namespace trop
