#pragma once

// Exact arithmetic in the group rings Z[t, 1/t], Z[s, 1/s, t, 1/t] and the
// order-two group algebra Z_2<t> = <1, t | t^2 = 1>.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace linkhom {

using Integer = boost::multiprecision::cpp_int;
using Exponent = std::int64_t;

inline Exponent add_exponents(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

inline Exponent negate_exponent(Exponent a) {
  Exponent r;
  if (__builtin_sub_overflow(Exponent{0}, a, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

inline Exponent abs_exponent(Exponent a) { return a < 0 ? negate_exponent(a) : a; }

inline bool is_odd(Exponent a) { return (a & 1) != 0; }
inline bool is_odd(const Integer& a) { return boost::multiprecision::bit_test(abs(a), 0); }

/// Exponent pair (k, l) of the monomial s^k t^l. Ordered lexicographically.
struct BiExponent {
  Exponent k = 0;
  Exponent l = 0;

  friend auto operator<=>(const BiExponent&, const BiExponent&) = default;
};

namespace detail {

template <typename Key, typename Compare = std::less<Key>>
void accumulate(std::map<Key, Integer, Compare>& terms, const Key& key, const Integer& a) {
  if (a == 0) return;
  auto [it, inserted] = terms.try_emplace(key, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) terms.erase(it);
  }
}

inline std::string exponent_factor(char var, Exponent e) {
  if (e == 0) return {};
  if (e == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(e);
}

// Renders a * monomial, where monomial is "" for the constant term.
inline std::string render_term(const Integer& a, const std::string& monomial) {
  if (monomial.empty()) return a.str();
  if (a == 1) return monomial;
  if (a == -1) return "-" + monomial;
  return a.str() + "*" + monomial;
}

}  // namespace detail

/// Element of Z[t, 1/t]: a finite sum of a * t^k with nonzero integer a.
class Laurent {
 public:
  using Terms = std::map<Exponent, Integer>;

  Laurent() = default;
  Laurent(int a) { detail::accumulate(terms_, Exponent{0}, Integer(a)); }  // NOLINT
  Laurent(const Integer& a) { detail::accumulate(terms_, Exponent{0}, a); }  // NOLINT

  static Laurent monomial(const Integer& a, Exponent k) {
    Laurent p;
    detail::accumulate(p.terms_, k, a);
    return p;
  }
  static Laurent t(Exponent k = 1) { return monomial(1, k); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(Exponent k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  std::optional<Exponent> min_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  std::optional<Exponent> max_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  Integer evaluate_at_one() const {
    Integer sum = 0;
    for (const auto& [k, a] : terms_) sum += a;
    return sum;
  }

  void add_term(const Integer& a, Exponent k) { detail::accumulate(terms_, k, a); }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [k, a] : o.terms_) detail::accumulate(terms_, k, a);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [k, a] : o.terms_) detail::accumulate(terms_, k, Integer(-a));
    return *this;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend Laurent operator+(Laurent x, const Laurent& y) { return x += y; }
  friend Laurent operator-(Laurent x, const Laurent& y) { return x -= y; }
  friend Laurent operator-(const Laurent& x) {
    Laurent r;
    for (const auto& [k, a] : x.terms_) r.terms_.emplace(k, -a);
    return r;
  }
  friend Laurent operator*(const Laurent& x, const Laurent& y) {
    Laurent r;
    for (const auto& [i, a] : x.terms_)
      for (const auto& [j, b] : y.terms_) detail::accumulate(r.terms_, add_exponents(i, j), Integer(a * b));
    return r;
  }
  friend bool operator==(const Laurent&, const Laurent&) = default;

 private:
  Terms terms_;
};

/// Element of Z[s, 1/s, t, 1/t] = Z[pi_1 x pi_1] for pi_1 infinite cyclic.
/// Terms iterate in lexicographic (k, l) order.
class BiLaurent {
 public:
  using Terms = std::map<BiExponent, Integer>;

  BiLaurent() = default;

  static BiLaurent monomial(const Integer& a, Exponent k, Exponent l) {
    BiLaurent p;
    detail::accumulate(p.terms_, BiExponent{k, l}, a);
    return p;
  }
  static BiLaurent constant(const Integer& a) { return monomial(a, 0, 0); }

  /// s^k * g(t).
  static BiLaurent from_laurent(const Laurent& g, Exponent k = 0) {
    BiLaurent p;
    for (const auto& [l, a] : g.terms()) p.terms_.emplace(BiExponent{k, l}, a);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(Exponent k, Exponent l) const {
    auto it = terms_.find({k, l});
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Largest |k| or |l| over the support; 0 for the zero element.
  Exponent max_abs_exponent() const {
    Exponent m = 0;
    for (const auto& [e, a] : terms_) m = std::max({m, abs_exponent(e.k), abs_exponent(e.l)});
    return m;
  }

  void add_term(const Integer& a, Exponent k, Exponent l) { detail::accumulate(terms_, BiExponent{k, l}, a); }

  BiLaurent& operator+=(const BiLaurent& o) {
    for (const auto& [e, a] : o.terms_) detail::accumulate(terms_, e, a);
    return *this;
  }
  BiLaurent& operator-=(const BiLaurent& o) {
    for (const auto& [e, a] : o.terms_) detail::accumulate(terms_, e, Integer(-a));
    return *this;
  }
  BiLaurent& operator*=(const BiLaurent& o) { return *this = *this * o; }

  friend BiLaurent operator+(BiLaurent x, const BiLaurent& y) { return x += y; }
  friend BiLaurent operator-(BiLaurent x, const BiLaurent& y) { return x -= y; }
  friend BiLaurent operator-(const BiLaurent& x) {
    BiLaurent r;
    for (const auto& [e, a] : x.terms_) r.terms_.emplace(e, -a);
    return r;
  }
  friend BiLaurent operator*(const BiLaurent& x, const BiLaurent& y) {
    BiLaurent r;
    for (const auto& [e, a] : x.terms_)
      for (const auto& [f, b] : y.terms_)
        detail::accumulate(r.terms_, BiExponent{add_exponents(e.k, f.k), add_exponents(e.l, f.l)}, Integer(a * b));
    return r;
  }
  friend BiLaurent operator*(const Integer& c, const BiLaurent& x) {
    BiLaurent r;
    if (c == 0) return r;
    for (const auto& [e, a] : x.terms_) r.terms_.emplace(e, c * a);
    return r;
  }
  friend bool operator==(const BiLaurent&, const BiLaurent&) = default;

 private:
  Terms terms_;
};

/// a * s^k * t^l; the zero element when a = 0.
inline BiLaurent bilaurent_monomial(const Integer& a, Exponent k, Exponent l) { return BiLaurent::monomial(a, k, l); }

/// Element a + b*t of Z_2<t>, where t*t = 1.
struct C2Algebra {
  bool one = false;
  bool t = false;

  static constexpr C2Algebra zero() { return {false, false}; }
  static constexpr C2Algebra unit() { return {true, false}; }
  static constexpr C2Algebra generator() { return {false, true}; }

  bool is_zero() const { return !one && !t; }

  C2Algebra& operator+=(C2Algebra o) {
    one ^= o.one;
    t ^= o.t;
    return *this;
  }
  friend C2Algebra operator+(C2Algebra x, C2Algebra y) { return x += y; }
  friend C2Algebra operator*(C2Algebra x, C2Algebra y) {
    // (a + bt)(c + dt) = (ac + bd) + (ad + bc)t
    return {static_cast<bool>((x.one && y.one) ^ (x.t && y.t)), static_cast<bool>((x.one && y.t) ^ (x.t && y.one))};
  }
  friend bool operator==(C2Algebra, C2Algebra) = default;
};

inline C2Algebra c2_mul(C2Algebra x, C2Algebra y) { return x * y; }

// ---------------------------------------------------------------------------
// Text rendering. Polynomials print their terms joined by " + " from the
// highest to the lowest exponent, e.g. "t^2 + -4*t + 3" or "s*t^2 + -2*s + 1";
// zero exponents are omitted and the zero element prints as "0". C2Algebra
// prints as "0", "1", "t" or "1 + t".

inline std::string to_string(const Laurent& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += detail::render_term(it->second, detail::exponent_factor('t', it->first));
  }
  return out;
}

inline std::string to_string(const BiLaurent& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::string s = detail::exponent_factor('s', it->first.k);
    std::string t = detail::exponent_factor('t', it->first.l);
    std::string mono = s.empty() ? t : (t.empty() ? s : s + "*" + t);
    if (!out.empty()) out += " + ";
    out += detail::render_term(it->second, mono);
  }
  return out;
}

inline std::string to_string(C2Algebra x) {
  if (x.one && x.t) return "1 + t";
  if (x.one) return "1";
  if (x.t) return "t";
  return "0";
}

inline std::ostream& operator<<(std::ostream& os, const Laurent& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const BiLaurent& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, C2Algebra x) { return os << to_string(x); }

// ---------------------------------------------------------------------------
// Parsing. Accepts the rendered form plus ordinary shorthand: terms in any
// order, binary '-', repeated monomials (summed) and free whitespace.

class PolynomialSyntaxError : public std::invalid_argument {
 public:
  PolynomialSyntaxError(const std::string& msg, std::size_t pos)
      : std::invalid_argument("at offset " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class TermReader {
 public:
  TermReader(std::string_view text, bool allow_s) : text_(text), allow_s_(allow_s) {}

  BiLaurent read() {
    BiLaurent result;
    skip_ws();
    if (at_end()) throw PolynomialSyntaxError("empty polynomial", pos_);
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
    }
    for (;;) {
      read_term(result, negate);
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw PolynomialSyntaxError(std::string("unexpected '") + c + "'", pos_);
      negate = c == '-';
      ++pos_;
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw PolynomialSyntaxError("expected digits", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Exponent read_exponent() {
    skip_ws();
    bool neg = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    std::string digits = read_digits();
    Integer v(digits);
    if (neg) v = -v;
    if (v > std::numeric_limits<Exponent>::max() || v < std::numeric_limits<Exponent>::min())
      throw PolynomialSyntaxError("exponent out of range", start);
    return static_cast<Exponent>(v);
  }

  void read_term(BiLaurent& out, bool negate) {
    skip_ws();
    Integer coeff = 1;
    bool any = false;
    if (!at_end() && peek() == '-') {  // "+ -4*t" form
      negate = !negate;
      ++pos_;
      skip_ws();
    }
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = Integer(read_digits());
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || (peek() != 's' && peek() != 't')) throw PolynomialSyntaxError("expected variable", pos_);
      }
    }
    Exponent k = 0, l = 0;
    while (!at_end() && (peek() == 's' || peek() == 't')) {
      char var = peek();
      if (var == 's' && !allow_s_) throw PolynomialSyntaxError("unexpected variable 's'", pos_);
      ++pos_;
      skip_ws();
      Exponent e = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        e = read_exponent();
      }
      if (var == 's')
        k = add_exponents(k, e);
      else
        l = add_exponents(l, e);
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || (peek() != 's' && peek() != 't')) throw PolynomialSyntaxError("expected variable", pos_);
      }
    }
    if (!any) throw PolynomialSyntaxError("expected term", pos_);
    out.add_term(negate ? Integer(-coeff) : coeff, k, l);
  }

  std::string_view text_;
  bool allow_s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline BiLaurent parse_bilaurent(std::string_view text) { return detail::TermReader(text, true).read(); }

inline Laurent parse_laurent(std::string_view text) {
  BiLaurent b = detail::TermReader(text, false).read();
  Laurent p;
  for (const auto& [e, a] : b.terms()) p.add_term(a, e.l);
  return p;
}

inline C2Algebra parse_c2(std::string_view text) {
  Laurent p = parse_laurent(text);
  C2Algebra x;
  for (const auto& [k, a] : p.terms()) {
    if ((k != 0 && k != 1) || (a != 1 && a != -1 && a != 0))
      throw PolynomialSyntaxError("not an element of Z_2<t>: " + std::string(text), 0);
    (k == 0 ? x.one : x.t) ^= true;
  }
  return x;
}

}  // namespace linkhom
