#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "linkhom/group_ring.hpp"

namespace linkhom::testing {

using Rational = boost::multiprecision::cpp_rational;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string source_path(const std::string& rel) { return std::string(LINKHOM_SOURCE_DIR) + "/" + rel; }

inline Rational power(const Rational& x, Exponent e) {
  Rational r = 1, b = e < 0 ? Rational(1) / x : x;
  for (Exponent i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

// Evaluation homomorphisms, used as an oracle for ring arithmetic.
inline Rational eval(const Laurent& p, const Rational& t) {
  Rational sum = 0;
  for (const auto& [k, a] : p.terms()) sum += Rational(a) * power(t, k);
  return sum;
}

inline Rational eval(const BiLaurent& p, const Rational& s, const Rational& t) {
  Rational sum = 0;
  for (const auto& [e, a] : p.terms()) sum += Rational(a) * power(s, e.k) * power(t, e.l);
  return sum;
}

inline Laurent random_laurent(std::mt19937_64& rng, Exponent bound = 5, int max_terms = 6, int max_coeff = 9) {
  std::uniform_int_distribution<int> terms(0, max_terms), coeff(-max_coeff, max_coeff);
  std::uniform_int_distribution<Exponent> exp(-bound, bound);
  Laurent p;
  for (int n = terms(rng); n > 0; --n) p.add_term(coeff(rng), exp(rng));
  return p;
}

}  // namespace linkhom::testing
