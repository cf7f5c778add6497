#pragma once

// Cellular chain complexes of a handlebody with one 0-handle, one 1-handle
// and n 2-handles whose fundamental group is infinite cyclic:
//
//   0 -> Z[t^{+-1}]^n --d2--> Z[t^{+-1}] --d1--> Z[t^{+-1}] -> 0
//
// Only this shape is supported. Homology over Z[t^{+-1}] in general (not a
// principal ideal domain) is rejected rather than approximated.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "linkhom/group_ring.hpp"

namespace linkhom {

class UnsupportedComplex : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct HandleComplex {
  std::size_t n = 0;
  std::vector<Laurent> d2;  // 1 x n, entry i is the image of the i-th 2-cell
  Laurent d1;               // 1 x 1

  bool is_complex() const {
    for (const auto& e : d2)
      if (!(d1 * e).is_zero()) return false;
    return true;
  }
};

/// The universal-cover complex: d1 = t - 1. Since t - 1 is a nonzerodivisor,
/// d1 * d2 = 0 forces d2 = 0.
inline HandleComplex build_universal_cover_complex(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("number of 2-handles must be nonnegative");
  HandleComplex c;
  c.n = static_cast<std::size_t>(n);
  c.d2.assign(c.n, Laurent{});
  c.d1 = Laurent::t() - Laurent(1);
  return c;
}

/// Augmentation t -> 1: the cellular complex of the handlebody itself.
inline HandleComplex augment(const HandleComplex& c) {
  HandleComplex z;
  z.n = c.n;
  for (const auto& e : c.d2) z.d2.emplace_back(e.evaluate_at_one());
  z.d1 = Laurent(c.d1.evaluate_at_one());
  return z;
}

/// Free rank of H_2 = ker d2 over Z[t^{+-1}].
inline std::size_t h2_rank(const HandleComplex& c) {
  if (c.d2.size() != c.n) throw std::invalid_argument("d2 must have one column per 2-handle");
  for (const auto& e : c.d2)
    if (!e.is_zero()) throw UnsupportedComplex("h2_rank supports only complexes with d2 = 0");
  return c.n;
}

/// Rank of H_2 with integer coefficients, read off the augmented complex.
inline std::size_t integral_h2_rank(std::int64_t n) {
  HandleComplex z = augment(build_universal_cover_complex(n));
  // A 1 x n integer matrix has rank 1 unless it vanishes.
  std::size_t rank_d2 = 0;
  for (const auto& e : z.d2)
    if (!e.is_zero()) rank_d2 = 1;
  return z.n - rank_d2;
}

/// Whether (t - 1) p != 0. The lowest term of (t - 1) p is -a t^m where a t^m
/// is the lowest term of p, so the product vanishes only for p = 0.
inline bool t_minus_one_times_nonzero(const Laurent& p) {
  if (p.is_zero()) return false;
  Exponent m = *p.min_degree();
  return p.coefficient(m) != 0;
}

/// d1 is injective: Z[t^{+-1}] is an integral domain and d1 is a nonzero scalar.
inline bool check_injective_d1(const HandleComplex& c) { return !c.d1.is_zero(); }

inline bool check_injective_d1() {
  HandleComplex c = build_universal_cover_complex(0);
  return c.d1 == Laurent::t() - Laurent(1) && check_injective_d1(c);
}

}  // namespace linkhom
