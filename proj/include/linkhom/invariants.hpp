#pragma once

// Kirk's sigma invariant, Whitney-disk intersection sums, the
// Schneiderman-Teichner tau representative and its mod-two reduction Phi.

#include <span>
#include <string>
#include <vector>

#include "linkhom/group_ring.hpp"

namespace linkhom {

enum class Sign : int { negative = -1, positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign opposite(Sign s) { return s == Sign::positive ? Sign::negative : Sign::positive; }

/// A double point p with its sign and the exponent n(p) of the loop t^n(p)
/// that changes sheets at p.
struct DoublePoint {
  std::string id;
  Sign sign = Sign::positive;
  Exponent n = 0;

  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;
};

/// An interior intersection x of a Whitney disk with the sphere, weighted by
/// its secondary group element t^m.
struct DiskIntersection {
  Sign sign = Sign::positive;
  Exponent m = 0;

  friend bool operator==(const DiskIntersection&, const DiskIntersection&) = default;
};

struct WhitneyDiskData {
  std::string id;
  std::string pair;        // label of the paired double points
  Exponent primary = 0;    // primary group element t^primary
  bool framed = false;
  std::vector<DiskIntersection> intersections;

  friend bool operator==(const WhitneyDiskData&, const WhitneyDiskData&) = default;
};

struct SigmaPair {
  Laurent sigma_plus;
  Laurent sigma_minus;
};

/// Sum of sign(p) * (t^|n(p)| - 1) over the double points.
inline Laurent sigma(std::span<const DoublePoint> points) {
  Laurent sum;
  for (const auto& p : points) {
    Integer sign = to_int(p.sign);
    sum.add_term(sign, abs_exponent(p.n));
    sum.add_term(-sign, 0);
  }
  return sum;
}

inline SigmaPair sigma_pair(std::span<const DoublePoint> plus, std::span<const DoublePoint> minus) {
  return {sigma(plus), sigma(minus)};
}

/// "(sigma_+, sigma_-)".
inline std::string to_string(const SigmaPair& s) {
  return "(" + to_string(s.sigma_plus) + ", " + to_string(s.sigma_minus) + ")";
}

/// I(W) = sum of sign(x) * s^primary * t^m_x.
inline BiLaurent intersection_sum(const WhitneyDiskData& w) {
  BiLaurent sum;
  for (const auto& x : w.intersections) sum.add_term(to_int(x.sign), w.primary, x.m);
  return sum;
}

/// A representative of tau, i.e. the sum of I(W_i); meaningful modulo the
/// relation subgroup (see quotient.hpp) and only for framed disks.
inline BiLaurent tau(std::span<const WhitneyDiskData> disks) {
  BiLaurent sum;
  for (const auto& w : disks) sum += intersection_sum(w);
  return sum;
}

inline bool all_framed(std::span<const WhitneyDiskData> disks) {
  for (const auto& w : disks)
    if (!w.framed) return false;
  return true;
}

// Phi on a monomial a*s^k*t^l is a mod 2, placed on 1 when k and l are both
// even and on t otherwise. Equivalently the t-exponent is k + kl + l mod 2.

inline C2Algebra phi_monomial(const Integer& a, Exponent k, Exponent l) {
  if (!is_odd(a)) return C2Algebra::zero();
  return (!is_odd(k) && !is_odd(l)) ? C2Algebra::unit() : C2Algebra::generator();
}

inline C2Algebra phi_monomial_by_exponent(const Integer& a, Exponent k, Exponent l) {
  if (!is_odd(a)) return C2Algebra::zero();
  bool odd = is_odd(k) ^ (is_odd(k) && is_odd(l)) ^ is_odd(l);
  return odd ? C2Algebra::generator() : C2Algebra::unit();
}

/// Additive extension of the monomial rule. Not multiplicative: Phi(s)Phi(t) = 1
/// while Phi(st) = t.
inline C2Algebra phi(const BiLaurent& x) {
  C2Algebra r;
  for (const auto& [e, a] : x.terms()) r += phi_monomial(a, e.k, e.l);
  return r;
}

/// a*t^k goes to (a mod 2) * t^(k mod 2).
inline C2Algebra phi_laurent(const Laurent& x) {
  C2Algebra r;
  for (const auto& [k, a] : x.terms()) r += phi_monomial(a, 0, k);
  return r;
}

/// Coefficient of t: 1 -> 0, t -> 1.
inline bool varphi(C2Algebra x) { return x.t; }

/// Li's omega_+ written as varphi(Phi(tau)).
inline bool omega_plus(std::span<const WhitneyDiskData> disks) { return varphi(phi(tau(disks))); }

}  // namespace linkhom
