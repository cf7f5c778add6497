#pragma once

// The Wall pairing lambda(F, A) of the sphere F with classes A in pi_2, as
// computed from recorded intersection data, and the relator data it feeds.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkhom/group_ring.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/quotient.hpp"

namespace linkhom {

struct PairingPoint {
  Sign sign = Sign::positive;
  Exponent exponent = 0;

  friend bool operator==(const PairingPoint&, const PairingPoint&) = default;
};

/// Intersections of F with the disc D_i of a basis sphere, plus the shift
/// r_x' = t^eps r_x relating each point to its partner on the parallel disc.
struct PairingData {
  std::vector<PairingPoint> points;
  Sign eps = Sign::positive;

  friend bool operator==(const PairingData&, const PairingData&) = default;
};

struct SphereClass {
  std::string id;
  PairingData pairing;
  bool w2 = false;

  friend bool operator==(const SphereClass&, const SphereClass&) = default;
};

/// Contribution of D_i: sum of sign * t^exponent.
inline Laurent lambda_disc(const PairingData& p) {
  Laurent sum;
  for (const auto& x : p.points) sum.add_term(to_int(x.sign), x.exponent);
  return sum;
}

/// lambda(F, A) = (1 - t^eps) * lambda_disc. Its Phi image is
/// (1 + t) * Phi(lambda_disc).
inline Laurent lambda_sphere(const SphereClass& s) {
  return (Laurent(1) - Laurent::t(to_int(s.pairing.eps))) * lambda_disc(s.pairing);
}

inline C2Algebra lambda_tilde(const SphereClass& s) { return phi_laurent(lambda_sphere(s)); }

/// s^k lambda(F, A) - w2(A) s^k for every sphere and |k| <= window, zeros dropped.
inline std::vector<BiLaurent> relation4_instances(std::span<const SphereClass> spheres, Exponent window) {
  std::vector<BiLaurent> out;
  for (const auto& s : spheres) {
    Relation4Datum d{lambda_sphere(s), s.w2};
    for (Exponent k = -window; k <= window; ++k) {
      BiLaurent r = RelatorInstance::r4(k, d).value();
      if (!r.is_zero()) out.push_back(std::move(r));
    }
  }
  return out;
}

/// sum of g_i(t) * lambda(F, A_i).
inline Laurent lambda_linear_combination(std::span<const Laurent> coeffs, std::span<const SphereClass> spheres) {
  if (coeffs.size() != spheres.size())
    throw std::invalid_argument("lambda_linear_combination: " + std::to_string(coeffs.size()) +
                                " coefficients for " + std::to_string(spheres.size()) + " spheres");
  Laurent sum;
  for (std::size_t i = 0; i < coeffs.size(); ++i) sum += coeffs[i] * lambda_sphere(spheres[i]);
  return sum;
}

/// R4 data for the classes t^j A_i with |j| <= shift_bound. These generate
/// pi_2 as an abelian group when the A_i form a Z[t^{+-1}]-basis. Duplicate
/// pairs are listed once.
inline std::vector<Relation4Datum> relation4_data(std::span<const SphereClass> spheres, Exponent shift_bound) {
  std::vector<Relation4Datum> out;
  for (const auto& s : spheres) {
    Laurent base = lambda_sphere(s);
    for (Exponent j = -shift_bound; j <= shift_bound; ++j) {
      Relation4Datum d{Laurent::t(j) * base, s.w2};
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace linkhom
