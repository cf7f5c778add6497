#include <gtest/gtest.h>

#include <random>

#include "linkhom/homology.hpp"
#include "linkhom/model_io.hpp"
#include "linkhom/wall.hpp"
#include "support.hpp"

using namespace linkhom;

TEST(Wall, KirkDiscLevelValues) {
  const auto spheres = kirk_example().spheres;
  ASSERT_EQ(spheres.size(), 5u);
  const Laurent one_plus_t = parse_laurent("1 + t");
  for (int i = 0; i < 4; ++i) EXPECT_EQ(lambda_disc(spheres[i].pairing), one_plus_t);
  EXPECT_EQ(lambda_disc(spheres[4].pairing), Laurent(2) * one_plus_t);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(phi_laurent(lambda_disc(spheres[i].pairing)), phi_laurent(one_plus_t));
}

TEST(Wall, KirkSpherePairingsVanish) {
  for (const auto& s : kirk_example().spheres) {
    EXPECT_TRUE(lambda_tilde(s).is_zero()) << s.id;
    // Phi of the sphere value factors through (1 + t) times the disc value.
    EXPECT_EQ(lambda_tilde(s), (C2Algebra::unit() + C2Algebra::generator()) * phi_laurent(lambda_disc(s.pairing)));
  }
  EXPECT_EQ(lambda_sphere(kirk_example().spheres[0]), parse_laurent("1 - t^2"));
}

TEST(Wall, TildeFactorsThroughOnePlusT) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    SphereClass s;
    s.pairing.eps = i % 2 ? Sign::positive : Sign::negative;
    const Laurent disc = linkhom::testing::random_laurent(rng, 4, 5, 3);
    for (const auto& [k, a] : disc.terms())
      for (int c = 0; c < (a < 0 ? -a : a); ++c)
        s.pairing.points.push_back({a < 0 ? Sign::negative : Sign::positive, k});
    const C2Algebra one_plus_t = C2Algebra::unit() + C2Algebra::generator();
    EXPECT_EQ(lambda_tilde(s), one_plus_t * phi_laurent(disc));
    EXPECT_EQ(lambda_tilde(s).is_zero(), phi_laurent(disc).one == phi_laurent(disc).t);
  }
}

TEST(Wall, LinearCombination) {
  const auto spheres = kirk_example().spheres;
  std::vector<Laurent> coeffs(5, Laurent{});
  coeffs[0] = Laurent::t(2);
  coeffs[4] = Laurent(-1);
  Laurent want = Laurent::t(2) * lambda_sphere(spheres[0]) - lambda_sphere(spheres[4]);
  EXPECT_EQ(lambda_linear_combination(coeffs, spheres), want);
  EXPECT_TRUE(phi_laurent(want).is_zero());
  coeffs.pop_back();
  EXPECT_THROW(lambda_linear_combination(coeffs, spheres), std::invalid_argument);
}

TEST(Wall, Relation4Data) {
  const auto spheres = kirk_example().spheres;
  // A1..A4 share one value, A5 has another: two distinct families per shift.
  EXPECT_EQ(relation4_data(spheres, 0).size(), 2u);
  EXPECT_EQ(relation4_data(spheres, 50).size(), 202u);
  for (const auto& d : relation4_data(spheres, 3)) EXPECT_FALSE(d.w2);
  EXPECT_EQ(relation4_instances(spheres, 1).size(), 15u);
  for (const auto& r : relation4_instances(spheres, 4)) EXPECT_TRUE(phi(r).is_zero());
  EXPECT_TRUE(relation4_data(std::vector<SphereClass>{}, 5).empty());
}

TEST(Homology, UniversalCoverComplex) {
  for (std::int64_t n = 0; n <= 20; ++n) {
    HandleComplex c = build_universal_cover_complex(n);
    EXPECT_TRUE(c.is_complex());
    EXPECT_EQ(c.d1, parse_laurent("t - 1"));
    EXPECT_EQ(h2_rank(c), static_cast<std::size_t>(n));
    EXPECT_EQ(integral_h2_rank(n), static_cast<std::size_t>(n));
  }
  EXPECT_THROW(build_universal_cover_complex(-1), std::invalid_argument);
}

TEST(Homology, RejectsOtherShapes) {
  HandleComplex c = build_universal_cover_complex(2);
  c.d2[1] = parse_laurent("t + 1");
  EXPECT_FALSE(c.is_complex());
  EXPECT_THROW(h2_rank(c), UnsupportedComplex);
  c.d2.pop_back();
  EXPECT_THROW(h2_rank(c), std::invalid_argument);
}

TEST(Homology, Augmentation) {
  HandleComplex z = augment(build_universal_cover_complex(3));
  EXPECT_TRUE(z.d1.is_zero());
  EXPECT_EQ(z.d2.size(), 3u);
}

TEST(Homology, TMinusOneIsANonzeroDivisor) {
  EXPECT_TRUE(check_injective_d1());
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    Laurent p = linkhom::testing::random_laurent(rng);
    bool nonzero = !((Laurent::t() - Laurent(1)) * p).is_zero();
    EXPECT_EQ(t_minus_one_times_nonzero(p), nonzero);
    EXPECT_EQ(nonzero, !p.is_zero());
  }
}
