#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "linkhom/model_io.hpp"
#include "linkhom/quotient.hpp"
#include "linkhom/verify.hpp"
#include "linkhom/wall.hpp"

using namespace linkhom;

namespace {

QuotientContext kirk_context(Exponent window) {
  return {relation4_data(kirk_example().spheres, window), window};
}

bool certified_equal(const BiLaurent& x, const BiLaurent& y, const QuotientContext& ctx) {
  EqualityCertificate c = are_equal_mod_R(x, y, ctx);
  return c.is_equal() && replay(c, x, y, ctx);
}

}  // namespace

TEST(Relators, Values) {
  EXPECT_EQ(RelatorInstance::r1(3).value(), parse_bilaurent("s^3*t^3 - s^3"));
  EXPECT_EQ(RelatorInstance::r2(2, 5).value(), parse_bilaurent("s^2*t^5 + s^-2*t^3"));
  EXPECT_EQ(RelatorInstance::r3(1, -1).value(), parse_bilaurent("s*t^-1 + s^-1*t"));
  EXPECT_TRUE(RelatorInstance::r1(0).value().is_zero());
  const Relation4Datum d{Laurent(1) - Laurent::t(2), true};
  EXPECT_EQ(RelatorInstance::r4(-1, d).value(), parse_bilaurent("-s^-1*t^2"));
}

TEST(Relators, EnumerationCountsAndOrder) {
  auto inst = enumerate_relator_instances({}, 2);
  // R1 drops k = 0; R2 and R3 never vanish.
  EXPECT_EQ(inst.size(), 4u + 25u + 25u);
  EXPECT_EQ(inst.front(), RelatorInstance::r1(-2));
  EXPECT_EQ(inst.back(), RelatorInstance::r3(2, 2));
  EXPECT_THROW(enumerate_relator_instances({}, -1), std::invalid_argument);
  EXPECT_THROW(enumerate_relators(QuotientContext{}), std::invalid_argument);
  EXPECT_EQ(enumerate_relators(QuotientContext{{}, 2}).size(), inst.size());
}

TEST(Relators, PhiVanishesOnAllFamilies) {
  for (const auto& r : enumerate_relator_instances(relation4_data(kirk_example().spheres, 6), 12))
    EXPECT_TRUE(phi(r.value()).is_zero()) << to_string(r.value());
  EXPECT_TRUE(phi_kills_relations(QuotientContext{}));
  EXPECT_TRUE(phi_kills_relations(kirk_context(3)));
  EXPECT_FALSE(phi_kills_relations(QuotientContext{{{Laurent(1), false}}, std::nullopt}));
}

TEST(Quotient, SingleRelatorIdentities) {
  const QuotientContext ctx{{}, 10};
  for (Exponent k = -10; k <= 10; ++k)
    EXPECT_TRUE(certified_equal(bilaurent_monomial(1, k, k), bilaurent_monomial(1, k, 0), ctx)) << k;
  for (Exponent l = -10; l <= 10; ++l) {
    EqualityCertificate c = is_zero_mod_R(bilaurent_monomial(2, 0, l), ctx);
    ASSERT_TRUE(c.is_equal());
    EXPECT_EQ(serialize_certificate(c), "EQUAL\n1 R2 k=0 l=" + std::to_string(l) + "\n");
  }
  EqualityCertificate c = is_zero_mod_R(parse_bilaurent("2*s*t"), ctx);
  EXPECT_TRUE(c.is_equal());
  EXPECT_TRUE(replay(c, parse_bilaurent("2*s*t"), {}, ctx));
  EXPECT_EQ(serialize_certificate(are_equal_mod_R(parse_bilaurent("s^3*t^3"), parse_bilaurent("s^3"), ctx)),
            "EQUAL\n1 R1 k=3\n");
}

TEST(Quotient, TrivialEquality) {
  BiLaurent x = parse_bilaurent("s^2 - 7*t");
  EqualityCertificate c = are_equal_mod_R(x, x, QuotientContext{});
  ASSERT_TRUE(c.is_equal());
  EXPECT_TRUE(c.equal().combination.empty());
  EXPECT_TRUE(replay(c, x, x, QuotientContext{}));
}

TEST(Quotient, KirkTauIsNonzero) {
  const QuotientContext ctx = kirk_context(10);
  const BiLaurent t = tau(kirk_example().disks);
  EqualityCertificate c = is_zero_mod_R(t, ctx);
  ASSERT_TRUE(c.is_distinct());
  EXPECT_EQ(c.distinct().witness, kPhiWitness);
  EXPECT_TRUE(replay(c, t, {}, ctx));
  EXPECT_EQ(serialize_certificate(c), "DISTINCT via=Phi lhs=1 + t rhs=0\n");
}

// Without R4 the orbit of (4, 2) under (k, l) -> (l, k), (k, l) -> (-k, l - k)
// is {(4,2), (2,4), (-4,-2), (-2,2), (-2,-4), (2,-2)}. The functional psi
// below vanishes on every relator but not on s^2 t^4 - s^4 t^2, so the
// difference is not in the relation subgroup.
TEST(Quotient, OrbitCycleIsNotARelationWithoutR4) {
  const std::map<BiExponent, int> psi = {{{4, 2}, 1},  {{-2, 2}, 1},  {{-2, -4}, 1},
                                         {{2, 4}, -1}, {{-4, -2}, -1}, {{2, -2}, -1}};
  auto apply = [&psi](const BiLaurent& p) {
    Integer v = 0;
    for (const auto& [e, a] : p.terms())
      if (auto it = psi.find(e); it != psi.end()) v += a * it->second;
    return v;
  };
  const BiLaurent d = parse_bilaurent("s^2*t^4 - s^4*t^2");
  ASSERT_EQ(apply(d), -2);
  for (const auto& r : enumerate_relators(QuotientContext{{}, 12})) ASSERT_EQ(apply(r), 0) << to_string(r);

  // Exhaustive search over the six relators supported on the orbit agrees.
  std::vector<BiLaurent> local;
  for (const auto& r : enumerate_relators(QuotientContext{{}, 4})) {
    bool inside = true;
    for (const auto& [e, a] : r.terms()) inside = inside && psi.count(e);
    if (inside && std::find(local.begin(), local.end(), r) == local.end()) local.push_back(r);
  }
  ASSERT_EQ(local.size(), 6u);
  bool found = false;
  for (int code = 0; code < 7 * 7 * 7 * 7 * 7 * 7 && !found; ++code) {
    BiLaurent sum;
    int c = code;
    for (const auto& r : local) {
      sum += Integer(c % 7 - 3) * r;
      c /= 7;
    }
    found = sum == d;
  }
  EXPECT_FALSE(found);

  EqualityCertificate c = is_zero_mod_R(d, QuotientContext{});
  EXPECT_TRUE(c.is_unknown());
  EXPECT_EQ(c.unknown().window, 4 + kDefaultWindowMargin);
}

TEST(Quotient, OrbitCycleBecomesARelationWithKirkR4) {
  const QuotientContext ctx = kirk_context(10);
  const BiLaurent d = parse_bilaurent("s^2*t^4 - s^4*t^2");
  EqualityCertificate c = is_zero_mod_R(d, ctx);
  ASSERT_TRUE(c.is_equal());
  EXPECT_TRUE(replay(c, d, {}, ctx));
  EXPECT_EQ(combination_value(c.equal()), d);
}

TEST(Quotient, DistinctViaPhi) {
  const QuotientContext ctx{{}, 6};
  const BiLaurent x = parse_bilaurent("s"), y = parse_bilaurent("1");
  EqualityCertificate c = are_equal_mod_R(x, y, ctx);
  ASSERT_TRUE(c.is_distinct());
  EXPECT_EQ(c.distinct().lhs, C2Algebra::generator());
  EXPECT_EQ(c.distinct().rhs, C2Algebra::unit());
  EXPECT_TRUE(replay(c, x, y, ctx));
  EXPECT_FALSE(replay(c, y, x, ctx));
}

TEST(Quotient, R4DataThatBreaksPhiDisablesTheWitness) {
  const QuotientContext ctx{{{Laurent(1), false}}, 3};
  const BiLaurent one = parse_bilaurent("1");
  EqualityCertificate c = is_zero_mod_R(one, ctx);
  ASSERT_TRUE(c.is_equal());
  EXPECT_TRUE(replay(c, one, {}, ctx));
  // The same certificate is not valid in a context without that datum.
  EXPECT_FALSE(replay(c, one, {}, QuotientContext{{}, 3}));
  EqualityCertificate forged{EqualityCertificate::Distinct{kPhiWitness, C2Algebra::unit(), C2Algebra::zero()}};
  EXPECT_FALSE(replay(forged, one, {}, ctx));
}

TEST(Quotient, WindowTooSmall) {
  const BiLaurent x = parse_bilaurent("s^7");
  EXPECT_THROW(is_zero_mod_R(x, QuotientContext{{}, 6}), WindowTooSmall);
  try {
    is_zero_mod_R(x, QuotientContext{{}, 3});
  } catch (const WindowTooSmall& e) {
    EXPECT_EQ(e.window(), 3);
    EXPECT_EQ(e.needed(), 7);
  }
  EXPECT_THROW(is_zero_mod_R(x, QuotientContext{{}, -1}), std::invalid_argument);
}

TEST(Quotient, RandomRelationsAreFoundAndReplay) {
  std::mt19937_64 rng(77);
  const QuotientContext ctx = kirk_context(3);
  const auto inst = enumerate_relator_instances(ctx.r4_data, 3);
  std::uniform_int_distribution<std::size_t> pick(0, inst.size() - 1);
  std::uniform_int_distribution<int> mult(-3, 3), count(1, 4);
  const QuotientContext wide{ctx.r4_data, 6};
  for (int i = 0; i < 200; ++i) {
    BiLaurent x = random_bilaurent(rng, 3, 4, 4), y = x;
    for (int n = count(rng); n > 0; --n) y += Integer(mult(rng)) * inst[pick(rng)].value();
    EXPECT_TRUE(certified_equal(y, x, wide)) << to_string(y) << " vs " << to_string(x);
  }
}

TEST(Quotient, EveryAnswerReplays) {
  std::mt19937_64 rng(78);
  const QuotientContext ctx = kirk_context(4);
  int equal = 0, distinct = 0, unknown = 0;
  for (int i = 0; i < 300; ++i) {
    BiLaurent x = random_bilaurent(rng, 2, 2, 2), y = random_bilaurent(rng, 2, 2, 2);
    EqualityCertificate c = are_equal_mod_R(x, y, ctx);
    EXPECT_TRUE(replay(c, x, y, ctx));
    if (c.is_equal()) {
      EXPECT_EQ(phi(x), phi(y));
    }
    equal += c.is_equal();
    distinct += c.is_distinct();
    unknown += c.is_unknown();
  }
  EXPECT_GT(equal, 0);
  EXPECT_GT(distinct, 0);
}

TEST(Certificate, TextRoundTrip) {
  const QuotientContext ctx = kirk_context(6);
  const std::vector<std::pair<BiLaurent, BiLaurent>> cases = {
      {parse_bilaurent("s^2*t^4"), parse_bilaurent("s^4*t^2")},
      {parse_bilaurent("s^3*t^3"), parse_bilaurent("s^3")},
      {tau(kirk_example().disks), {}},
      {parse_bilaurent("t^2"), parse_bilaurent("1")},
  };
  for (const auto& [x, y] : cases) {
    EqualityCertificate c = are_equal_mod_R(x, y, ctx);
    EqualityCertificate back = parse_certificate(serialize_certificate(c));
    EXPECT_EQ(back, c);
    EXPECT_TRUE(replay(back, x, y, ctx));
  }
  EqualityCertificate u{EqualityCertificate::Unknown{9}};
  EXPECT_EQ(parse_certificate(serialize_certificate(u)), u);
  const Relation4Datum w{Laurent(1) - Laurent::t(2), true};
  EqualityCertificate e{EqualityCertificate::Equal{{{RelatorInstance::r4(-2, w), Integer(-5)}}}};
  EXPECT_EQ(serialize_certificate(e), "EQUAL\n-5 R4 k=-2 w2=1 g=-t^2 + 1\n");
  EXPECT_EQ(parse_certificate(serialize_certificate(e)), e);
}

TEST(Certificate, RejectsMalformedText) {
  EXPECT_THROW(parse_certificate(""), CertificateSyntaxError);
  EXPECT_THROW(parse_certificate("MAYBE\n"), CertificateSyntaxError);
  EXPECT_THROW(parse_certificate("EQUAL\n1 R7 k=0\n"), CertificateSyntaxError);
  EXPECT_THROW(parse_certificate("EQUAL\nx R1 k=0\n"), CertificateSyntaxError);
  EXPECT_THROW(parse_certificate("UNKNOWN window=\n"), CertificateSyntaxError);
}

TEST(Lattice, ExtendedGcd) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> v(-100000, 100000);
  for (int i = 0; i < 1000; ++i) {
    Integer a = v(rng), b = v(rng), g, x, y;
    detail::extended_gcd(a, b, g, x, y);
    EXPECT_EQ(x * a + y * b, g);
    EXPECT_EQ(g, boost::multiprecision::gcd(a, b));
  }
}

TEST(Lattice, MembershipInSmallLattice) {
  // Lattice spanned by (2, 0) and (1, 3) in the coordinates (x, y).
  auto row = [](long x, long y) {
    detail::SparseRow r;
    if (x) r[{1, 0}] = x;
    if (y) r[{0, 0}] = y;
    return r;
  };
  detail::EchelonLattice lat;
  lat.insert(row(2, 0), {{0, 1}});
  lat.insert(row(1, 3), {{1, 1}});
  EXPECT_EQ(lat.rank(), 2u);
  for (long x = -6; x <= 6; ++x)
    for (long y = -6; y <= 6; ++y) {
      // (x, y) is a member iff y = 3m and x - m is even.
      bool member = y % 3 == 0 && (x - y / 3) % 2 == 0;
      auto combo = lat.solve(row(x, y));
      ASSERT_EQ(combo.has_value(), member) << x << "," << y;
      if (combo) {
        Integer cx = 0, cy = 0;
        for (const auto& [i, m] : *combo) {
          cx += m * (i == 0 ? 2 : 1);
          cy += m * (i == 0 ? 0 : 3);
        }
        EXPECT_EQ(cx, x);
        EXPECT_EQ(cy, y);
      }
    }
}
