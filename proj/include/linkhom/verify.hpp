#pragma once

// The reproducibility checks for Kirk's link map, run against any document
// so that damaged datasets are caught.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linkhom/group_ring.hpp"
#include "linkhom/homology.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/model_io.hpp"
#include "linkhom/quotient.hpp"
#include "linkhom/wall.hpp"

namespace linkhom {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  Exponent quotient_window = 10;
  Exponent relation_kmax = 50;
  std::size_t random_documents = 100;
  std::size_t property_trials = 1000;
  std::optional<std::string> golden_text;  // canonical Kirk file, compared byte for byte
};

/// A random well-formed document: every pair names dp+ points, every disk a pair.
inline LinkMapDocument random_document(std::mt19937_64& rng) {
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto any_sign = [&] { return uniform(0, 1) ? Sign::positive : Sign::negative; };
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.";

  LinkMapDocument doc;
  auto word = [&](std::size_t len) {
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w += kAlphabet[uniform(0, sizeof(kAlphabet) - 2)];
    return w;
  };
  doc.name = word(uniform(1, 8));
  if (uniform(0, 3) == 0) doc.name += " " + word(uniform(1, 5));

  const auto n_plus = uniform(0, 8), n_minus = uniform(0, 8);
  for (std::int64_t i = 0; i < n_plus; ++i) doc.dp_plus.push_back({"p" + std::to_string(i), any_sign(), uniform(-9, 9)});
  for (std::int64_t i = 0; i < n_minus; ++i) doc.dp_minus.push_back({"q" + std::to_string(i), any_sign(), uniform(-9, 9)});
  if (n_plus > 0) {
    const auto n_pairs = uniform(0, 4);
    for (std::int64_t i = 0; i < n_pairs; ++i)
      doc.pairs.push_back({"P" + std::to_string(i), doc.dp_plus[uniform(0, n_plus - 1)].id,
                           doc.dp_plus[uniform(0, n_plus - 1)].id});
  }
  if (!doc.pairs.empty()) {
    const auto n_disks = uniform(0, 4);
    for (std::int64_t i = 0; i < n_disks; ++i) {
      WhitneyDiskData w;
      w.id = "W" + std::to_string(i);
      w.pair = doc.pairs[uniform(0, static_cast<std::int64_t>(doc.pairs.size()) - 1)].id;
      w.primary = uniform(-5, 5);
      w.framed = uniform(0, 4) != 0;
      for (auto m = uniform(0, 5); m > 0; --m) w.intersections.push_back({any_sign(), uniform(-6, 6)});
      doc.disks.push_back(std::move(w));
    }
  }
  for (auto n = uniform(0, 3), i = std::int64_t{0}; i < n; ++i) {
    SphereClass s;
    s.id = "A" + std::to_string(i);
    s.pairing.eps = any_sign();
    s.w2 = uniform(0, 1) != 0;
    for (auto m = uniform(0, 4); m > 0; --m) s.pairing.points.push_back({any_sign(), uniform(-6, 6)});
    doc.spheres.push_back(std::move(s));
  }
  doc.handles = uniform(0, 1) ? uniform(0, 20) : 0;
  return doc;
}

/// Random element of Z[s^{+-1}, t^{+-1}] with support in [-bound, bound]^2.
inline BiLaurent random_bilaurent(std::mt19937_64& rng, Exponent bound, int max_terms, int max_coeff) {
  std::uniform_int_distribution<int> terms(0, max_terms), coeff(-max_coeff, max_coeff);
  std::uniform_int_distribution<Exponent> exp(-bound, bound);
  BiLaurent x;
  for (int n = terms(rng); n > 0; --n) x.add_term(coeff(rng), exp(rng), exp(rng));
  return x;
}

namespace detail {

inline std::string c2_list(const std::vector<C2Algebra>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + to_string(x);
  return "(" + out + ")";
}

inline CheckResult check_sigma(const LinkMapDocument& doc) {
  const std::string want = "(0, t^2 + -4*t + 3)";
  const std::string got = to_string(sigma_pair(doc.dp_plus, doc.dp_minus));
  return {1, "sigma", got == want, "sigma = " + got + ", expected " + want, 0};
}

inline CheckResult check_phi_tau(const LinkMapDocument& doc) {
  CheckResult r{2, "phi-tau", false, {}, 0};
  if (!doc.framed()) {
    r.detail = "unframed Whitney disk, tau undefined";
    return r;
  }
  std::vector<C2Algebra> per_disk;
  for (const auto& w : doc.disks) per_disk.push_back(phi(intersection_sum(w)));
  const std::vector<C2Algebra> want_disks = {C2Algebra::unit(), C2Algebra::generator(), C2Algebra::zero(),
                                             C2Algebra::generator(), C2Algebra::generator()};
  const C2Algebra total = phi(tau(doc.disks));
  r.passed = per_disk == want_disks && total == C2Algebra::unit() + C2Algebra::generator();
  r.detail = "Phi(I(W_i)) = " + c2_list(per_disk) + ", Phi(tau) = " + to_string(total);
  return r;
}

inline CheckResult check_tau_nonzero(const LinkMapDocument& doc, const VerifyOptions& opt) {
  CheckResult r{3, "tau-nonzero", false, {}, 0};
  if (!doc.framed()) {
    r.detail = "unframed Whitney disk, tau undefined";
    return r;
  }
  QuotientContext ctx{relation4_data(doc.spheres, opt.quotient_window), opt.quotient_window};
  const BiLaurent t = tau(doc.disks);
  try {
    EqualityCertificate cert = is_zero_mod_R(t, ctx);
    r.passed = cert.is_distinct() && cert.distinct().witness == kPhiWitness && replay(cert, t, {}, ctx);
    std::string text = serialize_certificate(cert);
    r.detail = "tau = " + to_string(t) + ": " + text.substr(0, text.find('\n'));
  } catch (const WindowTooSmall& e) {
    r.detail = e.what();
  }
  return r;
}

inline CheckResult check_omega(const LinkMapDocument& doc) {
  CheckResult r{4, "omega", false, {}, 0};
  if (!doc.framed()) {
    r.detail = "unframed Whitney disk, tau undefined";
    return r;
  }
  const bool w = omega_plus(doc.disks);
  r.passed = w;
  r.detail = std::string("omega_+ = ") + (w ? "1" : "0");
  return r;
}

inline CheckResult check_phi_relations(const LinkMapDocument& doc, const VerifyOptions& opt) {
  CheckResult r{5, "phi-relations", false, {}, 0};
  const auto data = relation4_data(doc.spheres, opt.relation_kmax);
  const auto instances = enumerate_relator_instances(data, opt.relation_kmax);
  std::size_t r4_count = 0, bad = 0;
  for (const auto& inst : instances) {
    if (inst.kind == RelationKind::r4) ++r4_count;
    if (!phi(inst.value()).is_zero()) ++bad;
  }
  r.passed = bad == 0 && instances.size() >= 30000 && r4_count > 0;
  r.detail = std::to_string(instances.size()) + " relators (" + std::to_string(r4_count) + " R4), " +
             std::to_string(bad) + " with nonzero Phi";
  return r;
}

inline CheckResult check_wall(const LinkMapDocument& doc) {
  CheckResult r{6, "wall", false, {}, 0};
  const Laurent one_plus_t = Laurent(1) + Laurent::t();
  const std::vector<Laurent> want = {one_plus_t, one_plus_t, one_plus_t, one_plus_t, Laurent(2) * one_plus_t};
  std::vector<Laurent> discs;
  bool all_vanish = true;
  std::string tildes;
  for (const auto& s : doc.spheres) {
    discs.push_back(lambda_disc(s.pairing));
    C2Algebra v = lambda_tilde(s);
    all_vanish = all_vanish && v.is_zero();
    tildes += (tildes.empty() ? "" : ", ") + to_string(v);
  }
  std::string ds;
  for (const auto& d : discs) ds += (ds.empty() ? "" : ", ") + to_string(d);
  r.passed = discs == want && all_vanish;
  r.detail = "lambda(F, D_i) = (" + ds + "), lambda~(F, A_i) = (" + tildes + ")";
  return r;
}

inline CheckResult check_pi2(const LinkMapDocument& doc) {
  CheckResult r{7, "pi2", false, {}, 0};
  const std::size_t rank = h2_rank(build_universal_cover_complex(doc.handles));
  bool synthetic = check_injective_d1();
  for (std::int64_t n = 0; n <= 20; ++n)
    synthetic = synthetic && h2_rank(build_universal_cover_complex(n)) == static_cast<std::size_t>(n);
  r.passed = rank == 5 && synthetic;
  r.detail = "rank pi_2 = " + std::to_string(rank) + (synthetic ? ", synthetic n = 0..20 agree" : ", synthetic mismatch");
  return r;
}

inline CheckResult check_quotient(const LinkMapDocument& doc, const VerifyOptions& opt) {
  CheckResult r{8, "quotient-soundness", false, {}, 0};
  std::size_t certified = 0, failures = 0;
  std::string first_failure;
  auto note = [&](bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  };
  auto expect_equal = [&](const BiLaurent& x, const BiLaurent& y, const QuotientContext& ctx) {
    EqualityCertificate c = are_equal_mod_R(x, y, ctx);
    bool ok = c.is_equal() && replay(c, x, y, ctx);
    certified += ok;
    note(ok, to_string(x) + " == " + to_string(y));
  };

  const QuotientContext base{{}, opt.quotient_window};
  for (Exponent k = -10; k <= 10; ++k)
    expect_equal(bilaurent_monomial(1, k, k), bilaurent_monomial(1, k, 0), base);
  for (Exponent l = -10; l <= 10; ++l) expect_equal(bilaurent_monomial(2, 0, l), {}, base);
  expect_equal(bilaurent_monomial(2, 1, 1), {}, base);

  std::mt19937_64 rng(opt.seed);
  const Exponent small = 3;
  const QuotientContext ctx{relation4_data(doc.spheres, small), 2 * small};
  const bool phi_sound = phi_kills_relations(ctx);
  const auto instances = enumerate_relator_instances(ctx.r4_data, small);
  std::uniform_int_distribution<std::size_t> pick(0, instances.size() - 1);
  std::uniform_int_distribution<int> mult(-2, 2), count(1, 3);
  std::size_t additivity = 0, consistency = 0;
  for (std::size_t trial = 0; trial < opt.property_trials; ++trial) {
    BiLaurent x = random_bilaurent(rng, small, 4, 3);
    BiLaurent y = random_bilaurent(rng, small, 4, 3);
    note(phi(x + y) == phi(x) + phi(y) && phi(-x) == phi(x), "Phi additivity at " + to_string(x));
    ++additivity;

    BiLaurent moved = x;
    for (int n = count(rng); n > 0; --n) moved += Integer(mult(rng)) * instances[pick(rng)].value();
    EqualityCertificate c = are_equal_mod_R(moved, x, ctx);
    note(c.is_equal() && replay(c, moved, x, ctx), "reduction of " + to_string(moved) + " to " + to_string(x));
    note(!phi_sound || phi(moved) == phi(x), "Phi changed under reduction at " + to_string(x));

    EqualityCertificate d = are_equal_mod_R(x, y, ctx);
    note(replay(d, x, y, ctx), "certificate for " + to_string(x) + " vs " + to_string(y) + " does not replay");
    note(!d.is_equal() || !phi_sound || phi(x) == phi(y), "Equal certificate with different Phi");
    ++consistency;
  }
  r.passed = failures == 0 && phi_sound;
  r.detail = std::to_string(certified) + " fixed identities certified, " + std::to_string(additivity) +
             " additivity and " + std::to_string(consistency) + " reduction checks";
  if (!phi_sound) r.detail += "; Phi does not vanish on the R4 data";
  if (failures) r.detail += "; " + std::to_string(failures) + " failures, first: " + first_failure;
  return r;
}

inline CheckResult check_round_trip(const LinkMapDocument& doc, const VerifyOptions& opt) {
  CheckResult r{9, "round-trip", false, {}, 0};
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  std::size_t ok = 0, total = 0;
  std::string first_failure;
  auto check = [&](const LinkMapDocument& d) {
    ++total;
    const std::string text = serialize_linkmap(d);
    bool good = false;
    try {
      LinkMapDocument back = parse_linkmap(text);
      good = back == d && serialize_linkmap(back) == text;
    } catch (const ParseError& e) {
      if (first_failure.empty()) first_failure = e.what();
    }
    if (good) ++ok;
    else if (first_failure.empty()) first_failure = "document '" + d.name + "' changed";
  };
  check(doc);
  for (std::size_t i = 0; i < opt.random_documents; ++i) check(random_document(rng));
  bool golden_ok = true;
  if (opt.golden_text) golden_ok = serialize_linkmap(doc) == *opt.golden_text;
  r.passed = ok == total && golden_ok;
  r.detail = std::to_string(ok) + "/" + std::to_string(total) + " documents round-trip";
  if (opt.golden_text) r.detail += golden_ok ? ", golden file matches" : ", golden file differs";
  if (!first_failure.empty()) r.detail += "; " + first_failure;
  return r;
}

template <typename F>
CheckResult timed(F&& f, double limit_seconds = 0) {
  auto start = std::chrono::steady_clock::now();
  CheckResult r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && r.seconds >= limit_seconds) {
    r.passed = false;
    r.detail += "; took " + std::to_string(r.seconds) + " s, limit " + std::to_string(limit_seconds) + " s";
  }
  return r;
}

}  // namespace detail

/// Runs checks 1 to 9 in order. Timing limits apply to 1, 2, 3 and 5.
inline std::vector<CheckResult> run_checks(const LinkMapDocument& doc, const VerifyOptions& opt = {}) {
  using namespace detail;
  return {
      timed([&] { return check_sigma(doc); }, 0.1),
      timed([&] { return check_phi_tau(doc); }, 0.1),
      timed([&] { return check_tau_nonzero(doc, opt); }, 1.0),
      timed([&] { return check_omega(doc); }),
      timed([&] { return check_phi_relations(doc, opt); }, 5.0),
      timed([&] { return check_wall(doc); }),
      timed([&] { return check_pi2(doc); }),
      timed([&] { return check_quotient(doc, opt); }),
      timed([&] { return check_round_trip(doc, opt); }),
  };
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace linkhom
