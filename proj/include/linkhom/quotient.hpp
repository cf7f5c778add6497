#pragma once

// Equality in Z[s^{+-1}, t^{+-1}] / R, where R is the additive subgroup
// generated by the four relator families
//
//   R1(k)    s^k t^k - s^k
//   R2(k,l)  s^k t^l + s^-k t^(l-k)
//   R3(k,l)  s^k t^l + s^l t^k
//   R4(k;g)  s^k g(t) - w2 s^k       for supplied pairs (g, w2) = (lambda(F,A), w2(A))
//
// Equality is semidecided: lattice membership over the relators inside an
// exponent window certifies Equal, the Phi reduction certifies Distinct, and
// everything else is Unknown.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "linkhom/group_ring.hpp"
#include "linkhom/invariants.hpp"

namespace linkhom {

enum class RelationKind : int { r1 = 1, r2 = 2, r3 = 3, r4 = 4 };

/// Data for one relator family of type R4.
struct Relation4Datum {
  Laurent g;
  bool w2 = false;

  friend bool operator==(const Relation4Datum&, const Relation4Datum&) = default;
};

struct RelatorInstance {
  RelationKind kind = RelationKind::r1;
  Exponent k = 0;
  Exponent l = 0;  // R2 and R3 only
  Laurent g;       // R4 only
  bool w2 = false;  // R4 only

  static RelatorInstance r1(Exponent k) { return {RelationKind::r1, k, 0, {}, false}; }
  static RelatorInstance r2(Exponent k, Exponent l) { return {RelationKind::r2, k, l, {}, false}; }
  static RelatorInstance r3(Exponent k, Exponent l) { return {RelationKind::r3, k, l, {}, false}; }
  static RelatorInstance r4(Exponent k, const Relation4Datum& d) { return {RelationKind::r4, k, 0, d.g, d.w2}; }

  BiLaurent value() const {
    BiLaurent r;
    switch (kind) {
      case RelationKind::r1:
        r.add_term(1, k, k);
        r.add_term(-1, k, 0);
        break;
      case RelationKind::r2:
        r.add_term(1, k, l);
        r.add_term(1, negate_exponent(k), add_exponents(l, negate_exponent(k)));
        break;
      case RelationKind::r3:
        r.add_term(1, k, l);
        r.add_term(1, l, k);
        break;
      case RelationKind::r4:
        r = BiLaurent::from_laurent(g, k);
        if (w2) r.add_term(-1, k, 0);
        break;
    }
    return r;
  }

  friend bool operator==(const RelatorInstance&, const RelatorInstance&) = default;
};

struct QuotientContext {
  std::vector<Relation4Datum> r4_data;
  /// Bound on |k|, |l| for relator enumeration. Unset means "largest input
  /// exponent + kDefaultWindowMargin".
  std::optional<Exponent> window;
};

inline constexpr Exponent kDefaultWindowMargin = 4;

class WindowTooSmall : public std::domain_error {
 public:
  WindowTooSmall(Exponent window, Exponent needed)
      : std::domain_error("window " + std::to_string(window) + " is smaller than the input exponent bound " +
                          std::to_string(needed)),
        window_(window),
        needed_(needed) {}
  Exponent window() const { return window_; }
  Exponent needed() const { return needed_; }

 private:
  Exponent window_;
  Exponent needed_;
};

/// Every nonzero relator with |k|, |l| <= window: R1 by k, then R2 and R3 by
/// (k, l), then R4 by datum and k.
inline std::vector<RelatorInstance> enumerate_relator_instances(const std::vector<Relation4Datum>& r4_data,
                                                                Exponent window) {
  if (window < 0) throw std::invalid_argument("relator window must be nonnegative");
  std::vector<RelatorInstance> out;
  auto keep = [&out](RelatorInstance r) {
    if (!r.value().is_zero()) out.push_back(std::move(r));
  };
  for (Exponent k = -window; k <= window; ++k) keep(RelatorInstance::r1(k));
  for (Exponent k = -window; k <= window; ++k)
    for (Exponent l = -window; l <= window; ++l) keep(RelatorInstance::r2(k, l));
  for (Exponent k = -window; k <= window; ++k)
    for (Exponent l = -window; l <= window; ++l) keep(RelatorInstance::r3(k, l));
  for (const auto& d : r4_data)
    for (Exponent k = -window; k <= window; ++k) keep(RelatorInstance::r4(k, d));
  return out;
}

inline std::vector<BiLaurent> enumerate_relators(const QuotientContext& ctx) {
  if (!ctx.window) throw std::invalid_argument("enumerate_relators needs an explicit window");
  std::vector<BiLaurent> out;
  for (const auto& r : enumerate_relator_instances(ctx.r4_data, *ctx.window)) out.push_back(r.value());
  return out;
}

/// True when Phi vanishes on every relator of the context, for all k and l.
/// Phi of a relator depends only on the parities of k and l, so the four
/// parity classes decide it.
inline bool phi_kills_relations(const QuotientContext& ctx) {
  for (Exponent k = 0; k < 2; ++k) {
    if (!phi(RelatorInstance::r1(k).value()).is_zero()) return false;
    for (Exponent l = 0; l < 2; ++l) {
      if (!phi(RelatorInstance::r2(k, l).value()).is_zero()) return false;
      if (!phi(RelatorInstance::r3(k, l).value()).is_zero()) return false;
    }
    for (const auto& d : ctx.r4_data)
      if (!phi(RelatorInstance::r4(k, d).value()).is_zero()) return false;
  }
  return true;
}

inline constexpr const char* kPhiWitness = "Phi";

struct EqualityCertificate {
  struct Equal {
    std::vector<std::pair<RelatorInstance, Integer>> combination;
    friend bool operator==(const Equal&, const Equal&) = default;
  };
  struct Distinct {
    std::string witness;
    C2Algebra lhs;
    C2Algebra rhs;
    friend bool operator==(const Distinct&, const Distinct&) = default;
  };
  struct Unknown {
    Exponent window = 0;
    friend bool operator==(const Unknown&, const Unknown&) = default;
  };

  std::variant<Equal, Distinct, Unknown> value;

  bool is_equal() const { return std::holds_alternative<Equal>(value); }
  bool is_distinct() const { return std::holds_alternative<Distinct>(value); }
  bool is_unknown() const { return std::holds_alternative<Unknown>(value); }
  const Equal& equal() const { return std::get<Equal>(value); }
  const Distinct& distinct() const { return std::get<Distinct>(value); }
  const Unknown& unknown() const { return std::get<Unknown>(value); }

  friend bool operator==(const EqualityCertificate&, const EqualityCertificate&) = default;
};

/// Sum of multiplier * relator over an Equal certificate.
inline BiLaurent combination_value(const EqualityCertificate::Equal& eq) {
  BiLaurent sum;
  for (const auto& [r, m] : eq.combination) sum += m * r.value();
  return sum;
}

/// Checks a certificate against its inputs. Equal: the combination sums to
/// x - y and every R4 instance uses a datum of the context. Distinct: the
/// witness vanishes on all relations and separates x from y. Unknown always
/// replays.
inline bool replay(const EqualityCertificate& cert, const BiLaurent& x, const BiLaurent& y,
                   const QuotientContext& ctx) {
  if (cert.is_equal()) {
    for (const auto& [r, m] : cert.equal().combination) {
      if (r.kind != RelationKind::r4) continue;
      Relation4Datum d{r.g, r.w2};
      if (std::find(ctx.r4_data.begin(), ctx.r4_data.end(), d) == ctx.r4_data.end()) return false;
    }
    return combination_value(cert.equal()) == x - y;
  }
  if (cert.is_distinct()) {
    const auto& d = cert.distinct();
    if (d.witness != kPhiWitness || !phi_kills_relations(ctx)) return false;
    return phi(x) == d.lhs && phi(y) == d.rhs && d.lhs != d.rhs;
  }
  return true;
}

namespace detail {

// Sparse integer vector, leading (largest) monomial first.
using SparseRow = std::map<BiExponent, Integer, std::greater<BiExponent>>;
using Combination = std::map<std::size_t, Integer>;

template <typename Map>
void add_multiple(Map& dst, const Integer& q, const Map& src) {
  if (q == 0) return;
  for (const auto& [key, a] : src) accumulate(dst, key, Integer(q * a));
}

template <typename Map>
void scale(Map& v, const Integer& q) {
  for (auto& [key, a] : v) a *= q;
}

// Extended gcd with g > 0 and x*a + y*b = g.
inline void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

/// Row echelon basis of an integer lattice, maintained under insertion by
/// unimodular row operations. Each row remembers how it was combined from
/// the inserted generators.
class EchelonLattice {
 public:
  void insert(SparseRow v, Combination combo) {
    while (!v.empty()) {
      const BiExponent lead = v.begin()->first;
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        if (v.begin()->second < 0) {
          scale(v, Integer(-1));
          scale(combo, Integer(-1));
        }
        rows_.emplace(lead, Row{std::move(v), std::move(combo)});
        return;
      }
      Row& b = it->second;
      const Integer a = b.vec.begin()->second;  // positive
      const Integer c = v.begin()->second;
      if (c % a == 0) {
        Integer q = -(c / a);
        add_multiple(v, q, b.vec);
        add_multiple(combo, q, b.combo);
        continue;
      }
      Integer g, x, y;
      extended_gcd(a, c, g, x, y);
      // (b, v) -> (x b + y v, (a/g) v - (c/g) b) has determinant 1.
      SparseRow nb;
      Combination nbc;
      add_multiple(nb, x, b.vec);
      add_multiple(nb, y, v);
      add_multiple(nbc, x, b.combo);
      add_multiple(nbc, y, combo);
      SparseRow nv;
      Combination nvc;
      add_multiple(nv, Integer(a / g), v);
      add_multiple(nv, Integer(-(c / g)), b.vec);
      add_multiple(nvc, Integer(a / g), combo);
      add_multiple(nvc, Integer(-(c / g)), b.combo);
      b.vec = std::move(nb);
      b.combo = std::move(nbc);
      v = std::move(nv);
      combo = std::move(nvc);
    }
  }

  /// Coefficients expressing target over the generators, if it lies in the lattice.
  std::optional<Combination> solve(SparseRow target) const {
    Combination acc;
    while (!target.empty()) {
      auto it = rows_.find(target.begin()->first);
      if (it == rows_.end()) return std::nullopt;
      const Integer& a = it->second.vec.begin()->second;
      const Integer& c = target.begin()->second;
      if (c % a != 0) return std::nullopt;
      Integer q = c / a;
      add_multiple(target, Integer(-q), it->second.vec);
      add_multiple(acc, q, it->second.combo);
    }
    return acc;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    SparseRow vec;
    Combination combo;
  };
  std::map<BiExponent, Row, std::greater<BiExponent>> rows_;
};

inline SparseRow to_row(const BiLaurent& p) { return SparseRow(p.terms().begin(), p.terms().end()); }

struct BiExponentHash {
  std::size_t operator()(const BiExponent& e) const noexcept {
    return std::hash<Exponent>()(e.k) * 1000003u ^ std::hash<Exponent>()(e.l);
  }
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Relators whose support is connected, through shared monomials, to the
// support of the target. Other relators cannot contribute to a solution.
inline std::vector<std::size_t> relevant_relators(const std::vector<BiLaurent>& values, const BiLaurent& target) {
  std::unordered_map<BiExponent, std::size_t, BiExponentHash> index;
  auto id = [&index](const BiExponent& e) { return index.try_emplace(e, index.size()).first->second; };
  std::vector<std::vector<std::size_t>> supports(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    for (const auto& [e, a] : values[i].terms()) supports[i].push_back(id(e));
  std::vector<std::size_t> target_ids;
  for (const auto& [e, a] : target.terms()) target_ids.push_back(id(e));

  UnionFind uf(index.size());
  for (const auto& s : supports)
    for (std::size_t j = 1; j < s.size(); ++j) uf.unite(s[0], s[j]);
  std::vector<bool> wanted(index.size(), false);
  for (std::size_t t : target_ids) wanted[uf.find(t)] = true;

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!supports[i].empty() && wanted[uf.find(supports[i][0])]) out.push_back(i);
  return out;
}

}  // namespace detail

/// Decides x == y in the quotient as far as the window allows.
inline EqualityCertificate are_equal_mod_R(const BiLaurent& x, const BiLaurent& y, const QuotientContext& ctx) {
  const Exponent needed = std::max(x.max_abs_exponent(), y.max_abs_exponent());
  const Exponent window = ctx.window ? *ctx.window : add_exponents(needed, kDefaultWindowMargin);
  if (window < 0) throw std::invalid_argument("relator window must be nonnegative");
  if (needed > window) throw WindowTooSmall(window, needed);

  const BiLaurent diff = x - y;
  if (diff.is_zero()) return {EqualityCertificate::Equal{}};

  // Phi vanishes on the whole relation subgroup, so differing images are a
  // proof of distinctness regardless of the window.
  if (phi_kills_relations(ctx)) {
    C2Algebra lhs = phi(x), rhs = phi(y);
    if (lhs != rhs) return {EqualityCertificate::Distinct{kPhiWitness, lhs, rhs}};
  }

  const auto instances = enumerate_relator_instances(ctx.r4_data, window);
  std::vector<BiLaurent> values;
  values.reserve(instances.size());
  for (const auto& r : instances) values.push_back(r.value());
  const auto relevant = detail::relevant_relators(values, diff);

  // A single relator multiple is the common case and gives the shortest certificate.
  const auto& [lead, lead_coeff] = *diff.terms().rbegin();
  for (std::size_t i : relevant) {
    const BiLaurent& r = values[i];
    if (r.size() != diff.size()) continue;
    auto it = r.terms().find(lead);
    if (it == r.terms().end() || lead_coeff % it->second != 0) continue;
    Integer q = lead_coeff / it->second;
    if (q * r == diff) return {EqualityCertificate::Equal{{{instances[i], q}}}};
  }

  detail::EchelonLattice lattice;
  for (std::size_t i : relevant) lattice.insert(detail::to_row(values[i]), detail::Combination{{i, Integer(1)}});
  if (auto combo = lattice.solve(detail::to_row(diff))) {
    EqualityCertificate::Equal eq;
    for (const auto& [i, m] : *combo) eq.combination.emplace_back(instances[i], m);
    if (combination_value(eq) != diff) throw std::logic_error("lattice solve produced an invalid combination");
    return {std::move(eq)};
  }
  return {EqualityCertificate::Unknown{window}};
}

inline EqualityCertificate is_zero_mod_R(const BiLaurent& x, const QuotientContext& ctx) {
  return are_equal_mod_R(x, BiLaurent{}, ctx);
}

// ---------------------------------------------------------------------------
// Certificate text form:
//
//   EQUAL
//   <multiplier> R<1|2|3|4> k=<k> [l=<l>] [w2=1] [g=<poly>]
//   ...
// or
//   DISTINCT via=<name> lhs=<C2Algebra> rhs=<C2Algebra>
// or
//   UNKNOWN window=<W>

inline std::string serialize_certificate(const EqualityCertificate& cert) {
  std::ostringstream os;
  if (cert.is_equal()) {
    os << "EQUAL\n";
    for (const auto& [r, m] : cert.equal().combination) {
      os << m << " R" << static_cast<int>(r.kind) << " k=" << r.k;
      if (r.kind == RelationKind::r2 || r.kind == RelationKind::r3) os << " l=" << r.l;
      if (r.kind == RelationKind::r4) {
        if (r.w2) os << " w2=1";
        os << " g=" << to_string(r.g);
      }
      os << "\n";
    }
  } else if (cert.is_distinct()) {
    const auto& d = cert.distinct();
    os << "DISTINCT via=" << d.witness << " lhs=" << to_string(d.lhs) << " rhs=" << to_string(d.rhs) << "\n";
  } else {
    os << "UNKNOWN window=" << cert.unknown().window << "\n";
  }
  return os.str();
}

class CertificateSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline EqualityCertificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw CertificateSyntaxError("empty certificate");
  auto field = [](const std::string& s, const std::string& key) -> std::string {
    if (s.rfind(key + "=", 0) != 0) throw CertificateSyntaxError("expected " + key + "= in '" + s + "'");
    return s.substr(key.size() + 1);
  };
  auto to_exponent = [](const std::string& s) -> Exponent {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw CertificateSyntaxError("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      throw CertificateSyntaxError("bad integer '" + s + "'");
    }
  };

  if (line == "EQUAL") {
    EqualityCertificate::Equal eq;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string mult, kind, kfield;
      ls >> mult >> kind >> kfield;
      RelatorInstance r;
      if (kind == "R1") r.kind = RelationKind::r1;
      else if (kind == "R2") r.kind = RelationKind::r2;
      else if (kind == "R3") r.kind = RelationKind::r3;
      else if (kind == "R4") r.kind = RelationKind::r4;
      else throw CertificateSyntaxError("unknown relator kind '" + kind + "'");
      r.k = to_exponent(field(kfield, "k"));
      if (r.kind == RelationKind::r2 || r.kind == RelationKind::r3) {
        std::string lfield;
        ls >> lfield;
        r.l = to_exponent(field(lfield, "l"));
      }
      if (r.kind == RelationKind::r4) {
        std::string rest;
        std::getline(ls, rest);
        rest.erase(0, rest.find_first_not_of(' '));
        if (rest.rfind("w2=1 ", 0) == 0) {
          r.w2 = true;
          rest.erase(0, 5);
        }
        r.g = parse_laurent(field(rest, "g"));
      }
      Integer m;
      try {
        m = Integer(mult);
      } catch (const std::exception&) {
        throw CertificateSyntaxError("bad multiplier '" + mult + "'");
      }
      eq.combination.emplace_back(std::move(r), std::move(m));
    }
    return {std::move(eq)};
  }
  std::istringstream ls(line);
  std::string head;
  ls >> head;
  if (head == "DISTINCT") {
    std::string rest;
    std::getline(ls, rest);
    auto lhs_pos = rest.find(" lhs=");
    auto rhs_pos = rest.find(" rhs=");
    if (lhs_pos == std::string::npos || rhs_pos == std::string::npos || rhs_pos < lhs_pos)
      throw CertificateSyntaxError("malformed DISTINCT line");
    EqualityCertificate::Distinct d;
    d.witness = field(rest.substr(1, lhs_pos - 1), "via");
    d.lhs = parse_c2(rest.substr(lhs_pos + 5, rhs_pos - lhs_pos - 5));
    d.rhs = parse_c2(rest.substr(rhs_pos + 5));
    return {d};
  }
  if (head == "UNKNOWN") {
    std::string w;
    ls >> w;
    return {EqualityCertificate::Unknown{to_exponent(field(w, "window"))}};
  }
  throw CertificateSyntaxError("unknown certificate kind '" + head + "'");
}

}  // namespace linkhom
