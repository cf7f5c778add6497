#pragma once

// Command implementations behind the linkhom executable. Each returns its
// report instead of printing it, so the same code runs under test.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
// Every successful report ends with the line "RESULT: <value>".

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linkhom/homology.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/model_io.hpp"
#include "linkhom/quotient.hpp"
#include "linkhom/verify.hpp"
#include "linkhom/wall.hpp"

namespace linkhom {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

enum class Format { text, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

// Collects report fields in order and renders them as text lines or as a
// single JSON object, followed by the RESULT line.
class Report {
 public:
  explicit Report(Format f) : format_(f) {}

  Report& field(const std::string& key, const std::string& text) { return field(key, text, nlohmann::ordered_json(text)); }
  Report& field(const std::string& key, const std::string& text, nlohmann::ordered_json value) {
    lines_ += key + ": " + text + "\n";
    json_[key] = std::move(value);
    return *this;
  }

  CommandResult finish(int code, const std::string& result) {
    CommandResult r;
    r.exit_code = code;
    if (format_ == Format::json) {
      json_["result"] = result;
      r.out = json_.dump() + "\n";
    } else {
      r.out = lines_;
    }
    r.out += "RESULT: " + result + "\n";
    return r;
  }

 private:
  Format format_;
  std::string lines_;
  nlohmann::ordered_json json_ = nlohmann::ordered_json::object();
};

inline CommandResult usage_error(const std::string& msg) { return {kExitUsage, {}, "error: " + msg + "\n"}; }

inline std::optional<CommandResult> require_framed(const LinkMapDocument& doc) {
  for (const auto& w : doc.disks)
    if (!w.framed) return usage_error("Whitney disk " + w.id + " is not framed; tau is undefined for unframed disks");
  return std::nullopt;
}

}  // namespace detail

/// Loads a .lmap file and runs body on it; read and parse errors exit with 2.
inline CommandResult with_document(const std::string& path,
                                   const std::function<CommandResult(const LinkMapDocument&)>& body) {
  LinkMapDocument doc;
  try {
    doc = read_linkmap_file(path);
  } catch (const ParseError& e) {
    return detail::usage_error(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    return detail::usage_error(e.what());
  }
  return body(doc);
}

inline CommandResult cmd_sigma(const LinkMapDocument& doc, Format f = Format::text) {
  SigmaPair s = sigma_pair(doc.dp_plus, doc.dp_minus);
  detail::Report rep(f);
  rep.field("sigma+", to_string(s.sigma_plus)).field("sigma-", to_string(s.sigma_minus));
  return rep.finish(kExitOk, to_string(s));
}

inline CommandResult cmd_tau(const LinkMapDocument& doc, Format f = Format::text) {
  if (auto e = detail::require_framed(doc)) return *e;
  detail::Report rep(f);
  for (const auto& w : doc.disks) rep.field("I(" + w.id + ")", to_string(intersection_sum(w)));
  return rep.finish(kExitOk, to_string(tau(doc.disks)));
}

inline CommandResult cmd_phi_tau(const LinkMapDocument& doc, Format f = Format::text) {
  if (auto e = detail::require_framed(doc)) return *e;
  detail::Report rep(f);
  for (const auto& w : doc.disks) rep.field("Phi(I(" + w.id + "))", to_string(phi(intersection_sum(w))));
  return rep.finish(kExitOk, to_string(phi(tau(doc.disks))));
}

inline CommandResult cmd_omega(const LinkMapDocument& doc, Format f = Format::text) {
  if (auto e = detail::require_framed(doc)) return *e;
  detail::Report rep(f);
  rep.field("Phi(tau)", to_string(phi(tau(doc.disks))));
  return rep.finish(kExitOk, omega_plus(doc.disks) ? "1" : "0");
}

inline std::string describe_relator(const RelatorInstance& r) {
  std::ostringstream os;
  os << "R" << static_cast<int>(r.kind) << " k=" << r.k;
  if (r.kind == RelationKind::r2 || r.kind == RelationKind::r3) os << " l=" << r.l;
  if (r.kind == RelationKind::r4) os << " g=" << to_string(r.g) << " w2=" << (r.w2 ? 1 : 0);
  return os.str();
}

/// Checks Phi(r) = 0 for every R1-R3 relator with |k|, |l| <= kmax and every
/// R4 relator s^k g - w2 s^k from the given data with |k| <= kmax.
inline CommandResult cmd_check_relations(Exponent kmax, const std::vector<Relation4Datum>& r4_data,
                                         Format f = Format::text) {
  if (kmax < 0) return detail::usage_error("--kmax must be nonnegative");
  const auto instances = enumerate_relator_instances(r4_data, kmax);
  std::vector<std::string> offending;
  std::size_t r4_count = 0;
  for (const auto& r : instances) {
    if (r.kind == RelationKind::r4) ++r4_count;
    C2Algebra v = phi(r.value());
    if (!v.is_zero())
      offending.push_back(describe_relator(r) + " at s^" + std::to_string(r.k) + ": " + to_string(r.value()) +
                          " -> " + to_string(v));
  }
  detail::Report rep(f);
  rep.field("checked", std::to_string(instances.size()), instances.size());
  rep.field("r4", std::to_string(r4_count), r4_count);
  if (!offending.empty()) {
    CommandResult r = rep.finish(kExitFailed, "FAIL " + std::to_string(offending.size()));
    for (const auto& o : offending) r.err += "nonzero Phi: " + o + "\n";
    return r;
  }
  return rep.finish(kExitOk, std::to_string(instances.size()));
}

inline CommandResult cmd_check_relations(Exponent kmax, const LinkMapDocument* doc, Format f = Format::text) {
  if (kmax < 0) return detail::usage_error("--kmax must be nonnegative");
  return cmd_check_relations(kmax, doc ? relation4_data(doc->spheres, kmax) : std::vector<Relation4Datum>{}, f);
}

inline CommandResult cmd_wall(const LinkMapDocument& doc, Format f = Format::text) {
  detail::Report rep(f);
  std::string list;
  for (const auto& s : doc.spheres) {
    const std::string v = to_string(lambda_tilde(s));
    rep.field(s.id, "lambda(F, D) = " + to_string(lambda_disc(s.pairing)) + ", lambda(F, A) = " +
                        to_string(lambda_sphere(s)) + ", lambda~ = " + v,
              {{"lambda_disc", to_string(lambda_disc(s.pairing))},
               {"lambda", to_string(lambda_sphere(s))},
               {"lambda_tilde", v}});
    list += (list.empty() ? "" : ", ") + v;
  }
  return rep.finish(kExitOk, "[" + list + "]");
}

inline CommandResult cmd_pi2(const LinkMapDocument& doc, Format f = Format::text) {
  if (doc.handles < 0) return detail::usage_error("negative handle count");
  HandleComplex c = build_universal_cover_complex(doc.handles);
  detail::Report rep(f);
  rep.field("handles", std::to_string(doc.handles), doc.handles);
  rep.field("d1", to_string(c.d1));
  const std::size_t rank = h2_rank(c);
  return rep.finish(kExitOk, std::to_string(rank));
}

inline CommandResult cmd_verify_paper(const LinkMapDocument& doc, Format f = Format::text,
                                      const VerifyOptions& opt = {}) {
  const auto results = run_checks(doc, opt);
  std::size_t passed = 0;
  CommandResult r;
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& c : results) {
    passed += c.passed;
    if (f == Format::json) {
      j[c.name] = {{"id", c.id}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}};
    } else {
      char line[64];
      std::snprintf(line, sizeof line, "%s %d %-20s %8.4fs  ", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    c.seconds);
      r.out += line + c.detail + "\n";
    }
  }
  const std::string summary = std::to_string(passed) + "/" + std::to_string(results.size());
  if (f == Format::json) {
    j["result"] = summary;
    r.out = j.dump() + "\n";
  }
  r.out += "RESULT: " + summary + "\n";
  r.exit_code = passed == results.size() ? kExitOk : kExitFailed;
  return r;
}

/// Decides x == y modulo the relations, with R4 data from doc's spheres.
inline CommandResult cmd_equal(const std::string& lhs, const std::string& rhs, const LinkMapDocument* doc,
                               std::optional<Exponent> window, Format f = Format::text) {
  BiLaurent x, y;
  try {
    x = parse_bilaurent(lhs);
    y = parse_bilaurent(rhs);
  } catch (const PolynomialSyntaxError& e) {
    return detail::usage_error(e.what());
  }
  QuotientContext ctx;
  ctx.window = window;
  const Exponent w = window ? *window : add_exponents(std::max(x.max_abs_exponent(), y.max_abs_exponent()),
                                                      kDefaultWindowMargin);
  if (doc) ctx.r4_data = relation4_data(doc->spheres, w);
  EqualityCertificate cert;
  try {
    cert = are_equal_mod_R(x, y, ctx);
  } catch (const WindowTooSmall& e) {
    return detail::usage_error(e.what());
  }
  detail::Report rep(f);
  rep.field("certificate", serialize_certificate(cert));
  CommandResult r = rep.finish(kExitOk, cert.is_equal() ? "EQUAL" : cert.is_distinct() ? "DISTINCT" : "UNKNOWN");
  if (f == Format::text) {
    // The certificate is multi-line; print it verbatim instead of as a field.
    r.out = serialize_certificate(cert) + r.out.substr(r.out.find("RESULT: "));
  }
  return r;
}

}  // namespace linkhom
