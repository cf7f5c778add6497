// linkhom: invariants of link maps from combinatorial .lmap data.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "linkhom/commands.hpp"

using namespace linkhom;

namespace {

int emit(const CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

std::optional<std::string> read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-map invariants over Z[s, 1/s, t, 1/t]"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "text";
  std::optional<Exponent> window;
  Exponent kmax = 50;
  app.add_option("--format", format_name, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--window", window, "Relator window for quotient computations")->check(CLI::NonNegativeNumber);
  app.add_option("--kmax", kmax, "Exponent bound for check-relations");

  std::string file;
  std::optional<std::string> optional_file, golden;
  std::string lhs, rhs;

  auto* sigma = app.add_subcommand("sigma", "Kirk's sigma invariant (sigma+, sigma-)");
  auto* tau = app.add_subcommand("tau", "A representative of tau(f+)");
  auto* phi_tau = app.add_subcommand("phi-tau", "Phi(tau) in Z_2<t>");
  auto* omega = app.add_subcommand("omega", "omega+ = varphi(Phi(tau))");
  auto* wall = app.add_subcommand("wall", "Wall pairings of the sphere classes");
  auto* pi2 = app.add_subcommand("pi2", "Rank of pi_2 over Z[t, 1/t]");
  for (auto* sub : {sigma, tau, phi_tau, omega, wall, pi2})
    sub->add_option("file", file, ".lmap input")->required()->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check-relations", "Check Phi on every relator up to --kmax");
  check->add_option("file", optional_file, ".lmap file supplying R4 data")->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify-paper", "Run every reproducibility check");
  verify->add_option("file", optional_file, ".lmap file to check instead of the bundled dataset")
      ->check(CLI::ExistingFile);
  verify->add_option("--golden", golden, "Canonical file to compare byte for byte")->check(CLI::ExistingFile);

  auto* equal = app.add_subcommand("equal", "Decide LHS == RHS modulo the relations");
  equal->add_option("lhs", lhs, "Element of Z[s, 1/s, t, 1/t]")->required();
  equal->add_option("rhs", rhs, "Element of Z[s, 1/s, t, 1/t]")->required();
  equal->add_option("file", optional_file, ".lmap file supplying R4 data")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const Format format = format_name == "json" ? Format::json : Format::text;
  auto on_file = [&](auto cmd) {
    return emit(with_document(file, [&](const LinkMapDocument& doc) { return cmd(doc, format); }));
  };
  auto on_optional_file = [&](auto cmd) {
    if (!optional_file) return emit(cmd(nullptr));
    return emit(with_document(*optional_file, [&](const LinkMapDocument& doc) { return cmd(&doc); }));
  };

  if (*sigma) return on_file([](const auto& d, Format f) { return cmd_sigma(d, f); });
  if (*tau) return on_file([](const auto& d, Format f) { return cmd_tau(d, f); });
  if (*phi_tau) return on_file([](const auto& d, Format f) { return cmd_phi_tau(d, f); });
  if (*omega) return on_file([](const auto& d, Format f) { return cmd_omega(d, f); });
  if (*wall) return on_file([](const auto& d, Format f) { return cmd_wall(d, f); });
  if (*pi2) return on_file([](const auto& d, Format f) { return cmd_pi2(d, f); });
  if (*check)
    return on_optional_file([&](const LinkMapDocument* d) { return cmd_check_relations(kmax, d, format); });
  if (*equal)
    return on_optional_file([&](const LinkMapDocument* d) { return cmd_equal(lhs, rhs, d, window, format); });
  if (*verify) {
    VerifyOptions opt;
    if (window) opt.quotient_window = *window;
    opt.relation_kmax = kmax;
    if (golden) {
      opt.golden_text = read_text(*golden);
      if (!opt.golden_text) return emit({kExitUsage, {}, "error: cannot read '" + *golden + "'\n"});
    }
    if (!optional_file) return emit(cmd_verify_paper(kirk_example(), format, opt));
    return emit(with_document(*optional_file,
                              [&](const LinkMapDocument& d) { return cmd_verify_paper(d, format, opt); }));
  }
  return kExitUsage;
}
