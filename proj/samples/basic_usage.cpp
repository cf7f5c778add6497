// Computing the invariants of a link map from its .lmap description.

#include <iostream>

#include "linkhom/invariants.hpp"
#include "linkhom/model_io.hpp"
#include "linkhom/quotient.hpp"
#include "linkhom/wall.hpp"

int main() {
  using namespace linkhom;

  LinkMapDocument doc = kirk_example();
  std::cout << "sigma      " << to_string(sigma_pair(doc.dp_plus, doc.dp_minus)) << "\n";

  BiLaurent t = tau(doc.disks);
  std::cout << "tau        " << t << "\n";
  std::cout << "Phi(tau)   " << phi(t) << "\n";
  std::cout << "omega+     " << omega_plus(doc.disks) << "\n";

  for (const auto& s : doc.spheres) std::cout << "lambda~ " << s.id << "  " << lambda_tilde(s) << "\n";

  QuotientContext ctx{relation4_data(doc.spheres, 10), 10};
  std::cout << serialize_certificate(is_zero_mod_R(t, ctx));

  // s^3 t^3 - s^3 is a single relator.
  BiLaurent x = parse_bilaurent("s^3*t^3"), y = parse_bilaurent("s^3");
  EqualityCertificate c = are_equal_mod_R(x, y, ctx);
  std::cout << serialize_certificate(c) << "replays: " << replay(c, x, y, ctx) << "\n";

  // Round trip through the text format.
  LinkMapDocument back = parse_linkmap(serialize_linkmap(doc));
  std::cout << "round trip " << (back == doc) << "\n";
}
