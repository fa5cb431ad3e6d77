// Quadratic relation, braid relation and the length-zero element Pi in the
// extended affine Hecke algebra of GL_3.

#include "hecke_forge/hecke.hpp"

#include <iostream>

namespace hf = hecke_forge;
using hf::hecke::HeckeElt;
using hf::weyl::ExtAffineElt;

int main() {
  const int e = 3;
  const auto t = [&](int node) { return HeckeElt::basis(ExtAffineElt::simple(node, e)); };

  std::cout << "T_s1 * T_s1      = " << (t(1) * t(1)).str() << "\n";
  std::cout << "  at q = 4       = " << (t(1) * t(1)).evaluate_at(4).str() << "\n";

  const auto lhs = t(1) * t(2) * t(1);
  const auto rhs = t(2) * t(1) * t(2);
  std::cout << "braid relation   : " << (lhs == rhs ? "holds" : "fails") << "\n";

  const auto pi = HeckeElt::basis(ExtAffineElt::pi(e));
  std::cout << "T_Pi T_s1 T_Pi^-1 = " << (pi * t(1) * HeckeElt::basis(ExtAffineElt::pi_power(-1, e))).str() << "\n";
  std::cout << "T_Pi^3           = " << hf::hecke::power(pi, 3).str() << "\n";

  const auto x = hf::weyl::parse_element("pi*s1*s2", e);
  const auto rw = hf::weyl::reduced_word(x);
  std::cout << "element " << x.str() << " has length " << x.length() << ", word pi^" << rw.pi_power;
  for (int s : rw.word) std::cout << " s" << s;
  std::cout << "\n";
}
