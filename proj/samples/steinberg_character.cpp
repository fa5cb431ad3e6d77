// Steinberg character of GL(2,3) from the alternating parabolic sum, compared
// with the character of tau computed from the idempotent e_tau.

#include "hecke_forge/repth.hpp"

#include <cstdio>
#include <iostream>

namespace hf = hecke_forge;
namespace rt = hf::repth;

int main() {
  const int e = 2, q = 3, chi = 0;
  const auto g = hf::finglq::general_linear(e, q);
  const auto st = rt::steinberg_char(e, q, chi);
  const auto tau = rt::char_generalized_trivial(e, q, chi);
  const auto& cls = g->classes();

  std::printf("%-18s %5s %9s %9s %s\n", "class", "size", "St", "tau", "elliptic");
  for (std::size_t c = 0; c < cls.reps.size(); ++c) {
    const auto& x = g->element(cls.reps[c]);
    std::printf("%-18s %5zu %9.4f %9.4f %s\n", x.str().c_str(), cls.sizes[c], st.values[c].real(), tau.values[c].real(),
                hf::finglq::elliptic_regular(x) ? "yes" : "");
  }
  std::cout << "<St, St> = " << rt::inner_product(st, st).real() << "\n";

  const auto et = rt::e_tau<hf::Rational>(e, q, chi);
  std::cout << "dim tau = " << (et(g->identity()) * hf::Rational(static_cast<long long>(g->order()))).str() << "\n";
}
