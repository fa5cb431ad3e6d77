// Assemble F_0 for GL_2 and check that its central reduction is the averaged
// Euler-Poincare function f_0.

#include "hecke_forge/pseudocoef.hpp"

#include <iostream>

namespace hf = hecke_forge;
namespace pc = hf::pseudocoef;

int main() {
  const pc::PseudoCoefParams p{2, 1, hf::Rational(2), hf::Rational(1)};

  std::cout << "parahoric types and their data (e = 2):\n";
  for (const auto& t : hf::weyl::standard_subsets(p.e)) {
    const auto [u, n] = hf::weyl::period_and_n(t);
    std::cout << "  T=" << t.str() << " d_T=" << t.dim() << " u_T=" << u << " n_T=" << n << " eps_T=" << hf::weyl::epsilon(t)
              << " vol=" << hf::weyl::parahoric_volume(t, p.q).str() << "\n";
  }

  const auto f0 = pc::laumon_f0(p);
  std::cout << "f_0 = " << f0.str() << "\n";
  std::cout << "mean over representative systems matches: " << (pc::mean_kottwitz_ep(p) == f0 ? "yes" : "no") << "\n";

  const auto big_f0 = pc::assemble_F0(p);
  std::cout << "F_0 = " << big_f0.str() << "\n";
  std::cout << "central reduction equals f_0: " << (hf::hecke::central_reduction(big_f0, p.omega_at_pi) == f0 ? "yes" : "no") << "\n";
  std::cout << pc::to_json(big_f0).dump(2) << "\n";
}
