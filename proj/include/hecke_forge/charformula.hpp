#pragma once

// Constant collapse and finite right-hand sides of the character formulas.
// The p-adic factor Tr kappa_M enters only through a callback.

#include "hecke_forge/finglq.hpp"
#include "hecke_forge/hecke.hpp"
#include "hecke_forge/rational.hpp"
#include "hecke_forge/repth.hpp"
#include "hecke_forge/weyl.hpp"

#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hecke_forge::charformula {

using Complex = std::complex<double>;

struct CharFormulaParams {
  int e = 1;
  int f = 1;
  int q = 2;
  int e_prime = 1;
  int chi = 0;
  std::function<Complex(const finglq::GLMatrix&)> kappa_trace = [](const finglq::GLMatrix&) { return Complex(1); };

  int big_n() const { return e * e_prime * f; }
};

/// C_S = ((-1)^{e-1}/e') ((-1)^{d_S} / ((d_S+1) vol P_S)) p_{e-1}(q).
inline Rational constant_CS(int e, int e_prime, const Rational& q) {
  if (e < 1 || e_prime < 1) throw std::invalid_argument("constant_CS: e and e' must be positive");
  const auto s = weyl::ParahoricType::all_finite(e);
  const Rational vol = weyl::parahoric_volume(s, q);
  return Rational(neg_one_pow(e - 1)) / Rational(e_prime) * Rational(neg_one_pow(s.dim())) / (Rational(s.dim() + 1) * vol) *
         weyl::poincare_poly(e).evaluate(q);
}

/// C_S (-1)^{e-1} = 1 for e' = 1.
inline bool normalized_constant_check(int e, int e_prime, const Rational& q) {
  if (e_prime != 1) throw std::invalid_argument("normalized_constant_check: requires e' = 1");
  return constant_CS(e, e_prime, q) * Rational(neg_one_pow(e - 1)) == 1;
}

struct EllipticFormulaValue {
  Complex lhs;  // sum_x [Tr e_tau](x gamma x^{-1}) * kappa(gamma)
  Complex rhs;  // (-1)^{e-1} Tr St(gamma) * kappa(gamma)
  bool consistent = false;
};

/// Finite skeleton of the first character formula on an elliptic regular
/// gamma in GL(e, q) (f = 1).
inline EllipticFormulaValue theorem11_rhs(const finglq::GLMatrix& gamma, const CharFormulaParams& p, double tol = 1e-7) {
  if (p.f != 1) throw std::invalid_argument("theorem11_rhs: only f = 1 is supported");
  if (gamma.rank() != p.e || gamma.field().size() != p.q) throw std::invalid_argument("theorem11_rhs: gamma is not in GL(e, q)");
  if (!finglq::elliptic_regular(gamma)) throw std::invalid_argument("theorem11_rhs: gamma is not elliptic regular");
  const auto g = finglq::general_linear(p.e, p.q);
  const std::uint32_t idx = *g->index_of(gamma);
  const Complex kappa = p.kappa_trace(gamma);
  EllipticFormulaValue v;
  v.lhs = repth::char_generalized_trivial(idx, p.e, p.q, p.chi) * kappa;
  v.rhs = static_cast<double>(neg_one_pow(p.e - 1)) * repth::steinberg_char(p.e, p.q, p.chi)(idx) * kappa;
  v.consistent = std::abs(v.lhs - v.rhs) <= tol;
  return v;
}

/// ((-1)^{nu(n-1)} / N) sum_{k=0}^{N-1} c^nu, evaluated term by term.
inline Complex theorem12_prefactor(int nu, int n, int big_n, Complex c) {
  if (big_n < 1 || n < 1) throw std::invalid_argument("theorem12_prefactor: N and n must be positive");
  if (std::gcd(nu, big_n) != 1) throw std::invalid_argument("theorem12_prefactor: nu must be coprime to N");
  if (c == Complex(0)) throw std::invalid_argument("theorem12_prefactor: c must be nonzero");
  const Complex cnu = std::pow(c, nu);
  Complex sum = 0;
  for (int k = 0; k < big_n; ++k) sum += cnu;
  return static_cast<double>(neg_one_pow(static_cast<long long>(nu) * (n - 1))) * sum / static_cast<double>(big_n);
}

/// (a T_Pi)^k = a^k T_{Pi^k} for 0 <= k <= 2e with a the polynomial variable,
/// and the same with a evaluated at q.
inline bool power_identity_check(int e, const Rational& q) {
  using hecke::HeckeElt;
  using weyl::ExtAffineElt;
  const Polynomial a = Polynomial::x();
  const HeckeElt base = HeckeElt::basis(ExtAffineElt::pi(e), a);
  for (int k = 0; k <= 2 * e; ++k) {
    const HeckeElt expect = HeckeElt::basis(ExtAffineElt::pi_power(k, e), Polynomial::monomial(1, static_cast<std::size_t>(k)));
    const HeckeElt got = hecke::power(base, k);
    if (!(got == expect)) return false;
    if (!(got.evaluate_at(q) == expect.evaluate_at(q))) return false;
  }
  return true;
}

}  // namespace hecke_forge::charformula
