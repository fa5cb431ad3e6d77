#pragma once

// Euler-Poincare functions, their Laumon average f_0 and its finitely
// supported lift F_0 in the extended affine Hecke algebra.

#include "hecke_forge/hecke.hpp"
#include "hecke_forge/rational.hpp"
#include "hecke_forge/weyl.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke_forge::pseudocoef {

using hecke::CentralHeckeElt;
using hecke::HeckeElt;
using weyl::ExtAffineElt;
using weyl::ParahoricType;

class InvalidRepresentativeSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PseudoCoefParams {
  int e = 1;
  int e_prime = 1;
  Rational q = 2;
  Rational omega_at_pi = 1;

  void validate() const {
    if (e < 1) throw std::invalid_argument("PseudoCoefParams: e must be >= 1");
    if (e_prime < 1) throw std::invalid_argument("PseudoCoefParams: e' must be >= 1");
    if (q <= 0) throw std::invalid_argument("PseudoCoefParams: q must be positive");
    if (omega_at_pi == 0) throw std::invalid_argument("PseudoCoefParams: omega must be nonzero");
  }
};

/// sum_{l < n_T} eps_T^l sum_{w in <T>} [z_T^l w], i.e. sgn_T * 1_{K_T}.
inline CentralHeckeElt signed_parahoric_indicator(const ParahoricType& t, const Rational& omega) {
  const int e = t.rank();
  const auto [u, n] = weyl::period_and_n(t);
  const int eps = weyl::epsilon(t);
  const auto ws = weyl::parabolic_subgroup(t);
  CentralHeckeElt out(e, omega);
  for (int l = 0; l < n; ++l) {
    const ExtAffineElt z = ExtAffineElt::pi_power(static_cast<long long>(l) * u, e);
    const Polynomial sign(neg_one_pow(eps < 0 ? l : 0));
    for (const auto& w : ws) out.add_class(z * ExtAffineElt::finite(w), sign);
  }
  return out;
}

/// Throws unless theta holds exactly one standard member of every rotation
/// orbit of proper subsets of Z/e.
inline void validate_representative_system(int e, const std::vector<ParahoricType>& theta) {
  std::set<ParahoricType> seen;
  for (const auto& t : theta) {
    if (t.rank() != e) throw InvalidRepresentativeSystem("representative system: rank mismatch");
    if (!t.is_standard())
      throw InvalidRepresentativeSystem("representative system: " + t.str() + " contains the affine node 0");
    if (!seen.insert(weyl::canonical_rep(t)).second)
      throw InvalidRepresentativeSystem("representative system: two members of the orbit of " + t.str());
  }
  if (seen.size() != weyl::orbit_reps(e).size())
    throw InvalidRepresentativeSystem("representative system: some orbit has no representative");
}

/// (-1)^{e-1} f_EP^Theta, with
///   f_EP^Theta = sum_{T in Theta} (-1)^{d_T} / (n_T vol P_T) * sgn_T 1_{K_T}.
/// The global sign makes the value at the identity class positive.
inline CentralHeckeElt kottwitz_ep(const std::vector<ParahoricType>& theta, const PseudoCoefParams& p) {
  p.validate();
  validate_representative_system(p.e, theta);
  CentralHeckeElt out(p.e, p.omega_at_pi);
  for (const auto& t : theta) {
    const Rational vol = Rational(weyl::period_and_n(t).n) * weyl::parahoric_volume(t, p.q);
    out += signed_parahoric_indicator(t, p.omega_at_pi) * Polynomial(Rational(neg_one_pow(t.dim())) / vol);
  }
  return out * Polynomial(Rational(neg_one_pow(p.e - 1)));
}

/// Every choice of one standard member per orbit, in lexicographic order of choices.
inline std::vector<std::vector<ParahoricType>> all_representative_systems(int e) {
  std::vector<std::vector<ParahoricType>> per_orbit;
  for (const auto& rep : weyl::orbit_reps(e)) {
    std::vector<ParahoricType> members;
    for (const auto& t : weyl::orbit(rep))
      if (t.is_standard()) members.push_back(t);
    per_orbit.push_back(std::move(members));
  }
  std::vector<std::vector<ParahoricType>> out{{}};
  for (const auto& members : per_orbit) {
    std::vector<std::vector<ParahoricType>> next;
    for (const auto& partial : out)
      for (const auto& t : members) {
        auto ext = partial;
        ext.push_back(t);
        next.push_back(std::move(ext));
      }
    out = std::move(next);
  }
  return out;
}

/// Exact mean of kottwitz_ep over all representative systems.
inline CentralHeckeElt mean_kottwitz_ep(const PseudoCoefParams& p) {
  const auto systems = all_representative_systems(p.e);
  CentralHeckeElt sum(p.e, p.omega_at_pi);
  for (const auto& theta : systems) sum += kottwitz_ep(theta, p);
  return sum * Polynomial(Rational(1) / Rational(static_cast<long long>(systems.size())));
}

/// f_0 = (-1)^{e-1} sum_{T subset S} (-1)^{d_T} sgn_T 1_{K_T} / ((d_T + 1) vol P_T).
inline CentralHeckeElt laumon_f0(const PseudoCoefParams& p) {
  p.validate();
  CentralHeckeElt out(p.e, p.omega_at_pi);
  for (const auto& t : weyl::standard_subsets(p.e)) {
    const Rational denom = Rational(t.dim() + 1) * weyl::parahoric_volume(t, p.q);
    out += signed_parahoric_indicator(t, p.omega_at_pi) * Polynomial(Rational(neg_one_pow(t.dim())) / denom);
  }
  return out * Polynomial(Rational(neg_one_pow(p.e - 1)));
}

/// One summand of F_0 before like terms are merged.
struct F0Term {
  ParahoricType type;
  weyl::FinPermutation w;
  int l = 0;
  ExtAffineElt element;  // z_T^l w
  Rational coefficient;
};

/// Terms of
///   F_0 = ((-1)^{e-1}/e') sum_{T subset S} ((-1)^{d_T} / ((d_T+1) vol P_T))
///         sum_{w in <T>} sum_{l < e' n_T} eps_T^l T_{z_T^l w}.
inline std::vector<F0Term> F0_terms(const PseudoCoefParams& p) {
  p.validate();
  std::vector<F0Term> out;
  const Rational global = Rational(neg_one_pow(p.e - 1)) / Rational(p.e_prime);
  for (const auto& t : weyl::standard_subsets(p.e)) {
    const auto [u, n] = weyl::period_and_n(t);
    const int eps = weyl::epsilon(t);
    const Rational c = global * Rational(neg_one_pow(t.dim())) / (Rational(t.dim() + 1) * weyl::parahoric_volume(t, p.q));
    for (const auto& w : weyl::parabolic_subgroup(t))
      for (int l = 0; l < p.e_prime * n; ++l) {
        const ExtAffineElt z = ExtAffineElt::pi_power(static_cast<long long>(l) * u, p.e);
        out.push_back({t, w, l, z * ExtAffineElt::finite(w), eps < 0 && l % 2 ? -c : c});
      }
  }
  return out;
}

inline HeckeElt assemble_F0(const PseudoCoefParams& p) {
  HeckeElt out(p.e);
  for (const auto& term : F0_terms(p)) out.add_term(term.element, Polynomial(term.coefficient));
  return out;
}

struct SupportTriple {
  ParahoricType type;
  int l = 0;
  long long k = 0;

  friend bool operator==(const SupportTriple&, const SupportTriple&) = default;
};

struct SupportFilterResult {
  std::vector<SupportTriple> triples;
  bool coprime = false;
  /// coprime implies triples == {(empty, nu, 0)}
  bool unique_empty() const {
    return triples.size() == 1 && triples[0].type.is_empty() && triples[0].k == 0;
  }
};

/// All (T subset S, 0 <= l < e' n_T, k) with l N / (n_T e') = nu - k N, for
/// |k| <= e' n_T + 1 and e = N / e'.
inline SupportFilterResult support_filter(int big_n, int e_prime, int nu) {
  if (big_n < 1 || e_prime < 1) throw std::invalid_argument("support_filter: N and e' must be positive");
  if (big_n % e_prime != 0) throw std::invalid_argument("support_filter: e' must divide N");
  if (nu < 0 || nu >= big_n) throw std::invalid_argument("support_filter: nu must lie in [0, N)");
  const int e = big_n / e_prime;
  SupportFilterResult r;
  r.coprime = std::gcd(nu, big_n) == 1;
  for (const auto& t : weyl::standard_subsets(e)) {
    const int n = weyl::period_and_n(t).n;
    const long long step = big_n / (static_cast<long long>(n) * e_prime);  // = u_T
    const long long kmax = static_cast<long long>(e_prime) * n + 1;
    for (int l = 0; l < e_prime * n; ++l)
      for (long long k = -kmax; k <= kmax; ++k)
        if (l * step == nu - k * big_n) r.triples.push_back({t, l, k});
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

inline nlohmann::json element_json(const ExtAffineElt& x) {
  return {{"translation", x.translation()}, {"permutation", x.finite_part().images()}};
}

inline nlohmann::json coefficient_json(const Polynomial& c) {
  if (c.is_constant()) return c.constant_term().str();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : c.coefficients()) arr.push_back(a.str());
  return arr;
}

inline nlohmann::json to_json(const HeckeElt& h) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [x, c] : h.terms()) arr.push_back({{"element", element_json(x)}, {"coefficient", coefficient_json(c)}});
  return arr;
}

inline nlohmann::json to_json(const CentralHeckeElt& h) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [x, c] : h.terms()) arr.push_back({{"element", element_json(x)}, {"coefficient", coefficient_json(c)}});
  return arr;
}

}  // namespace hecke_forge::pseudocoef
