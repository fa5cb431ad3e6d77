#pragma once

// Iwahori-Hecke algebra of the extended affine Weyl group of GL_e in the T_w
// basis, with coefficients in Q[q], and its reduction modulo central
// translations against a central character value.

#include "hecke_forge/rational.hpp"
#include "hecke_forge/weyl.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hecke_forge::hecke {

using weyl::ExtAffineElt;
using weyl::RankMismatch;

/// Finitely supported combination of T_x, x in the extended affine Weyl group.
class HeckeElt {
 public:
  using Terms = std::map<ExtAffineElt, Polynomial>;

  explicit HeckeElt(int rank) : rank_(rank) {}

  static HeckeElt basis(const ExtAffineElt& x, Polynomial coeff = 1) {
    HeckeElt h(x.rank());
    h.add_term(x, std::move(coeff));
    return h;
  }
  static HeckeElt unit(int rank) { return basis(ExtAffineElt::identity(rank)); }

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  Polynomial coefficient(const ExtAffineElt& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Polynomial{} : it->second;
  }

  void add_term(const ExtAffineElt& x, const Polynomial& coeff) {
    if (x.rank() != rank_) throw RankMismatch("HeckeElt: rank mismatch");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(x, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HeckeElt& operator+=(const HeckeElt& o) {
    check_rank(o);
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
  }
  HeckeElt& operator-=(const HeckeElt& o) {
    check_rank(o);
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
  }
  HeckeElt& operator*=(const Polynomial& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [x, c] : terms_) c *= s;
    return *this;
  }
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(HeckeElt a, const Polynomial& s) { return a *= s; }
  friend HeckeElt operator*(const Polynomial& s, HeckeElt a) { return a *= s; }
  friend bool operator==(const HeckeElt& a, const HeckeElt& b) { return a.rank_ == b.rank_ && a.terms_ == b.terms_; }

  /// Specializes q to a number; coefficients become constant polynomials.
  HeckeElt evaluate_at(const Rational& q) const {
    HeckeElt out(rank_);
    for (const auto& [x, c] : terms_) out.add_term(x, c.evaluate(q));
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*T[" + x.str() + "]";
    }
    return out;
  }

 private:
  void check_rank(const HeckeElt& o) const {
    if (o.rank_ != rank_) throw RankMismatch("HeckeElt: rank mismatch");
  }

  int rank_;
  Terms terms_;
};

/// T_{s_node} * h via the quadratic relation.
inline HeckeElt left_mul_simple(int node, const HeckeElt& h) {
  const int e = h.rank();
  const ExtAffineElt s = ExtAffineElt::simple(node, e);
  const Polynomial q = Polynomial::x();
  const Polynomial q_minus_1 = q - Polynomial(1);
  HeckeElt out(e);
  for (const auto& [w, c] : h.terms()) {
    ExtAffineElt sw = s * w;
    if (!w.has_left_descent(node)) {
      out.add_term(sw, c);
    } else {
      out.add_term(sw, c * q);
      out.add_term(w, c * q_minus_1);
    }
  }
  return out;
}

/// T_{Pi^k} * h; length-zero elements act by relabelling.
inline HeckeElt left_mul_pi(long long k, const HeckeElt& h) {
  if (k == 0) return h;
  const ExtAffineElt p = ExtAffineElt::pi_power(k, h.rank());
  HeckeElt out(h.rank());
  for (const auto& [w, c] : h.terms()) out.add_term(p * w, c);
  return out;
}

/// Product in the Iwahori-Hecke algebra: each T_x on the left is expanded as
/// T_{Pi^k} T_{s_1} ... T_{s_r} along a reduced word and applied to b.
inline HeckeElt t_mul(const HeckeElt& a, const HeckeElt& b) {
  if (a.rank() != b.rank()) throw RankMismatch("t_mul: rank mismatch");
  HeckeElt out(a.rank());
  for (const auto& [x, c] : a.terms()) {
    const auto rw = weyl::reduced_word(x);
    HeckeElt acc = b;
    for (auto it = rw.word.rbegin(); it != rw.word.rend(); ++it) acc = left_mul_simple(*it, acc);
    acc = left_mul_pi(rw.pi_power, acc);
    acc *= c;
    out += acc;
  }
  return out;
}

inline HeckeElt operator*(const HeckeElt& a, const HeckeElt& b) { return t_mul(a, b); }

inline HeckeElt power(const HeckeElt& a, int k) {
  if (k < 0) throw std::invalid_argument("power: negative exponent");
  HeckeElt out = HeckeElt::unit(a.rank());
  for (int i = 0; i < k; ++i) out = t_mul(out, a);
  return out;
}

// ---------------------------------------------------------------------------
// Central reduction
// ---------------------------------------------------------------------------

/// Decomposition x = varpi^m * x0 with varpi = (1,...,1) and the total
/// translation of x0 in [0, e).
struct CentralSplit {
  long long shift = 0;
  ExtAffineElt representative;
};

inline CentralSplit central_split(const ExtAffineElt& x) {
  const int e = x.rank();
  const long long m = weyl::floor_div(x.pi_degree(), e);
  std::vector<int> lambda = x.translation();
  for (int& l : lambda) l -= static_cast<int>(m);
  return {m, ExtAffineElt(std::move(lambda), x.finite_part())};
}

/// Element of the algebra of functions f with f(varpi y) = omega^{-1} f(y),
/// stored by its values on canonical representatives.
class CentralHeckeElt {
 public:
  using Terms = std::map<ExtAffineElt, Polynomial>;

  CentralHeckeElt(int rank, Rational omega) : rank_(rank), omega_(std::move(omega)) {
    if (omega_ == 0) throw std::invalid_argument("CentralHeckeElt: omega must be nonzero");
  }

  int rank() const { return rank_; }
  const Rational& omega() const { return omega_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Polynomial coefficient(const ExtAffineElt& x) const {
    const auto split = central_split(x);
    auto it = terms_.find(split.representative);
    if (it == terms_.end()) return {};
    return it->second * Polynomial(pow(omega_, -split.shift));
  }

  /// Adds coeff * P_omega(T_x).
  void add_class(const ExtAffineElt& x, const Polynomial& coeff) {
    if (x.rank() != rank_) throw RankMismatch("CentralHeckeElt: rank mismatch");
    if (coeff.is_zero()) return;
    const auto split = central_split(x);
    const Polynomial c = coeff * Polynomial(pow(omega_, split.shift));
    auto [it, inserted] = terms_.try_emplace(split.representative, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Lift supported on canonical representatives.
  HeckeElt lift() const {
    HeckeElt h(rank_);
    for (const auto& [x, c] : terms_) h.add_term(x, c);
    return h;
  }

  CentralHeckeElt& operator+=(const CentralHeckeElt& o) {
    check(o);
    for (const auto& [x, c] : o.terms_) add_class(x, c);
    return *this;
  }
  CentralHeckeElt& operator-=(const CentralHeckeElt& o) {
    check(o);
    for (const auto& [x, c] : o.terms_) add_class(x, -c);
    return *this;
  }
  CentralHeckeElt& operator*=(const Polynomial& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [x, c] : terms_) c *= s;
    return *this;
  }
  friend CentralHeckeElt operator+(CentralHeckeElt a, const CentralHeckeElt& b) { return a += b; }
  friend CentralHeckeElt operator-(CentralHeckeElt a, const CentralHeckeElt& b) { return a -= b; }
  friend CentralHeckeElt operator*(CentralHeckeElt a, const Polynomial& s) { return a *= s; }
  friend bool operator==(const CentralHeckeElt& a, const CentralHeckeElt& b) {
    return a.rank_ == b.rank_ && a.omega_ == b.omega_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*[" + x.str() + "]";
    }
    return out;
  }

 private:
  void check(const CentralHeckeElt& o) const {
    if (o.rank_ != rank_) throw RankMismatch("CentralHeckeElt: rank mismatch");
    if (o.omega_ != omega_) throw std::invalid_argument("CentralHeckeElt: central character mismatch");
  }

  int rank_;
  Rational omega_;
  Terms terms_;
};

/// P_omega(f)(y) = sum_n omega^n f(varpi^n y).
inline CentralHeckeElt central_reduction(const HeckeElt& f, const Rational& omega_at_pi) {
  CentralHeckeElt out(f.rank(), omega_at_pi);
  for (const auto& [x, c] : f.terms()) out.add_class(x, c);
  return out;
}

/// Product in the quotient, computed through canonical lifts.
inline CentralHeckeElt central_mul(const CentralHeckeElt& a, const CentralHeckeElt& b) {
  if (a.rank() != b.rank()) throw RankMismatch("central_mul: rank mismatch");
  if (a.omega() != b.omega()) throw std::invalid_argument("central_mul: central character mismatch");
  return central_reduction(t_mul(a.lift(), b.lift()), a.omega());
}

// ---------------------------------------------------------------------------
// Structure constants
// ---------------------------------------------------------------------------

/// c(w1, w2, w3) with T_{w1} T_{w2} = sum_{w3} c(w1, w2, w3) T_{w3}, restricted
/// to the finite Weyl group and evaluated at q.
struct StructureConstant {
  weyl::FinPermutation w1, w2, w3;
  Rational value;

  friend bool operator==(const StructureConstant&, const StructureConstant&) = default;
};

using StructureTable = std::vector<StructureConstant>;

inline StructureTable finite_structure_constants(int e, const Rational& q) {
  StructureTable table;
  const auto perms = weyl::all_permutations(e);
  for (const auto& a : perms)
    for (const auto& b : perms) {
      const HeckeElt prod = t_mul(HeckeElt::basis(ExtAffineElt::finite(a)), HeckeElt::basis(ExtAffineElt::finite(b)));
      for (const auto& c : perms) {
        const Rational v = prod.coefficient(ExtAffineElt::finite(c)).evaluate(q);
        if (v != 0) table.push_back({a, b, c, v});
      }
    }
  return table;
}

/// CSV rows "w1,w2,w3,coefficient" with each element quoted as "translation;perm".
inline std::string structure_table_csv(const StructureTable& table) {
  std::string out = "w1,w2,w3,coefficient\n";
  auto fmt = [](const weyl::FinPermutation& w) { return "\"" + ExtAffineElt::finite(w).str() + "\""; };
  for (const auto& row : table) out += fmt(row.w1) + "," + fmt(row.w2) + "," + fmt(row.w3) + "," + row.value.str() + "\n";
  return out;
}

/// Random element with translations in [-spread, spread].
template <class Rng>
ExtAffineElt random_element(int e, int spread, Rng& rng) {
  std::uniform_int_distribution<int> tr(-spread, spread);
  std::vector<int> lambda(e);
  for (int& l : lambda) l = tr(rng);
  std::vector<int> images(e);
  for (int i = 0; i < e; ++i) images[i] = i + 1;
  std::shuffle(images.begin(), images.end(), rng);
  return {std::move(lambda), weyl::FinPermutation(std::move(images))};
}

}  // namespace hecke_forge::hecke
