#pragma once

// Representation machinery for the finite groups GL(e, F_q): induced modules,
// the intertwining algebra H(G, sigma|B) with sigma = chi o det (the rank-one
// case f = 1), its idempotents, and the finite trace formulas built on them.

#include "hecke_forge/finglq.hpp"
#include "hecke_forge/rational.hpp"
#include "hecke_forge/weyl.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke_forge::repth {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using finglq::GLMatrix;
using finglq::GroupPtr;
using finglq::MatrixGroup;

class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalars: exact rationals when chi is real-valued, complex doubles otherwise.
// ---------------------------------------------------------------------------

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational conj(const Rational& x) { return x; }
  static Complex to_complex(const Rational& x) { return {to_double(x), 0.0}; }
  static double abs(const Rational& x) { return std::abs(to_double(x)); }
  static Rational chi(const finglq::FiniteField& f, int k, std::uint8_t a) {
    return Rational(finglq::character_sign(f, k, a));
  }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static double abs(const Complex& x) { return std::abs(x); }
  static Complex chi(const finglq::FiniteField& f, int k, std::uint8_t a) { return finglq::character(f, k, a); }
};

inline Complex chi_det(const GLMatrix& g, int k) { return finglq::character(g.field(), k, g.det()); }

// ---------------------------------------------------------------------------
// Representations and class functions
// ---------------------------------------------------------------------------

/// Matrix representation of an explicit finite group, one matrix per element.
struct FinRep {
  GroupPtr group;
  std::vector<CMatrix> matrices;

  int dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
  const CMatrix& operator()(std::uint32_t g) const { return matrices[g]; }
};

/// Largest deviation from pi(a) pi(b) = pi(ab) over all pairs (or `samples`
/// random pairs when samples > 0).
inline double homomorphism_defect(const FinRep& rep, std::size_t samples = 0, unsigned seed = 7) {
  const MatrixGroup& g = *rep.group;
  double worst = 0;
  auto check = [&](std::uint32_t a, std::uint32_t b) {
    worst = std::max(worst, (rep(a) * rep(b) - rep(g.mul(a, b))).cwiseAbs().maxCoeff());
  };
  if (samples == 0) {
    for (std::uint32_t a = 0; a < g.order(); ++a)
      for (std::uint32_t b = 0; b < g.order(); ++b) check(a, b);
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g.order() - 1));
    for (std::size_t i = 0; i < samples; ++i) check(pick(rng), pick(rng));
  }
  return worst;
}

/// One-dimensional representation g -> chi_k(det g) of any matrix group.
inline FinRep det_character_rep(GroupPtr group, int k) {
  FinRep rep{group, {}};
  rep.matrices.reserve(group->order());
  for (const auto& g : group->elements()) rep.matrices.push_back(CMatrix::Constant(1, 1, chi_det(g, k)));
  return rep;
}

/// Character of the torus part of a Borel-type subgroup: b -> prod_i chi_{k_i}(b_ii).
inline FinRep diagonal_character_rep(GroupPtr group, const std::vector<int>& ks) {
  FinRep rep{group, {}};
  for (const auto& g : group->elements()) {
    Complex v = 1;
    for (int i = 0; i < g.rank(); ++i) v *= finglq::character(g.field(), ks.at(i), g.at(i, i));
    rep.matrices.push_back(CMatrix::Constant(1, 1, v));
  }
  return rep;
}

/// Complex-valued function on conjugacy classes.
struct ClassFunction {
  GroupPtr group;
  std::vector<Complex> values;  // indexed by class id

  Complex operator()(std::uint32_t g) const { return values[group->classes().class_of[g]]; }
};

inline ClassFunction character_of(const FinRep& rep) {
  const auto& cls = rep.group->classes();
  ClassFunction chi{rep.group, {}};
  for (std::uint32_t r : cls.reps) chi.values.push_back(rep(r).trace());
  return chi;
}

/// (1/|G|) sum_g a(g) conj(b(g)).
inline Complex inner_product(const ClassFunction& a, const ClassFunction& b) {
  const auto& cls = a.group->classes();
  Complex acc = 0;
  for (std::size_t c = 0; c < cls.reps.size(); ++c)
    acc += static_cast<double>(cls.sizes[c]) * a.values[c] * std::conj(b.values[c]);
  return acc / static_cast<double>(a.group->order());
}

/// Class representative, class size, real and imaginary parts.
inline std::string character_table_csv(const ClassFunction& chi) {
  const auto& cls = chi.group->classes();
  std::string out = "class_representative,class_size,value_re,value_im\n";
  char buf[64];
  for (std::size_t c = 0; c < cls.reps.size(); ++c) {
    out += "\"" + chi.group->element(cls.reps[c]).str() + "\"," + std::to_string(cls.sizes[c]) + ",";
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", chi.values[c].real() + 0.0, chi.values[c].imag() + 0.0);
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Induction
// ---------------------------------------------------------------------------

/// Right cosets H g of a subgroup H inside G.
struct CosetData {
  std::vector<std::uint32_t> reps;      // g_j, indices in G
  std::vector<std::uint32_t> coset_of;  // per element of G
  std::vector<std::uint32_t> h_of;      // g = h * g_{coset_of[g]}, h as an index in H
};

inline CosetData right_cosets(const MatrixGroup& h, const MatrixGroup& g) {
  const std::uint32_t none = ~0u;
  CosetData cd;
  cd.coset_of.assign(g.order(), none);
  cd.h_of.assign(g.order(), none);
  std::vector<std::uint32_t> h_in_g(h.order());
  for (std::uint32_t i = 0; i < h.order(); ++i) {
    auto idx = g.index_of(h.element(i));
    if (!idx) throw std::invalid_argument("right_cosets: H is not contained in G");
    h_in_g[i] = *idx;
  }
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (cd.coset_of[x] != none) continue;
    const auto j = static_cast<std::uint32_t>(cd.reps.size());
    cd.reps.push_back(x);
    for (std::uint32_t i = 0; i < h.order(); ++i) {
      const std::uint32_t y = g.mul(h_in_g[i], x);
      cd.coset_of[y] = j;
      cd.h_of[y] = i;
    }
  }
  return cd;
}

/// Induced module with its coset bookkeeping.
struct InducedRep {
  FinRep rep;
  FinRep sigma;
  CosetData cosets;
};

/// Functions f: G -> V_sigma with f(hg) = sigma(h) f(g), G acting by right
/// translation; coordinates are the values at the coset representatives.
inline InducedRep induce(const FinRep& sigma, GroupPtr g) {
  const MatrixGroup& h = *sigma.group;
  if (h.order() * 0 + g->order() > finglq::max_group_order())
    throw finglq::SizeLimitExceeded("induce: group order exceeds the cap");
  InducedRep out{{g, {}}, sigma, right_cosets(h, *g)};
  const int d = sigma.dim();
  const auto m = static_cast<int>(out.cosets.reps.size());
  out.rep.matrices.reserve(g->order());
  for (std::uint32_t y = 0; y < g->order(); ++y) {
    CMatrix mat = CMatrix::Zero(m * d, m * d);
    for (int i = 0; i < m; ++i) {
      const std::uint32_t z = g->mul(out.cosets.reps[i], y);
      const std::uint32_t j = out.cosets.coset_of[z];
      mat.block(i * d, j * d, d, d) = sigma(out.cosets.h_of[z]);
    }
    out.rep.matrices.push_back(std::move(mat));
  }
  return out;
}

/// Image of a projector commuting with the action, as a representation.
inline FinRep restrict_to_image(const FinRep& rep, const CMatrix& projector, double tol = 1e-9) {
  Eigen::ColPivHouseholderQR<CMatrix> qr(projector);
  qr.setThreshold(tol);
  const auto r = static_cast<int>(qr.rank());
  FinRep out{rep.group, {}};
  if (r == 0) return out;
  const CMatrix q = qr.householderQ() * CMatrix::Identity(projector.rows(), r);
  // q has orthonormal columns spanning the image; q^* q = 1.
  out.matrices.reserve(rep.matrices.size());
  for (const auto& m : rep.matrices) out.matrices.push_back(q.adjoint() * m * q);
  return out;
}

/// (chi(1)/|G|) sum_g conj(chi(g)) pi(g).
inline CMatrix isotypic_projector(const FinRep& rep, const ClassFunction& chi) {
  const auto n = rep.dim();
  CMatrix p = CMatrix::Zero(n, n);
  for (std::uint32_t g = 0; g < rep.group->order(); ++g) p += std::conj(chi(g)) * rep(g);
  return p * (chi(rep.group->identity()) / static_cast<double>(rep.group->order()));
}

/// G-invariant Hermitian form obtained by averaging the standard one.
inline CMatrix invariant_form(const FinRep& rep) {
  const auto n = rep.dim();
  CMatrix m = CMatrix::Zero(n, n);
  for (const auto& a : rep.matrices) m += a.adjoint() * a;
  return m / static_cast<double>(rep.matrices.size());
}

// ---------------------------------------------------------------------------
// Bruhat decomposition of GL(e, q)
// ---------------------------------------------------------------------------

/// How W_0 is embedded in G when building the basis functions.
enum class WeylLift {
  determinant_one,     // permutation matrix with first column scaled by sign(w)
  permutation_matrix,  // the bare permutation matrix
};

struct BruhatData {
  int e = 1;
  int q = 2;
  GroupPtr group;
  GroupPtr borel;
  std::vector<weyl::FinPermutation> weyl;  // lexicographic
  std::vector<std::uint32_t> lifts;        // determinant-one lifts, indices in G
  std::vector<std::uint32_t> perm_lifts;   // bare permutation matrices
  std::vector<std::uint16_t> cell_of;      // g in B w B
  std::vector<std::uint32_t> borel_in_g;
  CosetData cosets;                        // B \ G

  std::size_t cell_index(const weyl::FinPermutation& w) const {
    for (std::size_t i = 0; i < weyl.size(); ++i)
      if (weyl[i] == w) return i;
    throw std::invalid_argument("BruhatData: unknown permutation");
  }
};

/// Cells B w B found by enumerating b1 w b2; cached per (e, q).
inline std::shared_ptr<const BruhatData> bruhat_data(int e, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const BruhatData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({e, q}); it != cache.end()) return it->second;
  }
  auto bd = std::make_shared<BruhatData>();
  bd->e = e;
  bd->q = q;
  bd->group = finglq::general_linear(e, q);
  bd->borel = finglq::enumerate_group(e, q, finglq::SubgroupSpec::borel());
  const auto& f = bd->group->field();
  const MatrixGroup& g = *bd->group;
  bd->weyl = weyl::all_permutations(e);
  for (const auto& w : bd->weyl) {
    bd->lifts.push_back(*g.index_of(finglq::weyl_lift(f, w.images(), w.sign())));
    bd->perm_lifts.push_back(*g.index_of(finglq::permutation_matrix(f, w.images())));
  }
  for (const auto& b : bd->borel->elements()) bd->borel_in_g.push_back(*g.index_of(b));
  const std::uint16_t none = 0xffff;
  bd->cell_of.assign(g.order(), none);
  for (std::size_t c = 0; c < bd->weyl.size(); ++c)
    for (std::uint32_t b1 : bd->borel_in_g) {
      const std::uint32_t left = g.mul(b1, bd->lifts[c]);
      for (std::uint32_t b2 : bd->borel_in_g) bd->cell_of[g.mul(left, b2)] = static_cast<std::uint16_t>(c);
    }
  for (auto c : bd->cell_of)
    if (c == none) throw std::logic_error("bruhat_data: cells do not cover G");
  bd->cosets = right_cosets(*bd->borel, g);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(e, q), bd).first->second;
}

// ---------------------------------------------------------------------------
// Intertwining algebra H(G, sigma|B), sigma = chi_k o det
// ---------------------------------------------------------------------------

/// Scalar function on G (End of the one-dimensional space of sigma).
template <class S>
class FinHeckeElt {
 public:
  FinHeckeElt(std::shared_ptr<const BruhatData> ctx, int chi) : ctx_(std::move(ctx)), chi_(chi), values_(ctx_->group->order(), S(0)) {}

  const BruhatData& context() const { return *ctx_; }
  std::shared_ptr<const BruhatData> context_ptr() const { return ctx_; }
  int chi() const { return chi_; }
  const std::vector<S>& values() const { return values_; }
  std::vector<S>& values() { return values_; }
  const S& operator()(std::uint32_t g) const { return values_[g]; }
  S& operator()(std::uint32_t g) { return values_[g]; }

  bool is_zero() const {
    for (const auto& v : values_)
      if (ScalarTraits<S>::abs(v) > 0) return false;
    return true;
  }

  FinHeckeElt& operator+=(const FinHeckeElt& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  FinHeckeElt& operator-=(const FinHeckeElt& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  FinHeckeElt& operator*=(const S& s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend FinHeckeElt operator+(FinHeckeElt a, const FinHeckeElt& b) { return a += b; }
  friend FinHeckeElt operator-(FinHeckeElt a, const FinHeckeElt& b) { return a -= b; }
  friend FinHeckeElt operator*(const S& s, FinHeckeElt a) { return a *= s; }
  friend bool operator==(const FinHeckeElt& a, const FinHeckeElt& b) { return a.values_ == b.values_; }

  double max_abs_diff(const FinHeckeElt& o) const {
    double m = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, ScalarTraits<S>::abs(values_[i] - o.values_[i]));
    return m;
  }

  Complex complex_at(std::uint32_t g) const { return ScalarTraits<S>::to_complex(values_[g]); }

 private:
  std::shared_ptr<const BruhatData> ctx_;
  int chi_;
  std::vector<S> values_;
};

template <class S>
S chi_value(const BruhatData& bd, int k, std::uint8_t a) {
  return ScalarTraits<S>::chi(bd.group->field(), k, a);
}

/// The basis function attached to w:
///   f_w(p1 w p2) = (1/|B|) sigma(p1) T_w sigma(p2), zero off B w B,
/// built by running over all p1, p2 in B.  Throws if the formula is not
/// well defined on the cell.
template <class S>
FinHeckeElt<S> finite_hecke_basis_element(std::shared_ptr<const BruhatData> bd, int chi, std::size_t w_index,
                                          WeylLift lift = WeylLift::determinant_one) {
  FinHeckeElt<S> f(bd, chi);
  const MatrixGroup& g = *bd->group;
  const S inv_b = S(1) / S(static_cast<long long>(bd->borel->order()));
  const std::uint32_t wdot = (lift == WeylLift::determinant_one) ? bd->lifts[w_index] : bd->perm_lifts[w_index];
  std::vector<bool> set(g.order(), false);
  std::vector<S> sig;
  sig.reserve(bd->borel->order());
  for (const auto& b : bd->borel->elements()) sig.push_back(chi_value<S>(*bd, chi, b.det()));
  for (std::size_t i = 0; i < bd->borel_in_g.size(); ++i) {
    const std::uint32_t left = g.mul(bd->borel_in_g[i], wdot);
    for (std::size_t j = 0; j < bd->borel_in_g.size(); ++j) {
      const std::uint32_t x = g.mul(left, bd->borel_in_g[j]);
      const S v = sig[i] * sig[j] * inv_b;
      if (set[x]) {
        if (ScalarTraits<S>::abs(f(x) - v) > 1e-12) throw std::logic_error("finite_hecke_basis: not well defined");
      } else {
        f(x) = v;
        set[x] = true;
      }
    }
  }
  return f;
}

/// All e! basis functions, ordered as bruhat_data(e, q)->weyl.
template <class S>
std::vector<FinHeckeElt<S>> finite_hecke_basis(int e, int q, int chi, WeylLift lift = WeylLift::determinant_one) {
  auto bd = bruhat_data(e, q);
  std::vector<FinHeckeElt<S>> out;
  for (std::size_t i = 0; i < bd->weyl.size(); ++i) out.push_back(finite_hecke_basis_element<S>(bd, chi, i, lift));
  return out;
}

/// (a * b)(g) = sum_x a(x) b(x^{-1} g), counting measure, at every g.
template <class S>
FinHeckeElt<S> convolve(const FinHeckeElt<S>& a, const FinHeckeElt<S>& b) {
  const MatrixGroup& g = *a.context().group;
  FinHeckeElt<S> out(a.context_ptr(), a.chi());
  std::vector<std::uint32_t> supp_b;
  for (std::uint32_t y = 0; y < g.order(); ++y)
    if (ScalarTraits<S>::abs(b(y)) > 0) supp_b.push_back(y);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (!(ScalarTraits<S>::abs(a(x)) > 0)) continue;
    for (std::uint32_t y : supp_b) out(g.mul(x, y)) += a(x) * b(y);
  }
  return out;
}

/// Same product for B-bi-equivariant inputs: evaluated on the Weyl lifts and
/// extended by equivariance, O(|W| |G|).
template <class S>
FinHeckeElt<S> convolve_equivariant(const FinHeckeElt<S>& a, const FinHeckeElt<S>& b) {
  const BruhatData& bd = a.context();
  const MatrixGroup& g = *bd.group;
  std::vector<S> at_lift(bd.weyl.size(), S(0));
  for (std::size_t c = 0; c < bd.weyl.size(); ++c) {
    const std::uint32_t w = bd.lifts[c];
    S acc(0);
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      if (!(ScalarTraits<S>::abs(a(x)) > 0)) continue;
      acc += a(x) * b(g.mul(g.inverse(x), w));
    }
    at_lift[c] = acc;
  }
  FinHeckeElt<S> out(a.context_ptr(), a.chi());
  // g = p1 w p2 with det(w) = 1, so sigma(p1) sigma(p2) = chi(det g).
  for (std::uint32_t x = 0; x < g.order(); ++x)
    out(x) = chi_value<S>(bd, a.chi(), g.element(x).det()) * at_lift[bd.cell_of[x]];
  return out;
}

/// f(b1 g b2) = sigma(b1) f(g) sigma(b2) for all b1, b2 in B, g in G.
template <class S>
bool is_bi_equivariant(const FinHeckeElt<S>& f, double tol = 1e-12) {
  const BruhatData& bd = f.context();
  const MatrixGroup& g = *bd.group;
  for (std::uint32_t b1 : bd.borel_in_g)
    for (std::uint32_t b2 : bd.borel_in_g) {
      const S s = chi_value<S>(bd, f.chi(), g.element(b1).det()) * chi_value<S>(bd, f.chi(), g.element(b2).det());
      for (std::uint32_t x = 0; x < g.order(); ++x)
        if (ScalarTraits<S>::abs(f(g.mul(g.mul(b1, x), b2)) - s * f(x)) > tol) return false;
    }
  return true;
}

/// Coordinates of a bi-equivariant function in the basis f_w: the value at the
/// lift of w times |B|.
template <class S>
std::vector<S> basis_coordinates(const FinHeckeElt<S>& f, WeylLift lift = WeylLift::determinant_one) {
  const BruhatData& bd = f.context();
  std::vector<S> out;
  for (std::size_t c = 0; c < bd.weyl.size(); ++c) {
    const std::uint32_t w = (lift == WeylLift::determinant_one) ? bd.lifts[c] : bd.perm_lifts[c];
    const S sigma_w = (lift == WeylLift::determinant_one) ? S(1) : S(1);
    out.push_back(f(w) * sigma_w * S(static_cast<long long>(bd.borel->order())));
  }
  return out;
}

/// e_tau = (1 / p_{e-1}(q)) sum_w f_w, projecting onto the generalized trivial
/// constituent.
template <class S>
FinHeckeElt<S> e_tau(int e, int q, int chi, WeylLift lift = WeylLift::determinant_one) {
  auto basis = finite_hecke_basis<S>(e, q, chi, lift);
  FinHeckeElt<S> out(basis.front().context_ptr(), chi);
  for (const auto& f : basis) out += f;
  const Rational p = weyl::poincare_poly(e).evaluate(q);
  out *= S(1) / S(static_cast<long long>(p.convert_to<long long>()));
  return out;
}

/// Sign idempotent (q^N / p_{e-1}(q)) sum_w (-1/q)^{l(w)} f_w, N = e(e-1)/2,
/// projecting onto the Steinberg constituent.
template <class S>
FinHeckeElt<S> e_steinberg(int e, int q, int chi) {
  auto basis = finite_hecke_basis<S>(e, q, chi);
  const BruhatData& bd = basis.front().context();
  FinHeckeElt<S> out(basis.front().context_ptr(), chi);
  const long long n_pos = static_cast<long long>(e) * (e - 1) / 2;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int len = bd.weyl[i].length();
    long long qpow = 1;
    for (int k = 0; k < len; ++k) qpow *= q;
    S c = S(len % 2 == 0 ? 1 : -1) / S(qpow);
    out += c * basis[i];
  }
  long long qn = 1;
  for (long long k = 0; k < n_pos; ++k) qn *= q;
  const Rational p = weyl::poincare_poly(e).evaluate(q);
  out *= S(qn) / S(static_cast<long long>(p.convert_to<long long>()));
  return out;
}

/// The unit of the intertwining algebra: (1/|B|) sigma on B.
template <class S>
FinHeckeElt<S> hecke_unit(int e, int q, int chi) {
  auto bd = bruhat_data(e, q);
  return finite_hecke_basis_element<S>(bd, chi, bd->cell_index(weyl::FinPermutation::identity(e)));
}

// ---------------------------------------------------------------------------
// Induced module of sigma|B and the convolution action on it
// ---------------------------------------------------------------------------

/// Ind_B^G (chi o det); cached per (e, q, chi).
inline std::shared_ptr<const InducedRep> borel_induced(int e, int q, int chi) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const InducedRep>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({e, q, chi}); it != cache.end()) return it->second;
  }
  auto bd = bruhat_data(e, q);
  auto ind = std::make_shared<const InducedRep>(induce(det_character_rep(bd->borel, chi), bd->group));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_tuple(e, q, chi), ind).first->second;
}

/// Matrix of f -> phi * f on Ind, (phi * f)(g) = sum_x phi(x) f(x^{-1} g).
template <class S>
CMatrix hecke_operator(const FinHeckeElt<S>& phi, const InducedRep& ind) {
  const MatrixGroup& g = *ind.rep.group;
  const auto m = static_cast<int>(ind.cosets.reps.size());
  CMatrix op = CMatrix::Zero(m, m);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    const Complex v = phi.complex_at(x);
    if (v == Complex(0)) continue;
    const std::uint32_t xinv = g.inverse(x);
    for (int i = 0; i < m; ++i) {
      const std::uint32_t y = g.mul(xinv, ind.cosets.reps[i]);
      op(i, ind.cosets.coset_of[y]) += v * ind.sigma(ind.cosets.h_of[y])(0, 0);
    }
  }
  return op;
}

struct Subrep {
  FinRep rep;
  CMatrix projector;  // on the ambient induced module
  double norm = 0;    // <chi, chi>
};

/// V_e = e * Ind with the restricted action; checks idempotency and reports the
/// character norm (1 iff irreducible).
template <class S>
Subrep subrep_from_idempotent(const FinHeckeElt<S>& idem, const InducedRep& ind, double tol = 1e-9) {
  CMatrix p = hecke_operator(idem, ind);
  if (p.cwiseAbs().maxCoeff() <= tol) throw std::invalid_argument("subrep_from_idempotent: zero idempotent");
  if ((p * p - p).cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("subrep_from_idempotent: input is not idempotent");
  Subrep out{restrict_to_image(ind.rep, p, tol), p, 0};
  const ClassFunction chi = character_of(out.rep);
  out.norm = inner_product(chi, chi).real();
  return out;
}

// ---------------------------------------------------------------------------
// Trace formulas
// ---------------------------------------------------------------------------

/// (dim pi / |G|) sum_x <v, pi(x) T pi(x^{-1}) v> for the invariant form `form`.
inline Complex conj_avg(const CMatrix& t, const FinRep& rep, const CMatrix& form, const Eigen::VectorXcd& v) {
  const MatrixGroup& g = *rep.group;
  Complex acc = 0;
  const Eigen::VectorXcd mv = form * v;  // <v, u> = v^* M u
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    const Eigen::VectorXcd u = rep(x) * (t * (rep(g.inverse(x)) * v));
    acc += mv.dot(u);
  }
  return acc * (static_cast<double>(rep.dim()) / static_cast<double>(g.order()));
}

/// Unit vector for the invariant form.
inline Eigen::VectorXcd normalize(const CMatrix& form, Eigen::VectorXcd v) {
  const double n2 = v.dot(form * v).real();
  return v / std::sqrt(n2);
}

/// (dim pi / |G|) sum_x <v, pi(x gamma x^{-1}) v>: the character from a matrix
/// coefficient.
inline Complex coefficient_average(const FinRep& rep, const CMatrix& form, const Eigen::VectorXcd& v, std::uint32_t gamma) {
  const MatrixGroup& g = *rep.group;
  Complex acc = 0;
  const Eigen::VectorXcd mv = form * v;
  for (std::uint32_t x = 0; x < g.order(); ++x) acc += mv.dot(rep(g.conjugate(x, gamma)) * v);
  return acc * (static_cast<double>(rep.dim()) / static_cast<double>(g.order()));
}

struct TraceFormulaResult {
  Complex lhs;  // Tr pi_e(gamma)
  Complex rhs;
  double lambda1 = 0;
  int dim = 0;
};

/// Checks e(1) = lambda1 > 0 and e(x^{-1}) = conj(e(x)).
template <class S>
double check_trace_hypotheses(const FinHeckeElt<S>& e, double tol = 1e-9) {
  const MatrixGroup& g = *e.context().group;
  const Complex l1 = e.complex_at(g.identity());
  if (std::abs(l1.imag()) > tol || l1.real() <= 0) throw HypothesisViolation("trace formula: e(1) is not a positive scalar");
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (std::abs(e.complex_at(g.inverse(x)) - std::conj(e.complex_at(x))) > tol)
      throw HypothesisViolation("trace formula: e(x^{-1}) is not the adjoint of e(x)");
  return l1.real();
}

/// Tr pi_e(gamma) = (1/lambda1) (dim pi_e / dim sigma) (|H| / |G|) sum_{x in H\G} Tr e(x gamma x^{-1}),
/// with H = B, sigma = chi o det and pi_e the image of e on Ind.
template <class S>
TraceFormulaResult trace_formula_9_5(std::uint32_t gamma, const FinHeckeElt<S>& e, const InducedRep& ind) {
  const MatrixGroup& g = *ind.rep.group;
  const double lambda1 = check_trace_hypotheses(e);
  const CMatrix p = hecke_operator(e, ind);
  TraceFormulaResult r;
  r.lambda1 = lambda1;
  r.dim = static_cast<int>(std::lround(p.trace().real()));
  r.lhs = (ind.rep(gamma) * p).trace();
  Complex sum = 0;
  for (std::uint32_t x : ind.cosets.reps) sum += e.complex_at(g.conjugate(x, gamma));
  const double h = static_cast<double>(ind.sigma.group->order());
  r.rhs = sum * (static_cast<double>(r.dim) / ind.sigma.dim()) * (h / static_cast<double>(g.order())) / lambda1;
  return r;
}

/// sum_{x in G} [Tr e](x gamma x^{-1}).
template <class S>
Complex conjugation_sum(const FinHeckeElt<S>& e, std::uint32_t gamma) {
  const MatrixGroup& g = *e.context().group;
  Complex acc = 0;
  for (std::uint32_t x = 0; x < g.order(); ++x) acc += e.complex_at(g.conjugate(x, gamma));
  return acc;
}

/// Exact variant of conjugation_sum.
template <class S>
S conjugation_sum_exact(const FinHeckeElt<S>& e, std::uint32_t gamma) {
  const MatrixGroup& g = *e.context().group;
  S acc(0);
  for (std::uint32_t x = 0; x < g.order(); ++x) acc += e(g.conjugate(x, gamma));
  return acc;
}

/// Tr tau(gamma) = sum_{x in G} [Tr e_tau](x gamma x^{-1}).
inline Complex char_generalized_trivial(std::uint32_t gamma, int e, int q, int chi) {
  return conjugation_sum(e_tau<Complex>(e, q, chi), gamma);
}

/// Whole class function, one conjugation sum per class.
inline ClassFunction char_generalized_trivial(int e, int q, int chi) {
  const auto et = e_tau<Complex>(e, q, chi);
  const GroupPtr g = et.context().group;
  ClassFunction out{g, {}};
  for (std::uint32_t r : g->classes().reps) out.values.push_back(conjugation_sum(et, r));
  return out;
}

/// Character of Ind_P^G 1 at gamma: #{x in G : x^{-1} gamma x in P} / |P|.
inline double parabolic_permutation_character(const MatrixGroup& g, const finglq::SubgroupSpec& p, std::uint32_t gamma) {
  std::size_t count = 0;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (finglq::in_subgroup(g.element(g.conjugate(g.inverse(x), gamma)), p)) ++count;
  return static_cast<double>(count) / static_cast<double>(finglq::subgroup_order(g.rank(), g.q(), p));
}

/// chi_St = (chi o det) * sum_{T subset S} (-1)^{|T|} Ind_{P_T}^G 1.
inline ClassFunction steinberg_char(int e, int q, int chi) {
  const GroupPtr g = finglq::general_linear(e, q);
  ClassFunction out{g, {}};
  const auto types = weyl::standard_subsets(e);
  for (std::uint32_t r : g->classes().reps) {
    double acc = 0;
    for (const auto& t : types)
      acc += neg_one_pow(static_cast<long long>(t.size())) *
             parabolic_permutation_character(*g, finglq::SubgroupSpec::parahoric_image(t.nodes()), r);
    out.values.push_back(acc * chi_det(g->element(r), chi));
  }
  return out;
}

struct SignCheck {
  Complex tau;
  Complex steinberg;
  bool holds = false;
};

/// Tr tau(alpha) = (-1)^{e-1} Tr St(alpha) on elliptic regular alpha.
inline SignCheck alvis_curtis_sign_check(std::uint32_t gamma, int e, int q, int chi, double tol = 1e-8) {
  const GroupPtr g = finglq::general_linear(e, q);
  if (!finglq::elliptic_regular(g->element(gamma)))
    throw std::invalid_argument("alvis_curtis_sign_check: element is not elliptic regular");
  SignCheck sc;
  sc.tau = char_generalized_trivial(gamma, e, q, chi);
  sc.steinberg = steinberg_char(e, q, chi)(gamma);
  sc.holds = std::abs(sc.tau - static_cast<double>(neg_one_pow(e - 1)) * sc.steinberg) <= tol;
  return sc;
}

/// Steinberg constituent of Ind_B^G (chi o det), cut out by the isotypic
/// projector of its character.
inline FinRep steinberg_rep(int e, int q, int chi) {
  const auto ind = borel_induced(e, q, chi);
  return restrict_to_image(ind->rep, isotypic_projector(ind->rep, steinberg_char(e, q, chi)));
}

// ---------------------------------------------------------------------------
// Frobenius transport (finite analogue with sums for integrals)
// ---------------------------------------------------------------------------

/// Function G -> End(W) with W the space of sigma.
using MatrixFunction = std::vector<CMatrix>;

struct TransportSample {
  CMatrix direct;       // sum_x pi(x) phi f(x^{-1})
  CMatrix transported;  // Psi(Phi(phi) o f_*)
  double roundtrip_defect = 0;  // |Psi(Phi(phi)) - phi|
};

/// Element of Hom_H(sigma, pi) obtained by averaging `a` over H.
inline CMatrix average_intertwiner(const FinRep& pi, const FinRep& sigma, const std::vector<std::uint32_t>& h_in_g, const CMatrix& a) {
  const MatrixGroup& h = *sigma.group;
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  for (std::uint32_t i = 0; i < h.order(); ++i) out += pi(h_in_g[i]) * a * sigma(h.inverse(i));
  return out / static_cast<double>(h.order());
}

/// Element of H(G, sigma-check): f(h1 g h2) = sigma(h1) f(g) sigma(h2).
inline MatrixFunction average_hecke_function(const MatrixGroup& g, const FinRep& sigma, const std::vector<std::uint32_t>& h_in_g,
                                             const MatrixFunction& raw) {
  const MatrixGroup& h = *sigma.group;
  const auto d = sigma.dim();
  MatrixFunction out(g.order(), CMatrix::Zero(d, d));
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (raw[x].cwiseAbs().maxCoeff() == 0) continue;
    // raw supported at x contributes sigma(h1)^{-1} raw(x) sigma(h2)^{-1} at h1^{-1} x h2^{-1}.
    for (std::uint32_t i = 0; i < h.order(); ++i)
      for (std::uint32_t j = 0; j < h.order(); ++j) {
        const std::uint32_t y = g.mul(g.mul(h_in_g[h.inverse(i)], x), h_in_g[h.inverse(j)]);
        out[y] += sigma(h.inverse(i)) * raw[x] * sigma(h.inverse(j));
      }
  }
  const double n = static_cast<double>(h.order()) * static_cast<double>(h.order());
  for (auto& m : out) m /= n;
  return out;
}

/// phi . f computed both by the displayed sum and by transport through the
/// Frobenius maps Phi (Hom_H(sigma, pi) -> Hom_G(Ind, pi)) and Psi.
inline TransportSample frobenius_transport(const InducedRep& ind, const FinRep& pi, const CMatrix& phi, const MatrixFunction& f) {
  const MatrixGroup& g = *pi.group;
  const MatrixGroup& h = *ind.sigma.group;
  const auto d = ind.sigma.dim();
  TransportSample s;
  s.direct = CMatrix::Zero(pi.dim(), d);
  for (std::uint32_t x = 0; x < g.order(); ++x) s.direct += pi(x) * phi * f[g.inverse(x)];

  std::vector<std::uint32_t> h_in_g(h.order());
  for (std::uint32_t i = 0; i < h.order(); ++i) h_in_g[i] = *g.index_of(h.element(i));

  // Phi(phi)(F) = (1/|H|) sum_x pi(x) phi(F(x^{-1})), F in Ind as a function G -> W.
  auto big_phi = [&](const std::vector<Eigen::VectorXcd>& big_f) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(pi.dim());
    for (std::uint32_t x = 0; x < g.order(); ++x) acc += pi(x) * (phi * big_f[g.inverse(x)]);
    return Eigen::VectorXcd(acc / static_cast<double>(h.order()));
  };
  s.transported = CMatrix::Zero(pi.dim(), d);
  CMatrix roundtrip = CMatrix::Zero(pi.dim(), d);
  for (int k = 0; k < d; ++k) {
    const Eigen::VectorXcd w = Eigen::VectorXcd::Unit(d, k);
    // T_w: support H, T_w(h) = sigma(h) w.
    std::vector<Eigen::VectorXcd> tw(g.order(), Eigen::VectorXcd::Zero(d));
    for (std::uint32_t i = 0; i < h.order(); ++i) tw[h_in_g[i]] = ind.sigma(i) * w;
    roundtrip.col(k) = big_phi(tw);
    // (f * T_w)(y) = sum_{h in H} f(y h^{-1}) sigma(h) w.
    std::vector<Eigen::VectorXcd> conv(g.order(), Eigen::VectorXcd::Zero(d));
    for (std::uint32_t y = 0; y < g.order(); ++y)
      for (std::uint32_t i = 0; i < h.order(); ++i) conv[y] += f[g.mul(y, g.inverse(h_in_g[i]))] * tw[h_in_g[i]];
    s.transported.col(k) = big_phi(conv);
  }
  s.roundtrip_defect = (roundtrip - phi).cwiseAbs().maxCoeff();
  return s;
}

struct TransportReport {
  double max_defect = 0;            // direct vs transported
  double max_roundtrip_defect = 0;  // Psi o Phi = id
  double unit_defect = 0;           // phi . 1 = phi
  int pairs = 0;
};

/// Runs `pairs` random (phi, f) with pi = Ind_H^G sigma.
inline TransportReport frobenius_transport_check(const FinRep& sigma, GroupPtr g, int pairs = 20, unsigned seed = 12345) {
  const InducedRep ind = induce(sigma, g);
  const FinRep& pi = ind.rep;
  const MatrixGroup& h = *sigma.group;
  std::vector<std::uint32_t> h_in_g(h.order());
  for (std::uint32_t i = 0; i < h.order(); ++i) h_in_g[i] = *g->index_of(h.element(i));
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g->order() - 1));
  auto rand_matrix = [&](int r, int c) {
    CMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
  };
  const auto d = sigma.dim();
  TransportReport rep;
  // Unit of H(G, sigma-check) under counting measure: (1/|H|) sigma on H.
  MatrixFunction unit(g->order(), CMatrix::Zero(d, d));
  for (std::uint32_t i = 0; i < h.order(); ++i) unit[h_in_g[i]] = sigma(i) / static_cast<double>(h.order());
  for (int p = 0; p < pairs; ++p) {
    const CMatrix phi = average_intertwiner(pi, sigma, h_in_g, rand_matrix(pi.dim(), d));
    MatrixFunction raw(g->order(), CMatrix::Zero(d, d));
    for (int k = 0; k < 3; ++k) raw[pick(rng)] += rand_matrix(d, d);
    const MatrixFunction f = average_hecke_function(*g, sigma, h_in_g, raw);
    const TransportSample s = frobenius_transport(ind, pi, phi, f);
    rep.max_defect = std::max(rep.max_defect, (s.direct - s.transported).cwiseAbs().maxCoeff());
    rep.max_roundtrip_defect = std::max(rep.max_roundtrip_defect, s.roundtrip_defect);
    const TransportSample u = frobenius_transport(ind, pi, phi, unit);
    rep.unit_defect = std::max(rep.unit_defect, (u.direct - phi).cwiseAbs().maxCoeff());
    rep.unit_defect = std::max(rep.unit_defect, (u.transported - phi).cwiseAbs().maxCoeff());
    ++rep.pairs;
  }
  return rep;
}

}  // namespace hecke_forge::repth
