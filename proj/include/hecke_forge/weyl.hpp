#pragma once

// Extended affine Weyl group of GL_e and the combinatorics of parahoric types.
//
// Elements are pairs (lambda, w) with lambda in Z^e and w in S_e, multiplied by
// (l1, w1)(l2, w2) = (l1 + w1.l2, w1 w2) where (w.l)_{w(i)} = l_i.  Each element
// is also an affine permutation of Z via the window f(i) = w(i) + e*lambda_{w(i)},
// i = 1..e, extended by f(i + e) = f(i) + e.  Affine nodes are Z/e; node 0 is the
// affine reflection s_0, nodes 1..e-1 the finite generators.

#include "hecke_forge/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke_forge::weyl {

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// floor(a / b) for b > 0.
constexpr long long floor_div(long long a, long long b) {
  long long qt = a / b;
  if ((a % b != 0) && (a < 0)) --qt;
  return qt;
}
constexpr long long floor_mod(long long a, long long b) { return a - b * floor_div(a, b); }

// ---------------------------------------------------------------------------
// Finite permutations
// ---------------------------------------------------------------------------

/// Permutation of {1..e} stored by its images.
class FinPermutation {
 public:
  FinPermutation() = default;
  explicit FinPermutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 1 || v > static_cast<int>(images_.size()) || seen[v - 1])
        throw std::invalid_argument("FinPermutation: images must be a permutation of 1..e");
      seen[v - 1] = true;
    }
  }

  static FinPermutation identity(int e) {
    std::vector<int> im(e);
    std::iota(im.begin(), im.end(), 1);
    return FinPermutation(std::move(im));
  }
  /// Transposition (i, i+1), 1 <= i < e.
  static FinPermutation simple(int i, int e) {
    if (i < 1 || i >= e) throw std::out_of_range("FinPermutation::simple: index out of range");
    auto p = identity(e);
    std::swap(p.images_[i - 1], p.images_[i]);
    return p;
  }

  int rank() const { return static_cast<int>(images_.size()); }
  /// Image of i in 1..e.
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  /// (a * b)(i) = a(b(i)).
  friend FinPermutation operator*(const FinPermutation& a, const FinPermutation& b) {
    if (a.rank() != b.rank()) throw RankMismatch("FinPermutation: rank mismatch");
    std::vector<int> im(a.images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.images_[b.images_[i] - 1];
    FinPermutation out;
    out.images_ = std::move(im);
    return out;
  }

  FinPermutation inverse() const {
    std::vector<int> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[images_[i] - 1] = static_cast<int>(i) + 1;
    FinPermutation out;
    out.images_ = std::move(im);
    return out;
  }

  int sign() const {
    std::vector<bool> seen(images_.size(), false);
    int s = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j] - 1) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  }

  /// Number of inversions, the Coxeter length in S_e.
  int length() const {
    int n = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
      for (std::size_t j = i + 1; j < images_.size(); ++j)
        if (images_[i] > images_[j]) ++n;
    return n;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i) + 1) return false;
    return true;
  }

  /// One-line notation, e.g. "2 1 3".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(images_[i]);
    }
    return out;
  }

  auto operator<=>(const FinPermutation&) const = default;

 private:
  std::vector<int> images_;
};

/// All permutations of {1..e}, lexicographic.
inline std::vector<FinPermutation> all_permutations(int e) {
  std::vector<int> im(e);
  std::iota(im.begin(), im.end(), 1);
  std::vector<FinPermutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Extended affine Weyl group
// ---------------------------------------------------------------------------

class ExtAffineElt {
 public:
  ExtAffineElt() = default;
  ExtAffineElt(std::vector<int> translation, FinPermutation finite_part)
      : translation_(std::move(translation)), perm_(std::move(finite_part)) {
    if (static_cast<int>(translation_.size()) != perm_.rank())
      throw RankMismatch("ExtAffineElt: translation and permutation ranks differ");
  }

  static ExtAffineElt identity(int e) { return {std::vector<int>(e, 0), FinPermutation::identity(e)}; }
  static ExtAffineElt translation(std::vector<int> lambda) {
    const int e = static_cast<int>(lambda.size());
    return {std::move(lambda), FinPermutation::identity(e)};
  }
  static ExtAffineElt finite(const FinPermutation& w) { return {std::vector<int>(w.rank(), 0), w}; }

  /// Builds the element whose window is f(1..e).
  static ExtAffineElt from_window(const std::vector<long long>& window) {
    const int e = static_cast<int>(window.size());
    std::vector<int> images(e), lambda(e);
    for (int i = 0; i < e; ++i) {
      const long long r = floor_mod(window[i] - 1, e) + 1;
      images[i] = static_cast<int>(r);
      lambda[r - 1] = static_cast<int>((window[i] - r) / e);
    }
    return {std::move(lambda), FinPermutation(std::move(images))};
  }

  /// Length-zero generator: translation e_1 with the cycle 1 -> 2 -> ... -> e -> 1.
  /// Its window is the shift f(i) = i + 1.
  static ExtAffineElt pi(int e) {
    std::vector<int> im(e);
    for (int i = 0; i < e; ++i) im[i] = (i + 1) % e + 1;
    std::vector<int> lambda(e, 0);
    lambda[0] = 1;
    return {std::move(lambda), FinPermutation(std::move(im))};
  }

  static ExtAffineElt pi_power(long long k, int e) {
    std::vector<long long> w(e);
    for (int i = 0; i < e; ++i) w[i] = i + 1 + k;
    return from_window(w);
  }

  /// Simple affine reflection at node i in Z/e (e >= 2); node 0 swaps 0 and 1.
  static ExtAffineElt simple(int node, int e) {
    if (e < 2) throw std::out_of_range("ExtAffineElt::simple: rank 1 has no reflections");
    node = static_cast<int>(floor_mod(node, e));
    std::vector<long long> w(e);
    for (int i = 0; i < e; ++i) w[i] = i + 1;
    if (node == 0) {
      w[0] = 0;
      w[e - 1] = e + 1;
    } else {
      std::swap(w[node - 1], w[node]);
    }
    return from_window(w);
  }

  int rank() const { return perm_.rank(); }
  const std::vector<int>& translation() const { return translation_; }
  const FinPermutation& finite_part() const { return perm_; }

  /// Sum of translation coordinates; x = Pi^k * (affine Weyl element) with k this value.
  long long pi_degree() const { return std::accumulate(translation_.begin(), translation_.end(), 0LL); }

  /// f(i) for any integer i.
  long long apply(long long i) const {
    const int e = rank();
    const long long r = floor_mod(i - 1, e) + 1;
    const long long m = (i - r) / e;
    const int wi = perm_(static_cast<int>(r));
    return wi + static_cast<long long>(e) * translation_[wi - 1] + m * e;
  }

  std::vector<long long> window() const {
    std::vector<long long> w(rank());
    for (int i = 0; i < rank(); ++i) w[i] = apply(i + 1);
    return w;
  }

  friend ExtAffineElt operator*(const ExtAffineElt& a, const ExtAffineElt& b) {
    if (a.rank() != b.rank()) throw RankMismatch("ExtAffineElt: rank mismatch");
    std::vector<int> lambda(a.translation_);
    for (int i = 1; i <= a.rank(); ++i) lambda[a.perm_(i) - 1] += b.translation_[i - 1];
    return {std::move(lambda), a.perm_ * b.perm_};
  }

  ExtAffineElt inverse() const {
    const FinPermutation winv = perm_.inverse();
    std::vector<int> lambda(rank());
    // (l, w)^{-1} = (-w^{-1}.l, w^{-1})
    for (int i = 1; i <= rank(); ++i) lambda[winv(i) - 1] = -translation_[i - 1];
    return {std::move(lambda), winv};
  }

  /// Number of affine-root inversions: pairs (i, j), 1 <= i <= e, i < j in Z, with
  /// f(i) > f(j).  For window positions i < j this is |floor((f(j) - f(i)) / e)|.
  int length() const {
    const int e = rank();
    const auto w = window();
    long long n = 0;
    for (int i = 0; i < e; ++i)
      for (int j = i + 1; j < e; ++j) {
        const long long d = floor_div(w[j] - w[i], e);
        n += d < 0 ? -d : d;
      }
    return static_cast<int>(n);
  }

  /// True iff l(x s_node) < l(x).
  bool has_right_descent(int node) const { return apply(node) > apply(node + 1); }
  /// True iff l(s_node x) < l(x).
  bool has_left_descent(int node) const {
    const ExtAffineElt inv = inverse();
    return inv.apply(node) > inv.apply(node + 1);
  }

  bool is_length_zero() const { return length() == 0; }

  /// "l1,...,le;p1 ... pe"
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < translation_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(translation_[i]);
    }
    return out + ';' + perm_.str();
  }

  auto operator<=>(const ExtAffineElt&) const = default;

 private:
  std::vector<int> translation_;
  FinPermutation perm_;
};

/// x = Pi^k * s_{word[0]} * ... * s_{word[r-1]}, with r = l(x).
struct ReducedWord {
  long long pi_power = 0;
  std::vector<int> word;
};

inline ReducedWord reduced_word(ExtAffineElt x) {
  const int e = x.rank();
  ReducedWord rw;
  std::vector<int> reversed;
  for (bool found = true; found;) {
    found = false;
    for (int node = 0; node < e && e >= 2; ++node) {
      if (x.has_right_descent(node)) {
        x = x * ExtAffineElt::simple(node, e);
        reversed.push_back(node);
        found = true;
        break;
      }
    }
  }
  rw.pi_power = x.pi_degree();
  rw.word.assign(reversed.rbegin(), reversed.rend());
  return rw;
}

/// Parses either coordinates "l1,...,le;p1 ... pe" or a word such as
/// "s1*s0*pi^-2" (factors separated by '*', 'pi' and 'id' allowed).
inline ExtAffineElt parse_element(const std::string& text, int e) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string{};
    const auto en = s.find_last_not_of(" \t");
    return s.substr(b, en - b + 1);
  };
  const std::string t = trim(text);
  if (t.find(';') != std::string::npos) {
    const auto semi = t.find(';');
    std::vector<int> lambda, images;
    std::string part = t.substr(0, semi);
    std::replace(part.begin(), part.end(), ',', ' ');
    std::istringstream ls(part);
    for (int v; ls >> v;) lambda.push_back(v);
    std::string rest = t.substr(semi + 1);
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream ps(rest);
    for (int v; ps >> v;) images.push_back(v);
    if (static_cast<int>(lambda.size()) != e || static_cast<int>(images.size()) != e)
      throw std::invalid_argument("parse_element: expected " + std::to_string(e) + " coordinates in '" + text + "'");
    return {std::move(lambda), FinPermutation(std::move(images))};
  }
  ExtAffineElt x = ExtAffineElt::identity(e);
  std::istringstream ss(t);
  for (std::string tok; std::getline(ss, tok, '*');) {
    tok = trim(tok);
    if (tok.empty() || tok == "id" || tok == "1") continue;
    if (tok.rfind("pi", 0) == 0) {
      long long k = 1;
      if (tok.size() > 2) {
        if (tok[2] != '^') throw std::invalid_argument("parse_element: bad token '" + tok + "'");
        k = std::stoll(tok.substr(3));
      }
      x = x * ExtAffineElt::pi_power(k, e);
    } else if (tok[0] == 's') {
      x = x * ExtAffineElt::simple(std::stoi(tok.substr(1)), e);
    } else {
      throw std::invalid_argument("parse_element: bad token '" + tok + "'");
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Parahoric types
// ---------------------------------------------------------------------------

/// Proper subset T of the affine node set Z/e.
class ParahoricType {
 public:
  ParahoricType(int rank, std::vector<int> nodes) : rank_(rank), nodes_(std::move(nodes)) {
    if (rank_ < 1) throw std::invalid_argument("ParahoricType: rank must be >= 1");
    for (int& t : nodes_) t = static_cast<int>(floor_mod(t, rank_));
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    if (static_cast<int>(nodes_.size()) == rank_)
      throw std::invalid_argument("ParahoricType: T must be a proper subset of Z/e");
  }

  static ParahoricType empty(int rank) { return {rank, {}}; }
  /// T = S = {1..e-1}.
  static ParahoricType all_finite(int rank) {
    std::vector<int> n(rank - 1);
    std::iota(n.begin(), n.end(), 1);
    return {rank, std::move(n)};
  }

  int rank() const { return rank_; }
  const std::vector<int>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool is_empty() const { return nodes_.empty(); }
  bool contains(int node) const { return std::binary_search(nodes_.begin(), nodes_.end(), node); }
  /// Avoids the affine node 0, i.e. T is a subset of S.
  bool is_standard() const { return !contains(0); }

  /// d_T = e - 1 - |T|, dimension of the fixed simplex.
  int dim() const { return rank_ - 1 - static_cast<int>(nodes_.size()); }

  /// Nodes not in T, sorted.
  std::vector<int> complement() const {
    std::vector<int> c;
    for (int i = 0; i < rank_; ++i)
      if (!contains(i)) c.push_back(i);
    return c;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(nodes_[i]);
    }
    return out + "}";
  }

  auto operator<=>(const ParahoricType&) const = default;

 private:
  int rank_ = 1;
  std::vector<int> nodes_;
};

/// Every node t goes to t + j mod e.
inline ParahoricType rotate(const ParahoricType& t, long long j) {
  std::vector<int> n;
  n.reserve(t.size());
  for (int x : t.nodes()) n.push_back(static_cast<int>(floor_mod(x + j, t.rank())));
  return {t.rank(), std::move(n)};
}

struct PeriodAndN {
  int period = 1;  // u_T
  int n = 1;       // n_T = e / u_T
};

/// u_T: least positive rotation fixing T; z_T = Pi^{u_T} and z_T^{n_T} is the
/// central uniformizer.
inline PeriodAndN period_and_n(const ParahoricType& t) {
  for (int j = 1; j <= t.rank(); ++j)
    if (rotate(t, j) == t) return {j, t.rank() / j};
  return {t.rank(), 1};  // unreachable: rotation by e is the identity
}

/// eps_T: sign of the permutation c -> c + u_T of the complement of T,
/// read in the sorted order of the complement.
inline int epsilon(const ParahoricType& t) {
  const auto comp = t.complement();
  const int u = period_and_n(t).period;
  std::vector<int> images(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const int target = static_cast<int>(floor_mod(comp[i] + u, t.rank()));
    const auto pos = std::lower_bound(comp.begin(), comp.end(), target) - comp.begin();
    images[i] = static_cast<int>(pos) + 1;
  }
  return FinPermutation(std::move(images)).sign();
}

/// z_T = Pi^{u_T}.
inline ExtAffineElt z_element(const ParahoricType& t) { return ExtAffineElt::pi_power(period_and_n(t).period, t.rank()); }

/// All proper subsets of Z/e, ordered by size then lexicographically.
inline std::vector<ParahoricType> proper_subsets(int e) {
  std::vector<ParahoricType> out;
  for (std::uint32_t mask = 0; mask + 1 < (1u << e); ++mask) {
    std::vector<int> n;
    for (int i = 0; i < e; ++i)
      if (mask & (1u << i)) n.push_back(i);
    out.emplace_back(e, std::move(n));
  }
  std::sort(out.begin(), out.end(), [](const ParahoricType& a, const ParahoricType& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.nodes() < b.nodes();
  });
  return out;
}

/// All subsets of S = {1..e-1}, same ordering.
inline std::vector<ParahoricType> standard_subsets(int e) {
  std::vector<ParahoricType> out;
  for (auto& t : proper_subsets(e))
    if (t.is_standard()) out.push_back(std::move(t));
  return out;
}

/// All distinct rotations of T.
inline std::vector<ParahoricType> orbit(const ParahoricType& t) {
  std::vector<ParahoricType> out;
  const int u = period_and_n(t).period;
  for (int j = 0; j < u; ++j) out.push_back(rotate(t, j));
  std::sort(out.begin(), out.end());
  return out;
}

/// Canonical orbit representative: the lexicographically least rotation among
/// those avoiding node 0 (every orbit has one, the complement being nonempty).
inline ParahoricType canonical_rep(const ParahoricType& t) {
  const ParahoricType* best = nullptr;
  const auto orb = orbit(t);
  for (const auto& r : orb)
    if (r.is_standard() && (best == nullptr || r.nodes() < best->nodes())) best = &r;
  return *best;
}

/// One canonical representative per <Pi>-orbit of proper subsets of Z/e.
inline std::vector<ParahoricType> orbit_reps(int e) {
  if (e < 1) throw std::invalid_argument("orbit_reps: e must be >= 1");
  std::set<ParahoricType> reps;
  for (const auto& t : proper_subsets(e)) reps.insert(canonical_rep(t));
  std::vector<ParahoricType> out(reps.begin(), reps.end());
  std::sort(out.begin(), out.end(), [](const ParahoricType& a, const ParahoricType& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.nodes() < b.nodes();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Volumes
// ---------------------------------------------------------------------------

/// p_{e-1}(X) = prod_{k=1}^{e-1} (1 + X + ... + X^k).
inline Polynomial poincare_poly(int e) {
  if (e < 1) throw std::invalid_argument("poincare_poly: e must be >= 1");
  Polynomial p = 1;
  for (int k = 1; k < e; ++k) p *= Polynomial(std::vector<Rational>(k + 1, Rational(1)));
  return p;
}

/// Elements of the parabolic subgroup <s_i : i in T> of S_e (T standard).
inline std::vector<FinPermutation> parabolic_subgroup(const ParahoricType& t) {
  if (!t.is_standard()) throw std::invalid_argument("parabolic_subgroup: T contains the affine node 0");
  const int e = t.rank();
  std::set<FinPermutation> seen{FinPermutation::identity(e)};
  std::vector<FinPermutation> frontier{FinPermutation::identity(e)};
  while (!frontier.empty()) {
    std::vector<FinPermutation> next;
    for (const auto& w : frontier)
      for (int i : t.nodes()) {
        auto v = w * FinPermutation::simple(i, e);
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Sum over w in <T> of X^{l(w)} as a polynomial.
inline Polynomial parahoric_volume_poly(const ParahoricType& t) {
  Polynomial p;
  for (const auto& w : parabolic_subgroup(t)) p += Polynomial::monomial(1, static_cast<std::size_t>(w.length()));
  return p;
}

/// vol(P_T) = sum_{w in <T>} q^{l(w)} with vol(Iwahori) = 1.
inline Rational parahoric_volume(const ParahoricType& t, const Rational& q) {
  if (q <= 0) throw std::invalid_argument("parahoric_volume: q must be positive");
  return parahoric_volume_poly(t).evaluate(q);
}

}  // namespace hecke_forge::weyl
