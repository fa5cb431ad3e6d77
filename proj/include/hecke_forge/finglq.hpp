#pragma once

// Finite fields F_q (q <= 9) and the groups GL(n, F_q) (n <= 4) with their
// standard subgroups, enumerated explicitly.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hecke_forge::finglq {

class SizeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration cap, overridable through HECKE_FORGE_MAX_GROUP_ORDER.
inline std::uint64_t max_group_order() {
  if (const char* env = std::getenv("HECKE_FORGE_MAX_GROUP_ORDER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 25000;
}

// ---------------------------------------------------------------------------
// Finite fields
// ---------------------------------------------------------------------------

/// F_q with elements encoded as integers 0..q-1: the base-p digits of the
/// encoding are the coefficients of a polynomial modulo a fixed irreducible
/// (q = 4: x^2+x+1, q = 8: x^3+x+1, q = 9: x^2+1).
class FiniteField {
 public:
  static const FiniteField& get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<FiniteField>(new FiniteField(q))).first;
    return *it->second;
  }

  static bool is_supported(int q) { return q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9; }

  int size() const { return q_; }
  int characteristic() const { return p_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t inv(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
    return inv_[a];
  }

  /// The fixed generator of F_q^x: least encoding of multiplicative order q-1.
  std::uint8_t generator() const { return gen_; }
  /// Discrete log base generator(), a != 0.
  int log(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("FiniteField: log of zero");
    return log_[a];
  }
  std::uint8_t exp(long long k) const {
    const long long m = ((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1);
    return exp_[static_cast<std::size_t>(m)];
  }

 private:
  explicit FiniteField(int q) : q_(q) {
    if (!is_supported(q)) throw std::invalid_argument("FiniteField: unsupported q = " + std::to_string(q));
    std::vector<int> modulus;  // monic, low to high
    switch (q) {
      case 4: p_ = 2, k_ = 2, modulus = {1, 1, 1}; break;
      case 8: p_ = 2, k_ = 3, modulus = {1, 1, 0, 1}; break;
      case 9: p_ = 3, k_ = 2, modulus = {1, 0, 1}; break;
      default: p_ = q, k_ = 1, modulus = {0, 1}; break;
    }
    auto digits = [&](int v) {
      std::vector<int> d(k_);
      for (int i = 0; i < k_; ++i, v /= p_) d[i] = v % p_;
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int v = 0;
      for (int i = k_ - 1; i >= 0; --i) v = v * p_ + d[i];
      return v;
    };
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const auto da = digits(a), db = digits(b);
        std::vector<int> s(k_);
        for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
        add_[a * q + b] = static_cast<std::uint8_t>(encode(s));
        std::vector<int> prod(2 * k_, 0);
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (int d = 2 * k_ - 1; d >= k_; --d) {
          const int c = prod[d];
          if (c == 0) continue;
          for (int i = 0; i <= k_; ++i) prod[d - k_ + i] = ((prod[d - k_ + i] - c * modulus[i]) % p_ + p_) % p_;
        }
        prod.resize(k_);
        mul_[a * q + b] = static_cast<std::uint8_t>(encode(prod));
      }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (add_[a * q + b] == 0) neg_[a] = static_cast<std::uint8_t>(b);
        if (mul_[a * q + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
      }
    for (int g = 1; g < q; ++g) {
      int order = 1;
      for (std::uint8_t x = static_cast<std::uint8_t>(g); x != 1; x = mul_[x * q + g]) ++order;
      if (order == q - 1) {
        gen_ = static_cast<std::uint8_t>(g);
        break;
      }
    }
    exp_.resize(q - 1);
    log_.assign(q, 0);
    std::uint8_t x = 1;
    for (int k = 0; k < q - 1; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = mul_[x * q + gen_];
    }
  }

  int q_;
  int p_ = 0;
  int k_ = 1;
  std::uint8_t gen_ = 1;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_, exp_;
  std::vector<int> log_;
};

/// Element of F_q with value semantics.
struct FqElem {
  const FiniteField* field = nullptr;
  std::uint8_t value = 0;

  FqElem() = default;
  FqElem(const FiniteField& f, int v) : field(&f), value(static_cast<std::uint8_t>(v)) {
    if (v < 0 || v >= f.size()) throw std::out_of_range("FqElem: value out of range");
  }

  friend FqElem operator+(FqElem a, FqElem b) { return {*a.field, a.field->add(a.value, b.value)}; }
  friend FqElem operator-(FqElem a, FqElem b) { return {*a.field, a.field->sub(a.value, b.value)}; }
  friend FqElem operator*(FqElem a, FqElem b) { return {*a.field, a.field->mul(a.value, b.value)}; }
  friend FqElem operator-(FqElem a) { return {*a.field, a.field->neg(a.value)}; }
  FqElem inverse() const { return {*field, field->inv(value)}; }
  friend bool operator==(FqElem a, FqElem b) { return a.field == b.field && a.value == b.value; }
};

// ---------------------------------------------------------------------------
// Characters of F_q^x
// ---------------------------------------------------------------------------

/// chi_k(a) = exp(2 pi i k log(a) / (q - 1)).
inline std::complex<double> character(const FiniteField& f, int k, std::uint8_t a) {
  const int m = f.size() - 1;
  const long long r = (static_cast<long long>(k) * f.log(a)) % m;
  if ((2 * r) % m == 0) return {(r == 0) ? 1.0 : -1.0, 0.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(r) / m;
  return {std::cos(theta), std::sin(theta)};
}

/// chi_k takes only the values +-1.
inline bool character_is_real(const FiniteField& f, int k) { return (2LL * k) % (f.size() - 1) == 0; }

/// chi_k(a) as +-1; requires character_is_real.
inline int character_sign(const FiniteField& f, int k, std::uint8_t a) {
  if (!character_is_real(f, k)) throw std::invalid_argument("character_sign: character is not real-valued");
  const int m = f.size() - 1;
  return ((static_cast<long long>(k) * f.log(a)) % m == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Polynomials over F_q (low degree first)
// ---------------------------------------------------------------------------

using FqPoly = std::vector<std::uint8_t>;

inline void fq_trim(FqPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline FqPoly fq_mul(const FiniteField& f, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  fq_trim(out);
  return out;
}

inline FqPoly fq_add(const FiniteField& f, FqPoly a, const FqPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], b[i]);
  fq_trim(a);
  return a;
}

inline FqPoly fq_sub(const FiniteField& f, FqPoly a, const FqPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  fq_trim(a);
  return a;
}

/// a mod b, b nonzero.
inline FqPoly fq_rem(const FiniteField& f, FqPoly a, const FqPoly& b) {
  fq_trim(a);
  const std::uint8_t lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const std::uint8_t c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    fq_trim(a);
  }
  return a;
}

/// Irreducible over F_q: no monic divisor of degree 1..deg/2.
inline bool fq_irreducible(const FiniteField& f, const FqPoly& p) {
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return false;
  const int q = f.size();
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (long long idx = 0; idx < count; ++idx) {
      FqPoly g(d + 1, 0);
      long long v = idx;
      for (int i = 0; i < d; ++i, v /= q) g[i] = static_cast<std::uint8_t>(v % q);
      g[d] = 1;
      if (fq_rem(f, p, g).empty()) return false;
    }
  }
  return true;
}

inline std::string fq_poly_str(const FqPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (p[i] != 1 || i == 0) out += std::to_string(p[i]);
    if (i > 0) out += (p[i] != 1 ? "*x" : "x");
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

inline constexpr int kMaxRank = 4;

/// n x n matrix over F_q, row-major.
class GLMatrix {
 public:
  GLMatrix(const FiniteField& f, int n) : field_(&f), n_(n) {
    if (n < 1 || n > kMaxRank) throw std::invalid_argument("GLMatrix: rank must be in 1..4");
    a_.fill(0);
  }
  GLMatrix(const FiniteField& f, int n, const std::vector<int>& row_major) : GLMatrix(f, n) {
    if (static_cast<int>(row_major.size()) != n * n) throw std::invalid_argument("GLMatrix: wrong entry count");
    for (int i = 0; i < n * n; ++i) {
      if (row_major[i] < 0 || row_major[i] >= f.size()) throw std::out_of_range("GLMatrix: entry out of range");
      a_[i] = static_cast<std::uint8_t>(row_major[i]);
    }
  }

  static GLMatrix identity(const FiniteField& f, int n) {
    GLMatrix m(f, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  /// Companion matrix of a monic polynomial (low degree first, last entry 1).
  static GLMatrix companion(const FiniteField& f, const FqPoly& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    GLMatrix m(f, n);
    for (int i = 1; i < n; ++i) m.set(i, i - 1, 1);
    for (int i = 0; i < n; ++i) m.set(i, n - 1, f.neg(monic[i]));
    return m;
  }

  const FiniteField& field() const { return *field_; }
  int rank() const { return n_; }
  std::uint8_t at(int r, int c) const { return a_[r * n_ + c]; }
  void set(int r, int c, std::uint8_t v) { a_[r * n_ + c] = v; }

  /// Base-q integer of the row-major entries; lexicographic order on entries.
  std::uint64_t encode() const {
    std::uint64_t v = 0;
    for (int i = 0; i < n_ * n_; ++i) v = v * field_->size() + a_[i];
    return v;
  }
  static GLMatrix decode(const FiniteField& f, int n, std::uint64_t v) {
    GLMatrix m(f, n);
    for (int i = n * n - 1; i >= 0; --i) {
      m.a_[i] = static_cast<std::uint8_t>(v % f.size());
      v /= f.size();
    }
    return m;
  }

  friend GLMatrix operator*(const GLMatrix& x, const GLMatrix& y) {
    const FiniteField& f = *x.field_;
    const int n = x.n_;
    GLMatrix out(f, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::uint8_t s = 0;
        for (int k = 0; k < n; ++k) s = f.add(s, f.mul(x.a_[i * n + k], y.a_[k * n + j]));
        out.a_[i * n + j] = s;
      }
    return out;
  }

  std::uint8_t det() const {
    const FiniteField& f = *field_;
    std::array<std::uint8_t, 16> m = a_;
    std::uint8_t d = 1;
    for (int c = 0; c < n_; ++c) {
      int piv = -1;
      for (int r = c; r < n_; ++r)
        if (m[r * n_ + c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        for (int k = 0; k < n_; ++k) std::swap(m[piv * n_ + k], m[c * n_ + k]);
        d = f.neg(d);
      }
      d = f.mul(d, m[c * n_ + c]);
      const std::uint8_t inv = f.inv(m[c * n_ + c]);
      for (int r = c + 1; r < n_; ++r) {
        const std::uint8_t factor = f.mul(m[r * n_ + c], inv);
        if (factor == 0) continue;
        for (int k = c; k < n_; ++k) m[r * n_ + k] = f.sub(m[r * n_ + k], f.mul(factor, m[c * n_ + k]));
      }
    }
    return d;
  }

  bool invertible() const { return det() != 0; }

  GLMatrix inverse() const {
    const FiniteField& f = *field_;
    const int n = n_;
    std::array<std::uint8_t, 16> m = a_;
    GLMatrix inv = identity(f, n);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (m[r * n + c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::domain_error("GLMatrix: singular matrix");
      for (int k = 0; k < n; ++k) {
        std::swap(m[piv * n + k], m[c * n + k]);
        std::swap(inv.a_[piv * n + k], inv.a_[c * n + k]);
      }
      const std::uint8_t s = f.inv(m[c * n + c]);
      for (int k = 0; k < n; ++k) {
        m[c * n + k] = f.mul(m[c * n + k], s);
        inv.a_[c * n + k] = f.mul(inv.a_[c * n + k], s);
      }
      for (int r = 0; r < n; ++r) {
        if (r == c || m[r * n + c] == 0) continue;
        const std::uint8_t factor = m[r * n + c];
        for (int k = 0; k < n; ++k) {
          m[r * n + k] = f.sub(m[r * n + k], f.mul(factor, m[c * n + k]));
          inv.a_[r * n + k] = f.sub(inv.a_[r * n + k], f.mul(factor, inv.a_[c * n + k]));
        }
      }
    }
    return inv;
  }

  /// Row-major entries with the field size header, e.g. "3:[1,0,0,1]".
  std::string str() const {
    std::string out = std::to_string(field_->size()) + ":[";
    for (int i = 0; i < n_ * n_; ++i) {
      if (i) out += ',';
      out += std::to_string(a_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const GLMatrix& x, const GLMatrix& y) {
    return x.field_ == y.field_ && x.n_ == y.n_ && x.a_ == y.a_;
  }

 private:
  const FiniteField* field_;
  int n_;
  std::array<std::uint8_t, 16> a_{};
};

/// Parses "q:[a,b,...]" or "a,b,..." (rank from the entry count).
inline GLMatrix parse_matrix(const std::string& text, const FiniteField& f) {
  std::string body = text;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    if (std::stoi(body.substr(0, colon)) != f.size()) throw std::invalid_argument("parse_matrix: field size mismatch");
    body = body.substr(colon + 1);
  }
  for (char& ch : body)
    if (ch == '[' || ch == ']' || ch == ',' || ch == ';') ch = ' ';
  std::istringstream ss(body);
  std::vector<int> vals;
  for (int v; ss >> v;) vals.push_back(v);
  int n = 1;
  while (n * n < static_cast<int>(vals.size())) ++n;
  if (n * n != static_cast<int>(vals.size())) throw std::invalid_argument("parse_matrix: entry count is not a square");
  return {f, n, vals};
}

/// det(xI - g), monic of degree n.
inline FqPoly char_poly(const GLMatrix& g) {
  const FiniteField& f = g.field();
  const int n = g.rank();
  // Entries of xI - g as polynomials, then Laplace expansion along the first row.
  std::vector<FqPoly> m(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      FqPoly p{f.neg(g.at(r, c))};
      if (r == c) p.push_back(1);
      fq_trim(p);
      m[r * n + c] = p;
    }
  auto det = [&](auto&& self, const std::vector<int>& rows, const std::vector<int>& cols) -> FqPoly {
    if (rows.size() == 1) return m[rows[0] * n + cols[0]];
    FqPoly acc;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const FqPoly& entry = m[rows[0] * n + cols[j]];
      if (entry.empty()) continue;
      std::vector<int> sub_cols;
      for (std::size_t k = 0; k < cols.size(); ++k)
        if (k != j) sub_cols.push_back(cols[k]);
      const FqPoly term = fq_mul(f, entry, self(self, sub_rows, sub_cols));
      acc = (j % 2 == 0) ? fq_add(f, acc, term) : fq_sub(f, acc, term);
    }
    return acc;
  };
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return det(det, idx, idx);
}

/// Characteristic polynomial irreducible over F_q.
inline bool elliptic_regular(const GLMatrix& g) { return fq_irreducible(g.field(), char_poly(g)); }

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

struct SubgroupSpec {
  enum class Kind { full, borel, standard_parabolic, unipotent_radical, levi, parahoric_image };
  Kind kind = Kind::full;
  std::vector<int> blocks;  // block sizes; for parahoric_image, the standard type T

  static SubgroupSpec full() { return {Kind::full, {}}; }
  static SubgroupSpec borel() { return {Kind::borel, {}}; }
  static SubgroupSpec parabolic(std::vector<int> b) { return {Kind::standard_parabolic, std::move(b)}; }
  static SubgroupSpec unipotent(std::vector<int> b) { return {Kind::unipotent_radical, std::move(b)}; }
  static SubgroupSpec levi(std::vector<int> b) { return {Kind::levi, std::move(b)}; }
  /// Standard parabolic attached to T subset of {1..n-1}: i, i+1 share a block iff i in T.
  static SubgroupSpec parahoric_image(std::vector<int> t) { return {Kind::parahoric_image, std::move(t)}; }

  std::string str() const {
    static const char* names[] = {"full", "borel", "standard_parabolic", "unipotent_radical", "levi", "parahoric_image"};
    std::string out = names[static_cast<int>(kind)];
    if (!blocks.empty()) {
      out += "(";
      for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "," : "") + std::to_string(blocks[i]);
      out += ")";
    }
    return out;
  }
};

/// Block sizes of the parabolic attached to T subset of {1..n-1}.
inline std::vector<int> blocks_of_type(int n, const std::vector<int>& t) {
  std::vector<int> blocks{1};
  for (int i = 1; i < n; ++i) {
    if (std::find(t.begin(), t.end(), i) != t.end())
      ++blocks.back();
    else
      blocks.push_back(1);
  }
  return blocks;
}

/// Block pattern for a spec, with the block index of each row.
struct BlockPattern {
  SubgroupSpec::Kind kind;
  std::vector<int> block_of;
};

inline BlockPattern block_pattern(int n, const SubgroupSpec& spec) {
  std::vector<int> blocks;
  switch (spec.kind) {
    case SubgroupSpec::Kind::full: blocks = {n}; break;
    case SubgroupSpec::Kind::borel: blocks.assign(n, 1); break;
    case SubgroupSpec::Kind::parahoric_image:
      for (int t : spec.blocks)
        if (t < 1 || t >= n) throw std::invalid_argument("SubgroupSpec: type must be a subset of {1..n-1}");
      blocks = blocks_of_type(n, spec.blocks);
      break;
    default: blocks = spec.blocks; break;
  }
  int total = 0;
  for (int b : blocks) {
    if (b < 1) throw std::invalid_argument("SubgroupSpec: block sizes must be positive");
    total += b;
  }
  if (total != n) throw std::invalid_argument("SubgroupSpec: block sizes must sum to n");
  BlockPattern bp{spec.kind == SubgroupSpec::Kind::parahoric_image || spec.kind == SubgroupSpec::Kind::borel ||
                          spec.kind == SubgroupSpec::Kind::full
                      ? SubgroupSpec::Kind::standard_parabolic
                      : spec.kind,
                  {}};
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int i = 0; i < blocks[b]; ++i) bp.block_of.push_back(static_cast<int>(b));
  return bp;
}

inline std::uint64_t gl_order(int n, std::uint64_t q) {
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  std::uint64_t order = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= (qn - qi);
    qi *= q;
  }
  return order;
}

/// Closed-form order of the subgroup described by spec.
inline std::uint64_t subgroup_order(int n, int q, const SubgroupSpec& spec) {
  const BlockPattern bp = block_pattern(n, spec);
  std::vector<int> sizes;
  for (int r = 0; r < n; ++r) {
    if (r == 0 || bp.block_of[r] != bp.block_of[r - 1])
      sizes.push_back(1);
    else
      ++sizes.back();
  }
  std::uint64_t levi = 1, unip_exp = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    levi *= gl_order(sizes[i], q);
    for (std::size_t j = i + 1; j < sizes.size(); ++j) unip_exp += static_cast<std::uint64_t>(sizes[i]) * sizes[j];
  }
  std::uint64_t unip = 1;
  for (std::uint64_t i = 0; i < unip_exp; ++i) unip *= q;
  switch (bp.kind) {
    case SubgroupSpec::Kind::levi: return levi;
    case SubgroupSpec::Kind::unipotent_radical: return unip;
    default: return levi * unip;
  }
}

/// Membership of g in the subgroup described by spec (no enumeration).
inline bool in_subgroup(const GLMatrix& g, const SubgroupSpec& spec) {
  const int n = g.rank();
  const BlockPattern bp = block_pattern(n, spec);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int br = bp.block_of[r], bc = bp.block_of[c];
      const std::uint8_t v = g.at(r, c);
      switch (bp.kind) {
        case SubgroupSpec::Kind::levi:
          if (br != bc && v != 0) return false;
          break;
        case SubgroupSpec::Kind::unipotent_radical:
          if (br > bc && v != 0) return false;
          if (br == bc && v != (r == c ? 1 : 0)) return false;
          break;
        default:
          if (br > bc && v != 0) return false;
          break;
      }
    }
  return g.invertible();
}

/// Explicit finite matrix group with a lookup index.
class MatrixGroup {
 public:
  MatrixGroup(const FiniteField& f, int n, std::vector<GLMatrix> elements, std::string name)
      : field_(&f), n_(n), elements_(std::move(elements)), name_(std::move(name)) {
    std::sort(elements_.begin(), elements_.end(),
              [](const GLMatrix& a, const GLMatrix& b) { return a.encode() < b.encode(); });
    index_.reserve(elements_.size() * 2);
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].encode(), static_cast<std::uint32_t>(i));
    identity_ = index_of(GLMatrix::identity(f, n)).value();
    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) inverse_[i] = index_of(elements_[i].inverse()).value();
  }

  const FiniteField& field() const { return *field_; }
  int rank() const { return n_; }
  int q() const { return field_->size(); }
  std::size_t order() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<GLMatrix>& elements() const { return elements_; }
  const GLMatrix& element(std::size_t i) const { return elements_[i]; }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t inverse(std::uint32_t i) const { return inverse_[i]; }

  std::optional<std::uint32_t> index_of(const GLMatrix& g) const {
    auto it = index_.find(g.encode());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    auto idx = index_of(elements_[a] * elements_[b]);
    if (!idx) throw std::logic_error("MatrixGroup: product left the group");
    return *idx;
  }
  /// x g x^{-1}
  std::uint32_t conjugate(std::uint32_t x, std::uint32_t g) const { return mul(mul(x, g), inverse_[x]); }

  bool contains(const GLMatrix& g) const { return index_of(g).has_value(); }

  // Conjugacy classes, computed on first use.
  struct Classes {
    std::vector<std::uint32_t> class_of;  // per element
    std::vector<std::uint32_t> reps;      // smallest index in each class
    std::vector<std::size_t> sizes;
  };
  const Classes& classes() const {
    std::call_once(classes_once_, [this] {
      const std::uint32_t none = ~0u;
      classes_.class_of.assign(order(), none);
      for (std::uint32_t g = 0; g < order(); ++g) {
        if (classes_.class_of[g] != none) continue;
        const auto cid = static_cast<std::uint32_t>(classes_.reps.size());
        classes_.reps.push_back(g);
        std::size_t size = 0;
        for (std::uint32_t x = 0; x < order(); ++x) {
          const std::uint32_t c = conjugate(x, g);
          if (classes_.class_of[c] == none) {
            classes_.class_of[c] = cid;
            ++size;
          }
        }
        classes_.sizes.push_back(size);
      }
    });
    return classes_;
  }

 private:
  const FiniteField* field_;
  int n_;
  std::vector<GLMatrix> elements_;
  std::string name_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
  mutable std::once_flag classes_once_;
  mutable Classes classes_;
};

using GroupPtr = std::shared_ptr<const MatrixGroup>;

/// All elements of the subgroup of GL(n, q) described by spec, in
/// lexicographic order of entries.
inline std::vector<GLMatrix> enumerate_elements(int n, int q, const SubgroupSpec& spec) {
  const FiniteField& f = FiniteField::get(q);
  const std::uint64_t expected = subgroup_order(n, q, spec);
  if (expected > max_group_order())
    throw SizeLimitExceeded("enumerate_group: order " + std::to_string(expected) + " exceeds the cap " +
                            std::to_string(max_group_order()));
  const BlockPattern bp = block_pattern(n, spec);
  // Free cells are enumerated; fixed cells are 0 or 1 by the pattern.
  std::vector<int> free_cells;
  GLMatrix base(f, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int br = bp.block_of[r], bc = bp.block_of[c];
      bool free = false;
      switch (bp.kind) {
        case SubgroupSpec::Kind::levi: free = (br == bc); break;
        case SubgroupSpec::Kind::unipotent_radical:
          free = br < bc;
          if (br == bc && r == c) base.set(r, c, 1);
          break;
        default: free = br <= bc; break;
      }
      if (free) free_cells.push_back(r * n + c);
    }
  std::vector<GLMatrix> out;
  out.reserve(expected);
  std::vector<int> digit(free_cells.size(), 0);
  GLMatrix m = base;
  while (true) {
    if (m.invertible()) out.push_back(m);
    std::size_t i = 0;
    for (; i < free_cells.size(); ++i) {
      const int cell = free_cells[free_cells.size() - 1 - i];
      if (++digit[i] < q) {
        m.set(cell / n, cell % n, static_cast<std::uint8_t>(digit[i]));
        break;
      }
      digit[i] = 0;
      m.set(cell / n, cell % n, 0);
    }
    if (i == free_cells.size()) break;
  }
  if (out.size() != expected) throw std::logic_error("enumerate_group: order does not match the closed form");
  return out;
}

inline GroupPtr enumerate_group(int n, int q, const SubgroupSpec& spec = SubgroupSpec::full()) {
  const FiniteField& f = FiniteField::get(q);
  std::string name = "GL(" + std::to_string(n) + "," + std::to_string(q) + ")";
  if (spec.kind != SubgroupSpec::Kind::full) name = spec.str() + " of " + name;
  return std::make_shared<const MatrixGroup>(f, n, enumerate_elements(n, q, spec), std::move(name));
}

/// Process-wide cache of full groups GL(n, q).
inline GroupPtr general_linear(int n, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, GroupPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({n, q}); it != cache.end()) return it->second;
  }
  GroupPtr g = enumerate_group(n, q);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, q), g).first->second;
}

/// g lies in no conjugate of a proper standard parabolic subgroup (brute force
/// over conjugates by every element of G).
inline bool proper_parabolic_avoidance(const GLMatrix& g, const MatrixGroup& group) {
  const int n = g.rank();
  std::vector<SubgroupSpec> parabolics;
  for (std::uint32_t mask = 0; mask + 1 < (1u << (n - 1)); ++mask) {
    std::vector<int> t;
    for (int i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) t.push_back(i);
    parabolics.push_back(SubgroupSpec::parahoric_image(t));
  }
  for (const auto& x : group.elements()) {
    const GLMatrix c = x * g * x.inverse();
    for (const auto& p : parabolics)
      if (in_subgroup(c, p)) return false;
  }
  return true;
}

/// Permutation matrix of w (1-based images): column j has its 1 in row w(j).
inline GLMatrix permutation_matrix(const FiniteField& f, const std::vector<int>& images) {
  const int n = static_cast<int>(images.size());
  GLMatrix m(f, n);
  for (int j = 0; j < n; ++j) m.set(images[j] - 1, j, 1);
  return m;
}

/// Determinant-one lift of w: the permutation matrix with its first column
/// scaled by sign(w).
inline GLMatrix weyl_lift(const FiniteField& f, const std::vector<int>& images, int sign) {
  GLMatrix m = permutation_matrix(f, images);
  if (sign < 0) m.set(images[0] - 1, 0, f.neg(1));
  return m;
}

}  // namespace hecke_forge::finglq
