#pragma once

// Ground-truth length: breadth-first search over words in s_0, ..., s_{e-1}.

#include "hecke_forge/weyl.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hecke_forge::oracle {

/// Ball of radius `max_len` around the identity in the affine Weyl group, with
/// word lengths.
class WordLengthOracle {
 public:
  WordLengthOracle(int e, int max_len) : e_(e), max_len_(max_len) {
    using weyl::ExtAffineElt;
    std::vector<ExtAffineElt> gens;
    for (int i = 0; i < e; ++i) gens.push_back(ExtAffineElt::simple(i, e));
    std::vector<ExtAffineElt> frontier{ExtAffineElt::identity(e)};
    dist_.emplace(frontier.front(), 0);
    for (int d = 1; d <= max_len && !frontier.empty(); ++d) {
      std::vector<ExtAffineElt> next;
      for (const auto& x : frontier)
        for (const auto& s : gens) {
          ExtAffineElt y = x * s;
          if (dist_.emplace(y, d).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }

  int rank() const { return e_; }
  int radius() const { return max_len_; }
  const std::map<weyl::ExtAffineElt, int>& ball() const { return dist_; }

  /// Minimal word length of Pi^{-k} x, k the Pi-degree of x; empty if beyond
  /// the radius.
  std::optional<int> length(const weyl::ExtAffineElt& x) const {
    const auto y = weyl::ExtAffineElt::pi_power(-x.pi_degree(), e_) * x;
    auto it = dist_.find(y);
    if (it == dist_.end()) return std::nullopt;
    return it->second;
  }

 private:
  int e_;
  int max_len_;
  std::map<weyl::ExtAffineElt, int> dist_;
};

}  // namespace hecke_forge::oracle
