#pragma once

// Brute-force double-coset convolution on GL(e, F_q). Independent of the
// Iwahori-Matsumoto rules: only group enumeration is shared.

#include "hecke_forge/finglq.hpp"
#include "hecke_forge/hecke.hpp"
#include "hecke_forge/weyl.hpp"

#include <unordered_map>
#include <vector>

namespace hecke_forge::oracle {

/// Structure constants of the functions (1/|B|) 1_{BwB} under counting-measure
/// convolution. The constant for (a, b -> c) is #{x in BaB : x^{-1} c in BbB} / |B|.
inline hecke::StructureTable convolution_oracle(int e, int q) {
  using finglq::GLMatrix;
  const auto g = finglq::general_linear(e, q);
  const auto b = finglq::enumerate_group(e, q, finglq::SubgroupSpec::borel());
  const auto& f = g->field();
  const auto perms = weyl::all_permutations(e);

  std::vector<int> cell(g->order(), -1);
  std::vector<std::uint32_t> wdot;
  for (std::size_t w = 0; w < perms.size(); ++w) {
    const GLMatrix m = finglq::permutation_matrix(f, perms[w].images());
    wdot.push_back(*g->index_of(m));
    for (const auto& b1 : b->elements()) {
      const GLMatrix left = b1 * m;
      for (const auto& b2 : b->elements()) cell[*g->index_of(left * b2)] = static_cast<int>(w);
    }
  }

  const std::size_t n = perms.size();
  std::vector<long long> count(n * n * n, 0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::uint32_t x = 0; x < g->order(); ++x) {
      const std::uint32_t y = g->mul(g->inverse(x), wdot[c]);
      ++count[(cell[x] * n + cell[y]) * n + c];
    }

  hecke::StructureTable table;
  const Rational border(static_cast<long long>(b->order()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (long long v = count[(i * n + j) * n + k]; v != 0) table.push_back({perms[i], perms[j], perms[k], Rational(v) / border});
  return table;
}

}  // namespace hecke_forge::oracle
