// Randomized algebraic properties with fixed seeds.

#include "hecke_forge/hecke.hpp"
#include "hecke_forge/oracle/word_length.hpp"
#include "hecke_forge/repth.hpp"
#include "hecke_forge/weyl.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hecke_forge;
using hecke::HeckeElt;
using weyl::ExtAffineElt;

namespace {

HeckeElt random_combination(int e, std::mt19937& rng, int terms = 2) {
  std::uniform_int_distribution<int> num(-3, 3);
  HeckeElt h(e);
  for (int i = 0; i < terms; ++i) {
    Polynomial c = Polynomial(Rational(num(rng), 2)) + Polynomial(Rational(num(rng))) * Polynomial::x();
    h.add_term(hecke::random_element(e, 1, rng), c);
  }
  return h;
}

}  // namespace

TEST(Properties, HeckeAssociativity) {
  std::mt19937 rng(101);
  for (int i = 0; i < 200; ++i) {
    const int e = 2 + i % 2;
    const auto a = random_combination(e, rng);
    const auto b = random_combination(e, rng);
    const auto c = random_combination(e, rng);
    ASSERT_EQ((a * b) * c, a * (b * c)) << "trial " << i;
  }
}

TEST(Properties, HeckeDistributivity) {
  std::mt19937 rng(102);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_combination(3, rng);
    const auto b = random_combination(3, rng);
    const auto c = random_combination(3, rng);
    ASSERT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Properties, LengthAdditivityGivesProductOfBasisElements) {
  std::mt19937 rng(103);
  for (int i = 0; i < 200; ++i) {
    const int e = 2 + i % 3;
    const auto x = hecke::random_element(e, 2, rng);
    const auto y = hecke::random_element(e, 2, rng);
    if ((x * y).length() != x.length() + y.length()) continue;
    ASSERT_EQ(HeckeElt::basis(x) * HeckeElt::basis(y), HeckeElt::basis(x * y));
  }
}

TEST(Properties, CentralReductionIsMultiplicative) {
  std::mt19937 rng(104);
  const std::vector<Rational> omegas{Rational(1), Rational(-1), Rational(2, 3)};
  for (int i = 0; i < 100; ++i) {
    const int e = 2 + i % 2;
    const Rational& omega = omegas[i % omegas.size()];
    const auto a = random_combination(e, rng);
    const auto b = random_combination(e, rng);
    ASSERT_EQ(hecke::central_reduction(a * b, omega),
              hecke::central_mul(hecke::central_reduction(a, omega), hecke::central_reduction(b, omega)));
  }
}

TEST(Properties, SignIsMultiplicative) {
  std::mt19937 rng(105);
  for (int e = 1; e <= 6; ++e) {
    auto perms = weyl::all_permutations(e);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    for (int i = 0; i < 50; ++i) {
      const auto& a = perms[pick(rng)];
      const auto& b = perms[pick(rng)];
      ASSERT_EQ((a * b).sign(), a.sign() * b.sign());
      ASSERT_EQ(a.inverse().length(), a.length());
    }
  }
}

TEST(Properties, LengthMatchesWordLengthOracle) {
  std::mt19937 rng(106);
  for (int e = 2; e <= 4; ++e) {
    const oracle::WordLengthOracle bfs(e, 5);
    for (int i = 0; i < 200; ++i) {
      const auto x = hecke::random_element(e, 1, rng);
      if (const auto l = bfs.length(x)) {
        ASSERT_EQ(x.length(), *l) << x.str();
      } else {
        ASSERT_GT(x.length(), 5) << x.str();
      }
    }
  }
}

TEST(Properties, ConjugationAverageIsTrace) {
  std::mt19937 rng(107);
  std::normal_distribution<double> nd;
  for (auto [e, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    const auto st = repth::steinberg_rep(e, q, 0);
    const auto form = repth::invariant_form(st);
    const int d = st.dim();
    for (int i = 0; i < 10; ++i) {
      repth::CMatrix t(d, d);
      Eigen::VectorXcd v(d);
      for (int a = 0; a < d; ++a) {
        v(a) = repth::Complex(nd(rng), nd(rng));
        for (int b = 0; b < d; ++b) t(a, b) = repth::Complex(nd(rng), nd(rng));
      }
      const auto avg = repth::conj_avg(t, st, form, repth::normalize(form, v));
      ASSERT_NEAR(std::abs(avg - t.trace()), 0, 1e-8);
    }
  }
}

TEST(Properties, FiniteConvolutionIsAssociative) {
  std::mt19937 rng(108);
  std::uniform_int_distribution<int> num(-4, 4);
  const auto basis = repth::finite_hecke_basis<Rational>(3, 2, 0);
  auto random_elt = [&] {
    auto f = Rational(num(rng)) * basis[0];
    for (std::size_t i = 1; i < basis.size(); ++i) f += Rational(num(rng), 3) * basis[i];
    return f;
  };
  for (int i = 0; i < 5; ++i) {
    const auto a = random_elt(), b = random_elt(), c = random_elt();
    ASSERT_EQ(repth::convolve_equivariant(repth::convolve_equivariant(a, b), c),
              repth::convolve_equivariant(a, repth::convolve_equivariant(b, c)));
  }
}
