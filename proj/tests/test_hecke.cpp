#include "hecke_forge/hecke.hpp"
#include "hecke_forge/oracle/convolution.hpp"

#include <gtest/gtest.h>

using namespace hecke_forge;
using hecke::CentralHeckeElt;
using hecke::HeckeElt;
using weyl::ExtAffineElt;
using weyl::FinPermutation;

namespace {
const Polynomial q = Polynomial::x();
HeckeElt T(const ExtAffineElt& x) { return HeckeElt::basis(x); }
}  // namespace

TEST(HeckeElt, NoStoredZeros) {
  HeckeElt h = T(ExtAffineElt::pi(2));
  h.add_term(ExtAffineElt::pi(2), Polynomial(-1));
  EXPECT_TRUE(h.is_zero());
  EXPECT_EQ(h.support_size(), 0u);
  HeckeElt z(2);
  z.add_term(ExtAffineElt::identity(2), Polynomial());
  EXPECT_TRUE(z.is_zero());
}

TEST(TMul, QuadraticRelation) {
  const auto s1 = ExtAffineElt::simple(1, 2);
  HeckeElt expect = T(ExtAffineElt::identity(2)) * q;
  expect += T(s1) * (q - Polynomial(1));
  EXPECT_EQ(T(s1) * T(s1), expect);
}

TEST(TMul, QuadraticRelationAtAffineNode) {
  const auto s0 = ExtAffineElt::simple(0, 3);
  HeckeElt expect = T(ExtAffineElt::identity(3)) * q;
  expect += T(s0) * (q - Polynomial(1));
  EXPECT_EQ(T(s0) * T(s0), expect);
}

TEST(TMul, UnitIsNeutral) {
  const auto w = ExtAffineElt({1, -2, 0}, FinPermutation({2, 3, 1}));
  EXPECT_EQ(HeckeElt::unit(3) * T(w), T(w));
  EXPECT_EQ(T(w) * HeckeElt::unit(3), T(w));
}

TEST(TMul, PiTimesPi) {
  EXPECT_EQ(T(ExtAffineElt::pi(2)) * T(ExtAffineElt::pi(2)), T(ExtAffineElt::pi_power(2, 2)));
}

TEST(TMul, LengthAdditiveProductsAreBasisElements) {
  const auto s1 = ExtAffineElt::simple(1, 3), s2 = ExtAffineElt::simple(2, 3);
  EXPECT_EQ(T(s1) * T(s2), T(s1 * s2));
  EXPECT_EQ(T(s1) * T(s2) * T(s1), T(s2) * T(s1) * T(s2));
}

TEST(TMul, PiConjugationRotatesGenerators) {
  for (int e = 2; e <= 4; ++e)
    for (int i = 0; i < e; ++i) {
      const auto lhs = T(ExtAffineElt::pi(e)) * T(ExtAffineElt::simple(i, e)) * T(ExtAffineElt::pi_power(-1, e));
      EXPECT_EQ(lhs, T(ExtAffineElt::simple(i + 1, e)));
    }
}

TEST(TMul, PiInvertibleAndPowers) {
  for (int e = 1; e <= 4; ++e) {
    EXPECT_EQ(T(ExtAffineElt::pi(e)) * T(ExtAffineElt::pi_power(-1, e)), HeckeElt::unit(e));
    for (int k = 0; k <= 2 * e; ++k) EXPECT_EQ(hecke::power(T(ExtAffineElt::pi(e)), k), T(ExtAffineElt::pi_power(k, e)));
  }
}

TEST(TMul, RankMismatch) { EXPECT_THROW(HeckeElt::unit(2) * HeckeElt::unit(3), weyl::RankMismatch); }

TEST(ConvolutionOracle, SpecExamples) {
  const auto s = FinPermutation::simple(1, 2), id = FinPermutation::identity(2);
  auto constant = [](const hecke::StructureTable& t, const FinPermutation& a, const FinPermutation& b, const FinPermutation& c) {
    for (const auto& row : t)
      if (row.w1 == a && row.w2 == b && row.w3 == c) return row.value;
    return Rational(0);
  };
  const auto t22 = oracle::convolution_oracle(2, 2);
  EXPECT_EQ(constant(t22, s, s, id), 2);
  const auto t23 = oracle::convolution_oracle(2, 3);
  EXPECT_EQ(constant(t23, s, s, s), 2);
  for (int e = 1; e <= 3; ++e) {
    const auto t = oracle::convolution_oracle(e, 2);
    for (const auto& w : weyl::all_permutations(e)) EXPECT_EQ(constant(t, FinPermutation::identity(e), w, w), 1);
  }
}

class OracleEquivalence : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(OracleEquivalence, IwahoriMatsumotoMatchesBruteForce) {
  const auto [e, qq] = GetParam();
  const auto brute = oracle::convolution_oracle(e, qq);
  const auto rules = hecke::finite_structure_constants(e, qq);
  ASSERT_EQ(brute.size(), rules.size());
  for (std::size_t i = 0; i < brute.size(); ++i) EXPECT_EQ(brute[i], rules[i]) << i;
}

INSTANTIATE_TEST_SUITE_P(Groups, OracleEquivalence,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 2}, std::pair{3, 3}));

TEST(ConvolutionOracle, SizeLimit) { EXPECT_THROW(oracle::convolution_oracle(3, 5), finglq::SizeLimitExceeded); }

TEST(StructureTable, Csv) {
  const auto csv = hecke::structure_table_csv(hecke::finite_structure_constants(2, 3));
  EXPECT_EQ(csv.rfind("w1,w2,w3,coefficient\n", 0), 0u);
  EXPECT_NE(csv.find("\"0,0;2 1\",\"0,0;2 1\",\"0,0;1 2\",3"), std::string::npos);
}

TEST(CentralReduction, SpecExamples) {
  const auto one = ExtAffineElt::identity(2);
  const auto varpi = ExtAffineElt::translation({1, 1});
  const auto r1 = hecke::central_reduction(T(one), 1);
  EXPECT_EQ(r1.terms().size(), 1u);
  EXPECT_EQ(r1.coefficient(one), Polynomial(1));
  const auto r2 = hecke::central_reduction(T(one) + T(varpi), 1);
  EXPECT_EQ(r2.coefficient(one), Polynomial(2));
  EXPECT_TRUE(hecke::central_reduction(T(one) - T(varpi), 1).is_zero());
}

TEST(CentralReduction, TwistByOmega) {
  const auto varpi = ExtAffineElt::translation({1, 1, 1});
  const auto r = hecke::central_reduction(T(varpi), Rational(3));
  EXPECT_EQ(r.coefficient(ExtAffineElt::identity(3)), Polynomial(3));
  EXPECT_EQ(r.coefficient(varpi), Polynomial(1));
  EXPECT_THROW(CentralHeckeElt(2, 0), std::invalid_argument);
}

TEST(CentralReduction, CanonicalRepresentative) {
  const auto x = ExtAffineElt({3, 2, 4}, FinPermutation({2, 1, 3}));
  const auto split = hecke::central_split(x);
  EXPECT_EQ(split.shift, 3);
  EXPECT_EQ(split.representative.pi_degree(), 0);
  const auto y = ExtAffineElt({1, 2, 0}, FinPermutation({2, 1, 3}));
  EXPECT_EQ(hecke::central_split(y).representative.pi_degree(), 0);
  EXPECT_EQ(hecke::central_split(ExtAffineElt::pi_power(5, 3)).representative, ExtAffineElt::pi_power(2, 3));
}

TEST(HeckeElt, EvaluateAndStr) {
  const auto s1 = ExtAffineElt::simple(1, 2);
  const auto sq = (T(s1) * T(s1)).evaluate_at(3);
  EXPECT_EQ(sq.coefficient(ExtAffineElt::identity(2)), Polynomial(3));
  EXPECT_EQ(sq.coefficient(s1), Polynomial(2));
  EXPECT_EQ(HeckeElt(2).str(), "0");
}
