#include "hecke_forge/repth.hpp"

#include <gtest/gtest.h>

using namespace hecke_forge;
using repth::Complex;
using repth::FinHeckeElt;

namespace {

std::uint32_t find_element(const finglq::MatrixGroup& g, std::vector<int> entries) {
  return *g.index_of(finglq::GLMatrix(g.field(), g.rank(), entries));
}

// An element of order 3 in GL(2,2) = S_3.
std::uint32_t three_cycle() { return find_element(*finglq::general_linear(2, 2), {0, 1, 1, 1}); }

}  // namespace

TEST(Induce, WholeGroupGivesSigma) {
  const auto g = finglq::general_linear(2, 3);
  const auto sigma = repth::det_character_rep(g, 1);
  const auto ind = repth::induce(sigma, g);
  EXPECT_EQ(ind.rep.dim(), 1);
  for (std::uint32_t x = 0; x < g->order(); ++x) EXPECT_NEAR(std::abs(ind.rep(x)(0, 0) - sigma(x)(0, 0)), 0, 1e-14);
}

TEST(Induce, PermutationModules) {
  const auto b22 = finglq::enumerate_group(2, 2, finglq::SubgroupSpec::borel());
  const auto ind22 = repth::induce(repth::det_character_rep(b22, 0), finglq::general_linear(2, 2));
  EXPECT_EQ(ind22.rep.dim(), 3);
  EXPECT_EQ(repth::homomorphism_defect(ind22.rep), 0.0);
  const auto b32 = finglq::enumerate_group(3, 2, finglq::SubgroupSpec::borel());
  const auto ind32 = repth::induce(repth::det_character_rep(b32, 0), finglq::general_linear(3, 2));
  EXPECT_EQ(ind32.rep.dim(), 21);
  EXPECT_EQ(repth::homomorphism_defect(ind32.rep, 200), 0.0);
}

TEST(Induce, NontrivialSigmaIsAHomomorphism) {
  const auto b = finglq::enumerate_group(2, 5, finglq::SubgroupSpec::borel());
  const auto ind = repth::induce(repth::diagonal_character_rep(b, {1, 3}), finglq::general_linear(2, 5));
  EXPECT_EQ(ind.rep.dim(), 6);
  EXPECT_LT(repth::homomorphism_defect(ind.rep, 300), 1e-12);
}

TEST(FiniteHeckeBasis, RankOne) {
  const auto basis = repth::finite_hecke_basis<Rational>(1, 5, 2);
  ASSERT_EQ(basis.size(), 1u);
  const auto& g = *basis[0].context().group;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    EXPECT_EQ(basis[0](x), Rational(finglq::character_sign(g.field(), 2, g.element(x).det()), 4));
}

TEST(FiniteHeckeBasis, UnitSquaresToItself) {
  const auto basis = repth::finite_hecke_basis<Rational>(2, 2, 0);
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(repth::convolve(basis[0], basis[0]), basis[0]);
}

TEST(FiniteHeckeBasis, QuadraticRelation) {
  for (int chi : {0, 1}) {
    const auto basis = repth::finite_hecke_basis<Rational>(2, 3, chi);
    const auto expect = Rational(3) * basis[0] + Rational(2) * basis[1];
    EXPECT_EQ(repth::convolve(basis[1], basis[1]), expect) << "chi=" << chi;
  }
}

TEST(FiniteHeckeBasis, BiEquivariantAndSpanning) {
  for (auto [e, q, chi] : std::vector<std::tuple<int, int, int>>{{2, 3, 1}, {2, 5, 1}, {3, 2, 0}}) {
    const auto basis = repth::finite_hecke_basis<Complex>(e, q, chi);
    for (const auto& f : basis) EXPECT_TRUE(repth::is_bi_equivariant(f));
    // The intertwining algebra of the induced module has dimension |W|.
    const auto ind = repth::borel_induced(e, q, chi);
    Eigen::MatrixXcd stacked(ind->rep.dim() * ind->rep.dim(), static_cast<long>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto op = repth::hecke_operator(basis[i], *ind);
      stacked.col(static_cast<long>(i)) = Eigen::Map<const Eigen::VectorXcd>(op.data(), op.size());
      for (std::uint32_t y = 0; y < ind->rep.group->order(); y += 7)
        EXPECT_LT((op * ind->rep(y) - ind->rep(y) * op).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXcd>(stacked).rank(), static_cast<long>(basis.size()));
  }
}

TEST(FiniteHeckeBasis, EquivariantConvolutionMatchesFull) {
  const auto basis = repth::finite_hecke_basis<Rational>(3, 2, 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); j += 2)
      EXPECT_EQ(repth::convolve(basis[i], basis[j]), repth::convolve_equivariant(basis[i], basis[j]));
}

// With the bare permutation matrix as lift of s and chi(-1) = -1, the basis
// function f_s picks up the sign chi(det s) = chi(-1) in its quadratic
// relation, and e_tau stops being idempotent.
TEST(FiniteHeckeBasis, BarePermutationLiftBreaksTheQuadraticRelation) {
  const auto basis = repth::finite_hecke_basis<Rational>(2, 3, 1, repth::WeylLift::permutation_matrix);
  const auto twisted = Rational(3) * basis[0] - Rational(2) * basis[1];
  EXPECT_EQ(repth::convolve(basis[1], basis[1]), twisted);
  const auto et = repth::e_tau<Rational>(2, 3, 1, repth::WeylLift::permutation_matrix);
  EXPECT_NE(repth::convolve(et, et), et);
}

TEST(ETau, RankOne) {
  EXPECT_EQ(repth::e_tau<Rational>(1, 3, 1), repth::finite_hecke_basis<Rational>(1, 3, 1)[0]);
}

TEST(ETau, GL22Trivial) {
  const auto et = repth::e_tau<Rational>(2, 2, 0);
  const auto basis = repth::finite_hecke_basis<Rational>(2, 2, 0);
  EXPECT_EQ(et, Rational(1, 3) * (basis[0] + basis[1]));
  EXPECT_EQ(repth::convolve(et, et), et);
}

TEST(ETau, DimensionOfTau) {
  const auto et = repth::e_tau<Rational>(2, 3, 0);
  const auto& g = *et.context().group;
  EXPECT_EQ(et(g.identity()) * Rational(static_cast<long long>(g.order())), 1);
}

class ETauIdempotent : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(ETauIdempotent, AllCharacters) {
  const auto [e, q] = GetParam();
  const auto& f = finglq::FiniteField::get(q);
  for (int chi = 0; chi < q - 1; ++chi) {
    if (finglq::character_is_real(f, chi)) {
      const auto et = repth::e_tau<Rational>(e, q, chi);
      EXPECT_EQ(repth::convolve_equivariant(et, et), et) << "chi=" << chi;
      const auto& g = *et.context().group;
      EXPECT_EQ(et(g.identity()) * Rational(static_cast<long long>(g.order())), 1);
    } else {
      const auto et = repth::e_tau<Complex>(e, q, chi);
      EXPECT_LT(repth::convolve(et, et).max_abs_diff(et), 1e-10) << "chi=" << chi;
      const auto& g = *et.context().group;
      EXPECT_NEAR(std::abs(et(g.identity()) * static_cast<double>(g.order()) - 1.0), 0, 1e-10);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, ETauIdempotent,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 2}, std::pair{3, 3}));

TEST(ESteinberg, IdempotentWithDimensionQToTheN) {
  for (auto [e, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    const auto es = repth::e_steinberg<Rational>(e, q, 0);
    EXPECT_EQ(repth::convolve(es, es), es);
    const auto& g = *es.context().group;
    const long long expect = e == 2 ? q : q * q * q;
    EXPECT_EQ(es(g.identity()) * Rational(static_cast<long long>(g.order())), expect);
  }
}

TEST(SubrepFromIdempotent, TrivialRepresentations) {
  for (int q : {2, 3}) {
    const auto ind = repth::borel_induced(2, q, 0);
    const auto sub = repth::subrep_from_idempotent(repth::e_tau<Complex>(2, q, 0), *ind);
    EXPECT_EQ(sub.rep.dim(), 1);
    EXPECT_NEAR(sub.norm, 1.0, 1e-12);
    for (const auto& m : sub.rep.matrices) EXPECT_NEAR(std::abs(m(0, 0) - 1.0), 0, 1e-12);
  }
}

TEST(SubrepFromIdempotent, Errors) {
  const auto ind = repth::borel_induced(2, 2, 0);
  FinHeckeElt<Complex> zero(repth::bruhat_data(2, 2), 0);
  EXPECT_THROW(repth::subrep_from_idempotent(zero, *ind), std::invalid_argument);
  const auto basis = repth::finite_hecke_basis<Complex>(2, 2, 0);
  EXPECT_THROW(repth::subrep_from_idempotent(basis[1], *ind), std::invalid_argument);
}

TEST(SubrepFromIdempotent, SteinbergIsIrreducible) {
  const auto ind = repth::borel_induced(3, 2, 0);
  const auto sub = repth::subrep_from_idempotent(repth::e_steinberg<Complex>(3, 2, 0), *ind);
  EXPECT_EQ(sub.rep.dim(), 8);
  EXPECT_NEAR(sub.norm, 1.0, 1e-10);
}

TEST(ConjAvg, SpecExamples) {
  const auto st = repth::steinberg_rep(2, 2, 0);  // the 2-dimensional irreducible of S_3
  ASSERT_EQ(st.dim(), 2);
  const auto form = repth::invariant_form(st);
  const Eigen::VectorXcd v = repth::normalize(form, Eigen::VectorXcd::Ones(2));
  EXPECT_NEAR(std::abs(repth::conj_avg(repth::CMatrix::Identity(2, 2), st, form, v) - 2.0), 0, 1e-10);
  EXPECT_NEAR(std::abs(repth::conj_avg(st(three_cycle()), st, form, v) + 1.0), 0, 1e-10);

  const auto triv = repth::det_character_rep(finglq::general_linear(2, 3), 0);
  const auto tf = repth::invariant_form(triv);
  const Eigen::VectorXcd u = Eigen::VectorXcd::Ones(1);
  EXPECT_NEAR(std::abs(repth::conj_avg(u * u.adjoint(), triv, tf, u) - 1.0), 0, 1e-12);
}

TEST(TraceFormula, SpecExamples) {
  const auto ind22 = repth::borel_induced(2, 2, 0);
  const auto et22 = repth::e_tau<Complex>(2, 2, 0);
  const auto at_one = repth::trace_formula_9_5(ind22->rep.group->identity(), et22, *ind22);
  EXPECT_NEAR(std::abs(at_one.rhs - static_cast<double>(at_one.dim)), 0, 1e-10);
  const auto at_cycle = repth::trace_formula_9_5(three_cycle(), et22, *ind22);
  EXPECT_NEAR(std::abs(at_cycle.lhs - 1.0), 0, 1e-10);
  EXPECT_NEAR(std::abs(at_cycle.rhs - 1.0), 0, 1e-10);

  const auto ind23 = repth::borel_induced(2, 3, 0);
  const auto et23 = repth::e_tau<Complex>(2, 3, 0);
  for (std::uint32_t x = 0; x < ind23->rep.group->order(); ++x) {
    const auto r = repth::trace_formula_9_5(x, et23, *ind23);
    EXPECT_NEAR(std::abs(r.rhs - 1.0), 0, 1e-10);
    EXPECT_NEAR(std::abs(r.lhs - 1.0), 0, 1e-10);
  }
}

TEST(TraceFormula, HypothesisViolations) {
  const auto ind = repth::borel_induced(2, 3, 0);
  auto et = repth::e_tau<Complex>(2, 3, 0);
  auto negated = Complex(-1) * et;
  EXPECT_THROW(repth::trace_formula_9_5(0, negated, *ind), repth::HypothesisViolation);
  auto skew = et;
  skew(1) += Complex(0, 0.5);
  EXPECT_THROW(repth::trace_formula_9_5(0, skew, *ind), repth::HypothesisViolation);
}

TEST(CharGeneralizedTrivial, SpecExamples) {
  const auto g22 = finglq::general_linear(2, 2);
  for (std::uint32_t x = 0; x < g22->order(); ++x) EXPECT_NEAR(std::abs(repth::char_generalized_trivial(x, 2, 2, 0) - 1.0), 0, 1e-12);
  const auto g23 = finglq::general_linear(2, 3);
  EXPECT_NEAR(std::abs(repth::char_generalized_trivial(g23->identity(), 2, 3, 0) - 1.0), 0, 1e-12);
  const auto g15 = finglq::general_linear(1, 5);
  for (int chi = 0; chi < 4; ++chi)
    for (std::uint32_t x = 0; x < g15->order(); ++x)
      EXPECT_NEAR(std::abs(repth::char_generalized_trivial(x, 1, 5, chi) - repth::chi_det(g15->element(x), chi)), 0, 1e-12);
}

TEST(CharGeneralizedTrivial, IsChiOfDeterminant) {
  const auto g = finglq::general_linear(2, 5);
  const auto tau = repth::char_generalized_trivial(2, 5, 1);
  for (std::uint32_t x = 0; x < g->order(); x += 3) EXPECT_NEAR(std::abs(tau(x) - repth::chi_det(g->element(x), 1)), 0, 1e-10);
}

TEST(SteinbergChar, SpecExamples) {
  const auto st23 = repth::steinberg_char(2, 3, 0);
  EXPECT_NEAR(std::abs(st23(st23.group->identity()) - 3.0), 0, 1e-12);
  const auto st22 = repth::steinberg_char(2, 2, 0);
  EXPECT_NEAR(std::abs(st22(three_cycle()) + 1.0), 0, 1e-12);
  const auto st1 = repth::steinberg_char(1, 5, 3);
  for (std::uint32_t x = 0; x < st1.group->order(); ++x)
    EXPECT_NEAR(std::abs(st1(x) - repth::chi_det(st1.group->element(x), 3)), 0, 1e-12);
}

TEST(SteinbergChar, IrreducibleOfDegreeQToTheN) {
  for (auto [e, q, n] : std::vector<std::tuple<int, int, int>>{{2, 4, 4}, {2, 5, 5}, {3, 2, 8}, {3, 3, 27}}) {
    const auto st = repth::steinberg_char(e, q, 1 % (q - 1));
    EXPECT_NEAR(std::abs(repth::inner_product(st, st) - 1.0), 0, 1e-10);
    EXPECT_NEAR(std::abs(st(st.group->identity()) - static_cast<double>(n)), 0, 1e-10);
  }
}

TEST(AlvisCurtis, SpecExamples) {
  EXPECT_TRUE(repth::alvis_curtis_sign_check(three_cycle(), 2, 2, 0).holds);
  const auto g23 = finglq::general_linear(2, 3);
  const auto order8 = find_element(*g23, {0, 1, 1, 1});
  EXPECT_TRUE(repth::alvis_curtis_sign_check(order8, 2, 3, 0).holds);
  const auto g32 = finglq::general_linear(3, 2);
  const auto c = finglq::GLMatrix::companion(g32->field(), {1, 1, 0, 1});
  EXPECT_TRUE(repth::alvis_curtis_sign_check(*g32->index_of(c), 3, 2, 0).holds);
  EXPECT_THROW(repth::alvis_curtis_sign_check(g23->identity(), 2, 3, 0), std::invalid_argument);
}

TEST(FrobeniusTransport, SpecConfigurations) {
  const auto b22 = finglq::enumerate_group(2, 2, finglq::SubgroupSpec::borel());
  const auto r1 = repth::frobenius_transport_check(repth::det_character_rep(b22, 0), finglq::general_linear(2, 2), 20, 1);
  EXPECT_EQ(r1.pairs, 20);
  EXPECT_LT(r1.max_defect, 1e-9);
  EXPECT_LT(r1.max_roundtrip_defect, 1e-9);
  EXPECT_LT(r1.unit_defect, 1e-9);
  const auto b23 = finglq::enumerate_group(2, 3, finglq::SubgroupSpec::borel());
  const auto r2 = repth::frobenius_transport_check(repth::diagonal_character_rep(b23, {1, 0}), finglq::general_linear(2, 3), 20, 2);
  EXPECT_LT(r2.max_defect, 1e-9);
  EXPECT_LT(r2.max_roundtrip_defect, 1e-9);
  EXPECT_LT(r2.unit_defect, 1e-9);
}

TEST(FrobeniusTransport, DetectsAWrongAction) {
  // A function that is not bi-equivariant breaks the equality.
  const auto b = finglq::enumerate_group(2, 3, finglq::SubgroupSpec::borel());
  const auto g = finglq::general_linear(2, 3);
  const auto sigma = repth::diagonal_character_rep(b, {1, 0});
  const auto ind = repth::induce(sigma, g);
  std::vector<std::uint32_t> h_in_g;
  for (const auto& h : b->elements()) h_in_g.push_back(*g->index_of(h));
  const auto phi = repth::average_intertwiner(ind.rep, sigma, h_in_g, repth::CMatrix::Ones(ind.rep.dim(), 1));
  repth::MatrixFunction f(g->order(), repth::CMatrix::Zero(1, 1));
  f[5] = repth::CMatrix::Ones(1, 1);
  const auto s = repth::frobenius_transport(ind, ind.rep, phi, f);
  EXPECT_GT((s.direct - s.transported).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(CharacterTable, Csv) {
  const auto csv = repth::character_table_csv(repth::steinberg_char(2, 2, 0));
  EXPECT_EQ(csv.rfind("class_representative,class_size,value_re,value_im\n", 0), 0u);
  EXPECT_NE(csv.find("\"2:[1,0,0,1]\",1,2,0"), std::string::npos);
}
