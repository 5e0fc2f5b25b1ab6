#include <gtest/gtest.h>

#include <cmath>

#include "cstar/m2.hpp"

using namespace cstar;

namespace {

CMatrix diag2(Complex a, Complex b) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

}  // namespace

TEST(Numerics, OperatorNormMatchesKnownSingularValues) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = 3.0;
  m(1, 0) = Complex(0.0, -5.0);
  m(2, 2) = 1.0;
  EXPECT_NEAR(operator_norm(m), 5.0, 1e-12);
  EXPECT_NEAR(operator_norm(CMatrix::Identity(4, 4) * 2.5), 2.5, 1e-12);
}

TEST(Numerics, OperatorNormRejectsNonFinite) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(operator_norm(m), Error);
}

TEST(Numerics, HaarUnitaryIsUnitary) {
  Rng rng(7);
  for (int n : {1, 2, 5})
    EXPECT_LT(unitarity_defect(haar_unitary(n, rng)), 1e-12);
}

TEST(Numerics, PositiveSqrtSquaresBack) {
  Rng rng(3);
  const CMatrix x = random_matrix(4, 4, rng);
  const CMatrix p = x.adjoint() * x;
  const CMatrix r = positive_sqrt(p);
  EXPECT_LT(operator_norm(r * r - p), 1e-10);
  EXPECT_LT(operator_norm(positive_inverse(p) * p - CMatrix::Identity(4, 4)), 1e-8);
}

TEST(Numerics, SpanProjectorFindsCoordinatesAndRejectsOutsiders) {
  const std::vector<CMatrix> span{matrix_unit(2, 0, 0), matrix_unit(2, 1, 1), matrix_unit(2, 0, 0) * 2.0};
  const SpanProjector proj(span);
  EXPECT_EQ(proj.rank(), 2);
  const CMatrix target = diag2(3.0, Complex(0.0, 1.0));
  const auto c = proj.coordinates(target);
  ASSERT_TRUE(c.has_value());
  EXPECT_LT((proj.synthesize(*c) - target).norm(), 1e-12);
  EXPECT_FALSE(proj.coordinates(matrix_unit(2, 0, 1)).has_value());
}

TEST(Algebra, DimensionsAndMembership) {
  const MatrixStarAlgebra full = MatrixStarAlgebra::full(3);
  EXPECT_EQ(full.dim(), 9);
  const MatrixStarAlgebra diag = MatrixStarAlgebra::from_spanning_set({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
  EXPECT_EQ(diag.dim(), 2);
  EXPECT_TRUE(diag.contains(diag2(4.0, -1.0)));
  EXPECT_FALSE(diag.contains(matrix_unit(2, 0, 1)));
  EXPECT_TRUE(verify_star_algebra(diag).passed());
}

TEST(Algebra, NonAlgebraSpanFailsVerification) {
  // span{1, e_12} is not closed under adjoints
  const MatrixStarAlgebra bad = MatrixStarAlgebra::from_spanning_set({CMatrix::Identity(2, 2), matrix_unit(2, 0, 1)});
  EXPECT_FALSE(verify_star_algebra(bad).passed());
}

TEST(Algebra, TraceExpectationOnM2) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  EXPECT_TRUE(verify_expectation(*inc.E).passed());
  EXPECT_TRUE(verify_expectation(*inc.F).passed());
  CMatrix x(2, 2);
  x << 1.0, 2.0, 3.0, Complex(5.0, 1.0);
  EXPECT_LT(operator_norm(inc.E->apply(x) - Complex(3.0, 0.5) * CMatrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(operator_norm(inc.F->apply(x) - diag2(1.0, Complex(5.0, 1.0))), 1e-12);
}

TEST(Algebra, IndexValuesOnM2) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  EXPECT_LT(operator_norm(watatani_index(*inc.E) - 4.0 * CMatrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(operator_norm(watatani_index(*inc.F) - 2.0 * CMatrix::Identity(2, 2)), 1e-12);
}

TEST(Algebra, IndexDoesNotDependOnQuasiBasis) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  Rng rng(11);
  const CMatrix u = haar_unitary(2, rng);
  // {e_ij u} is a second quasi-basis for F
  std::vector<CMatrix> qb;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      qb.push_back(matrix_unit(2, i, j) * u);
  const ConditionalExpectation F2 = inc.F->with_quasi_basis(qb);
  EXPECT_LT(operator_norm(F2.index() - inc.F->index()), 1e-10);
}

TEST(Algebra, WrongQuasiBasisIsRejected) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  EXPECT_THROW(inc.F->with_quasi_basis({matrix_unit(2, 0, 0)}), Error);
}

TEST(Algebra, ApplyRejectsOutsideSource) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  const ConditionalExpectation restricted = restrict_expectation(*inc.E, inc.Delta, *inc.F);
  EXPECT_THROW(restricted.apply(matrix_unit(2, 0, 1)), Error);
}

TEST(Algebra, RestrictionOfTraceToDiagonal) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  const ConditionalExpectation restricted = restrict_expectation(*inc.E, inc.Delta, *inc.F);
  EXPECT_LT(operator_norm(restricted.apply(diag2(2.0, 4.0)) - 3.0 * CMatrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(operator_norm(restricted.index() - 2.0 * CMatrix::Identity(2, 2)), 1e-10);
  EXPECT_TRUE(is_compatible(*inc.E, *inc.F));
}

TEST(Algebra, ConjugatedExpectationMatchesFormula) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  Rng rng(5);
  const CMatrix u = haar_unitary(2, rng);
  const ConditionalExpectation Fu = conjugate_expectation(*inc.F, u);
  const CMatrix x = random_matrix(2, 2, rng);
  const CMatrix expected = u * inc.F->apply(u.adjoint() * x * u) * u.adjoint();
  EXPECT_LT(operator_norm(Fu.apply(x) - expected), 1e-10);
  EXPECT_LT(operator_norm(Fu.index() - 2.0 * CMatrix::Identity(2, 2)), 1e-10);
}

TEST(Algebra, NonTracialWeightBreaksCompatibilityOfConjugate) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  const ExpectationPtr Fu = m2::conjugated_diagonal(inc, m2::remark_unitary());
  // the map sends x to (a11 + a22)/2; E_t sends diag(1, 0) to t
  const ExpectationPtr Et = m2::weighted_expectation(inc, 0.3);
  EXPECT_FALSE(is_compatible(*Et, *Fu));
  EXPECT_NEAR(compatibility_residual(*Et, *Fu, 1e-9), 0.2, 1e-9);
  EXPECT_TRUE(is_compatible(*m2::weighted_expectation(inc, 0.5), *Fu));
}

TEST(Algebra, CauchySchwarzOnSamples) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  Rng rng(19);
  for (int s = 0; s < 20; ++s)
    EXPECT_TRUE(cauchy_schwarz_check(*inc.E, random_matrix(2, 2, rng), random_matrix(2, 2, rng)).holds);
}

TEST(Algebra, CentralElements) {
  const MatrixStarAlgebra m2 = MatrixStarAlgebra::full(2);
  EXPECT_TRUE(is_central(3.0 * CMatrix::Identity(2, 2), m2));
  EXPECT_FALSE(is_central(diag2(1.0, 2.0), m2));
}
