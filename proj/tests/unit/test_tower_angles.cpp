#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cstar/groups.hpp"
#include "cstar/m2.hpp"

using namespace cstar;
using namespace std::complex_literals;

namespace {

double max_entry(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// id (x) E on M_2 (x) M_2, E the normalised trace: the (i, j) entry is half
// the trace of the (i, j) block.
CMatrix block_trace_oracle(const CMatrix& x) {
  CMatrix out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = 0.5 * x.block(2 * i, 2 * j, 2, 2).trace();
  return out;
}

const m2::Workspace& workspace() {
  static const m2::Workspace ws;
  return ws;
}

// e_C e_D as displayed for C the diagonal and D = u C u*.
CMatrix printed_eC_eD(const m2::Unitary2& u) {
  const double a = std::norm(u.l11);
  const double b = std::norm(u.l12);
  const Complex p = u.l21 * std::conj(u.l11) * (a - b);
  const Complex q = std::conj(u.l21) * u.l11 * (a - b);
  CMatrix m = CMatrix::Zero(4, 4);
  m.row(0) << a * a + b * b, p, q, 2 * a * b;
  m.row(3) << 2 * a * b, -p, -q, a * a + b * b;
  return m;
}

}  // namespace

TEST(Tower, M2LevelPassesItsInvariants) {
  const VerificationReport r = verify_tower_level(workspace().level);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Tower, JonesProjectionMatchesDisplayedMatrix) {
  CMatrix e1(4, 4);
  e1 << 0.5, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5;
  EXPECT_LT(max_entry(workspace().level.jones - e1), 1e-12);
}

TEST(Tower, LeftMultiplicationIsTensorWithIdentity) {
  Rng rng(2);
  const CMatrix a = random_matrix(2, 2, rng);
  const CMatrix expected = Eigen::kroneckerProduct(a, CMatrix::Identity(2, 2));
  EXPECT_LT(max_entry(workspace().level.left_mult(a) - expected), 1e-12);
}

TEST(Tower, DualExpectationIsBlockTrace) {
  Rng rng(4);
  for (int s = 0; s < 10; ++s) {
    const CMatrix x = random_matrix(4, 4, rng);
    EXPECT_LT(max_entry(dual_expectation_value(workspace().level, x) - block_trace_oracle(x)), 1e-10);
    EXPECT_LT(max_entry(dual_expectation_pointwise(workspace().level, x) - block_trace_oracle(x)), 1e-10);
  }
}

TEST(Tower, DualIndexIsFour) {
  EXPECT_LT(operator_norm(workspace().level.E1->index() - 4.0 * CMatrix::Identity(4, 4)), 1e-9);
}

TEST(Tower, DiagonalProjectionMatchesDisplayedMatrix) {
  const m2::Workspace& ws = workspace();
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1.0;
  EXPECT_LT(max_entry(intermediate_projection(ws.level, ws.inc.Delta, *ws.inc.F) - expected), 1e-12);
}

TEST(Tower, ConjugateProjectionMatchesEntryFormula) {
  const m2::Workspace& ws = workspace();
  Rng rng(8);
  for (int s = 0; s < 10; ++s) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, u);
    const CMatrix eD = intermediate_projection(ws.level, Fu->target_ptr(), *Fu);
    EXPECT_LT(max_entry(eD - m2::closed_form_eD(u)), 1e-10);
  }
}

TEST(Tower, ProductsOfProjectionsMatchDisplayedMatrices) {
  const m2::Workspace& ws = workspace();
  const CMatrix eC = intermediate_projection(ws.level, ws.inc.Delta, *ws.inc.F);
  Rng rng(12);
  for (int s = 0; s < 10; ++s) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, u);
    const CMatrix eD = intermediate_projection(ws.level, Fu->target_ptr(), *Fu);
    const CMatrix expected = printed_eC_eD(u);
    EXPECT_LT(max_entry(eC * eD - expected), 1e-10);
    EXPECT_LT(max_entry(eD * eC - expected.adjoint()), 1e-10);
  }
}

TEST(Tower, ConjugatedProjectionIsNotTheJonesProjectionOfTheConjugate) {
  const m2::GapDemo demo = m2::hadamard_gap_demo(m2::remark_unitary());
  CMatrix conj(4, 4), jones(4, 4);
  conj << 0.5, 0, -0.5i, 0, 0, 0.5, 0, 0.5i, 0.5i, 0, 0.5, 0, 0, -0.5i, 0, 0.5;
  jones << 0.5, 0, 0, 0.5, 0, 0.5, -0.5, 0, 0, -0.5, 0.5, 0, 0.5, 0, 0, 0.5;
  EXPECT_LT(max_entry(demo.u_eC_u_star - conj), 1e-10);
  EXPECT_LT(max_entry(demo.e_uCu_star - jones), 1e-10);
  EXPECT_GT(operator_norm(demo.u_eC_u_star - demo.e_uCu_star), 0.4);
  EXPECT_FALSE(demo.equal);
}

TEST(Tower, DualExpectationRejectsElementsOutsideA1) {
  const groups::FiniteGroup G = groups::FiniteGroup::cyclic(4);
  auto Gp = std::make_shared<const groups::FiniteGroup>(G);
  const groups::GroupInclusion inc = groups::group_algebra_inclusion(Gp, groups::parse_subgroup(G, "2"));
  const TowerLevel level = build_tower_level(inc.E);
  // A_1 has dimension 8 inside M_4; a generic matrix is outside
  Rng rng(1);
  EXPECT_THROW(dual_expectation_value(level, random_matrix(4, 4, rng)), Error);
}

TEST(Tower, IntermediateIdentitiesOnGroupTower) {
  auto G = std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::parse("Z4xZ2"));
  const groups::GroupInclusion inc = groups::group_algebra_inclusion(G, groups::trivial(*G));
  const TowerLevel level = build_tower_level(inc.E);
  const ExpectationPtr F = groups::subgroup_expectation(inc.algebra, groups::parse_subgroup(*G, "(1,0)"));
  const IntermediateProjection p = intermediate_projection_data(level, F->target_ptr(), *F);
  const CMatrix& eB = level.jones;
  EXPECT_LT(operator_norm(p.projection * eB - eB), 1e-9);
  EXPECT_LT(operator_norm(eB * p.projection - eB), 1e-9);
  // [G : 1] = 8, [C : 1] = 4
  EXPECT_LT(operator_norm(dual_expectation_value(level, eB) - CMatrix::Identity(8, 8) / 8.0), 1e-9);
  EXPECT_LT(operator_norm(dual_expectation_value(level, p.projection) - CMatrix::Identity(8, 8) * 0.5), 1e-9);
  const ConditionalExpectation Gc = intermediate_dual_expectation(level, F->target_ptr(), *F);
  EXPECT_LT(operator_norm(Gc.map_matrix() * Gc.map_matrix() - Gc.map_matrix()), 1e-9);
  EXPECT_LT(compatibility_residual(*level.E1, Gc, 1e-8), 1e-8);
  EXPECT_LT(quasi_basis_residual(Gc, Gc.quasi_basis()), 1e-8);
}

TEST(Angles, RoutesAgreeOnRandomUnitaries) {
  const m2::Workspace& ws = workspace();
  Rng rng(21);
  for (int s = 0; s < 20; ++s) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    const m2::ThreeRoutes r = m2::three_routes(ws, u);
    EXPECT_LT(r.max_residual(), 1e-7);
    EXPECT_EQ(r.formula.route, AngleRoute::Formula);
    EXPECT_EQ(r.definition.route, AngleRoute::Definition);
  }
}

TEST(Angles, SymmetricAndZeroOnSelf) {
  const m2::Workspace& ws = workspace();
  Rng rng(22);
  const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, m2::Unitary2::random(rng));
  const double ab = interior_angle_formula_from(*ws.inc.E, *ws.inc.F, *Fu).angle_rad;
  const double ba = interior_angle_formula_from(*ws.inc.E, *Fu, *ws.inc.F).angle_rad;
  EXPECT_NEAR(ab, ba, 1e-12);
  EXPECT_NEAR(interior_angle_definition(ws.level, *Fu, *Fu).angle_rad, 0.0, 1e-6);
  EXPECT_NEAR(interior_angle_formula_from(*ws.inc.E, *Fu, *Fu).cos_value, 1.0, 1e-12);
}

TEST(Angles, DegenerateIntermediateIsRejected) {
  const m2::Workspace& ws = workspace();
  const ExpectationPtr onto_b = ws.inc.E;
  try {
    interior_angle_formula_from(*ws.inc.E, *onto_b, *ws.inc.F);
    FAIL() << "expected DegenerateIntermediate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateIntermediate);
  }
}

TEST(Angles, IncompatibleExpectationIsRejected) {
  const m2::Inclusion inc = m2::canonical_inclusion();
  const ExpectationPtr Et = m2::weighted_expectation(inc, 0.3);
  const TowerLevel level = build_tower_level(Et);
  const ExpectationPtr Fu = m2::conjugated_diagonal(inc, m2::remark_unitary());
  try {
    intermediate_projection(level, Fu->target_ptr(), *Fu);
    FAIL() << "expected NotCompatible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCompatible);
  }
}

TEST(Angles, GroupFormulaMatchesQuasiBasisFormula) {
  auto G = std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::parse("Z2xZ2xZ2"));
  const groups::GroupInclusion inc = groups::group_algebra_inclusion(G, groups::trivial(*G));
  const groups::Subgroup K = groups::parse_subgroup(*G, "(1,0,0),(0,1,0)");
  const groups::Subgroup L = groups::parse_subgroup(*G, "(0,1,0),(0,0,1)");
  const AngleResult a = interior_angle_formula_from(*inc.E, *groups::subgroup_expectation(inc.algebra, K),
                                                    *groups::subgroup_expectation(inc.algebra, L));
  // ([K cap L : 1] - 1) / ([K : 1] - 1) = 1/3
  EXPECT_NEAR(a.cos_value, 1.0 / 3.0, 1e-10);
}

TEST(Angles, ExteriorRoutesAgreeOnM2) {
  const m2::Workspace& ws = workspace();
  const TowerLevel next = iterate_tower(ws.level);
  Rng rng(30);
  for (int s = 0; s < 3; ++s) {
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, m2::Unitary2::random(rng));
    const AngleResult b = exterior_angle(ws.level, *ws.inc.F, *Fu, &next);
    ASSERT_TRUE(b.diagnostics.cross_check.has_value());
    EXPECT_NEAR(*b.diagnostics.cross_check, b.cos_value, 1e-7);
  }
  EXPECT_NEAR(exterior_angle(ws.level, *ws.inc.F, *ws.inc.F, &next).angle_rad, 0.0, 1e-6);
}

TEST(Angles, ExteriorOnCyclicChain) {
  auto G = std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::cyclic(4));
  const groups::GroupInclusion inc = groups::group_algebra_inclusion(G, groups::trivial(*G));
  const TowerLevel level = build_tower_level(inc.E);
  const ExpectationPtr F = groups::subgroup_expectation(inc.algebra, groups::parse_subgroup(*G, "2"));
  const AngleResult b = exterior_angle(level, *F, *F);
  EXPECT_NEAR(b.cos_value, 1.0, 1e-8);
  EXPECT_NEAR(*b.diagnostics.cross_check, 1.0, 1e-8);
}
