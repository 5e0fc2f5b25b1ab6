// Interior and exterior angles between intermediate subalgebras.
//
// Two independent routes for the interior angle: a closed quasi-basis formula
// evaluated in A, and the definition through Jones projections in the module
// representation of the basic construction. The exterior angle is the
// interior angle one level up the tower.

#ifndef CSTAR_ANGLES_HPP_
#define CSTAR_ANGLES_HPP_

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cstar/tower.hpp"

namespace cstar {

enum class AngleRoute { Formula, Definition };

inline const char* to_string(AngleRoute r) {
  return r == AngleRoute::Formula ? "formula" : "definition";
}

struct AngleDiagnostics {
  double numerator = 0.0;
  double denom_c = 0.0;  // ||e_C - e_B|| in the module norm
  double denom_d = 0.0;
  std::optional<double> cross_check;  // a second evaluation of cos, when one exists
};

struct AngleResult {
  double cos_value = 0.0;
  double angle_rad = 0.0;
  AngleRoute route = AngleRoute::Formula;
  AngleDiagnostics diagnostics;

  double angle_deg() const { return angle_rad * 180.0 / std::numbers::pi; }
};

namespace detail {

inline AngleResult finish_angle(double numerator, double denom_c, double denom_d, AngleRoute route) {
  if (!(denom_c > 0.0) || !(denom_d > 0.0))
    fail(ErrorCode::DegenerateIntermediate, "zero denominator: an intermediate equals the bottom algebra");
  const double c = numerator / (denom_c * denom_d);
  if (!std::isfinite(c) || c < -1e-9 || c > 1.0 + 1e-9)
    fail(ErrorCode::NumericIntegrity, "cosine " + std::to_string(c) + " is outside [0, 1]");
  AngleResult r;
  r.cos_value = std::clamp(c, 0.0, 1.0);
  r.angle_rad = std::acos(r.cos_value);
  r.route = route;
  r.diagnostics = {numerator, denom_c, denom_d, std::nullopt};
  return r;
}

inline void require_nondegenerate(const CMatrix& index, const char* which) {
  const CMatrix one = CMatrix::Identity(index.rows(), index.cols());
  if (operator_norm(index - one) < 1e-9)
    fail(ErrorCode::DegenerateIntermediate, std::string(which) + " coincides with the bottom algebra");
}

/// c such that m = c * 1, if m is scalar.
inline std::optional<double> scalar_value(const CMatrix& m, double tol = 1e-9) {
  const Complex c = m.trace() / static_cast<double>(m.rows());
  if (std::abs(c.imag()) > tol)
    return std::nullopt;
  if (operator_norm(m - c * CMatrix::Identity(m.rows(), m.cols())) > tol * (1.0 + std::abs(c)))
    return std::nullopt;
  return c.real();
}

}  // namespace detail

/// Quasi-basis formula. E_C and E_D are E restricted to C and D, carrying
/// verified quasi-bases {mu_j} and {delta_k}.
inline AngleResult interior_angle_formula(const ConditionalExpectation& E, const ConditionalExpectation& E_C,
                                          const ConditionalExpectation& E_D) {
  const std::vector<CMatrix>& mu = E_C.quasi_basis();
  const std::vector<CMatrix>& delta = E_D.quasi_basis();
  const CMatrix& index_c = E_C.index();
  const CMatrix& index_d = E_D.index();
  detail::require_nondegenerate(index_c, "C");
  detail::require_nondegenerate(index_d, "D");
  const Eigen::Index n = E.source().ambient_dim();
  const CMatrix one = CMatrix::Identity(n, n);

  CMatrix cross = CMatrix::Zero(n, n);
  for (const CMatrix& m : mu)
    for (const CMatrix& d : delta)
      cross += m * E.apply_unchecked(m.adjoint() * d) * d.adjoint();

  const CMatrix index_inv = positive_inverse(E.index());
  const double num = operator_norm(index_inv * (cross - one));
  const double nc = std::sqrt(operator_norm(index_inv * (index_c - one)));
  const double nd = std::sqrt(operator_norm(index_inv * (index_d - one)));
  AngleResult r = detail::finish_angle(num, nc, nd, AngleRoute::Formula);

  if (detail::scalar_value(E.index())) {
    const double scalar_cos = operator_norm(cross - one) /
                              (std::sqrt(operator_norm(index_c - one)) * std::sqrt(operator_norm(index_d - one)));
    if (std::abs(scalar_cos - num / (nc * nd)) > 1e-8)
      fail(ErrorCode::NumericIntegrity, "scalar-index form disagrees with the general formula");
    r.diagnostics.cross_check = scalar_cos;
  }
  return r;
}

/// Formula route from the compatible expectations F: A -> C and F': A -> D,
/// using the derived quasi-bases {F(lambda_i)}, {F'(lambda_i)}.
inline AngleResult interior_angle_formula_from(const ConditionalExpectation& E, const ConditionalExpectation& F,
                                               const ConditionalExpectation& Fp, double tol = kDefaultTol) {
  const ConditionalExpectation E_C = restrict_expectation(E, F.target_ptr(), F, tol);
  const ConditionalExpectation E_D = restrict_expectation(E, Fp.target_ptr(), Fp, tol);
  return interior_angle_formula(E, E_C, E_D);
}

/// Definition route from Jones projections already built on `level`; lets
/// lattice sweeps build each e_C once.
inline AngleResult interior_angle_definition(const TowerLevel& level, const IntermediateProjection& pc,
                                             const IntermediateProjection& pd) {
  detail::require_nondegenerate(pc.restricted->index(), "C");
  detail::require_nondegenerate(pd.restricted->index(), "D");
  const CMatrix& eB = level.jones;
  const double num = operator_norm(dual_expectation_value(level, pc.projection * pd.projection - eB));
  const double nc = std::sqrt(operator_norm(dual_expectation_value(level, pc.projection - eB)));
  const double nd = std::sqrt(operator_norm(dual_expectation_value(level, pd.projection - eB)));
  return detail::finish_angle(num, nc, nd, AngleRoute::Definition);
}

/// Definition route: norms of E_1 applied to products of Jones projections.
inline AngleResult interior_angle_definition(const TowerLevel& level, const ConditionalExpectation& F,
                                             const ConditionalExpectation& Fp, double tol = kDefaultTol) {
  return interior_angle_definition(level, intermediate_projection_data(level, F.target_ptr(), F, tol),
                                   intermediate_projection_data(level, Fp.target_ptr(), Fp, tol));
}

struct ExteriorClosedForm {
  CMatrix inner;          // <e_{C1} - e_2, e_{D1} - e_2>_{A_1} as a module operator
  CMatrix norm_sq_c;      // E_2((e_{C1} - e_2)^2)
  CMatrix norm_sq_d;
  double cos_value = 0.0;
};

/// Closed expressions for the level-2 quantities, assembled from the
/// level-1 quasi-bases. Needs scalar Ind(E|_C), Ind(E|_D).
inline ExteriorClosedForm exterior_closed_form(const TowerLevel& level, const ConditionalExpectation& F,
                                               const ConditionalExpectation& Fp, const CMatrix& eC,
                                               const CMatrix& eD, const ConditionalExpectation& E_C,
                                               const ConditionalExpectation& E_D) {
  const ConditionalExpectation& E = *level.E;
  const auto ic = detail::scalar_value(E_C.index(), 1e-8);
  const auto id = detail::scalar_value(E_D.index(), 1e-8);
  if (!ic || !id)
    fail(ErrorCode::NonCentralIndex, "closed exterior expressions need scalar restricted indices");
  const Eigen::Index d = level.module_dim;
  const CMatrix one = CMatrix::Identity(d, d);
  const CMatrix index_e1_inv = positive_inverse(level.E1->index());
  const std::vector<CMatrix>& lambda = E.quasi_basis();
  const std::vector<CMatrix>& mu = E_C.quasi_basis();
  const std::vector<CMatrix>& delta = E_D.quasi_basis();

  std::vector<CMatrix> L_lambda;
  for (const CMatrix& l : lambda)
    L_lambda.push_back(level.left_mult(l));

  const CMatrix eC_indFp = eC * level.left_mult(Fp.index());
  CMatrix sum = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (std::size_t ip = 0; ip < lambda.size(); ++ip) {
      const CMatrix mid = lambda[i].adjoint() * lambda[ip];
      CMatrix s = CMatrix::Zero(mid.rows(), mid.cols());
      for (const CMatrix& m : mu)
        for (const CMatrix& dl : delta)
          s += m * E.apply_unchecked(m.adjoint() * mid * dl) * dl.adjoint();
      sum += L_lambda[i] * eC_indFp * level.left_mult(s) * eD * L_lambda[ip].adjoint();
    }
  }
  ExteriorClosedForm out;
  out.inner = index_e1_inv * (sum / (*ic * *ic * *id) - one);

  const auto norm_part = [&](const ConditionalExpectation& G, const CMatrix& e, double ind) {
    const CMatrix middle = level.left_mult(G.apply_unchecked(G.index())) * e;
    CMatrix acc = CMatrix::Zero(d, d);
    for (const CMatrix& L : L_lambda)
      acc += L * middle * L.adjoint();
    return CMatrix(index_e1_inv * (acc / ind - one));
  };
  out.norm_sq_c = norm_part(F, eC, *ic);
  out.norm_sq_d = norm_part(Fp, eD, *id);
  const double nc = operator_norm(out.norm_sq_c);
  const double nd = operator_norm(out.norm_sq_d);
  if (!(nc > 0.0) || !(nd > 0.0))
    fail(ErrorCode::DegenerateIntermediate, "an intermediate coincides with the top algebra");
  out.cos_value = operator_norm(out.inner) / std::sqrt(nc * nd);
  return out;
}

/// beta(C, D) = alpha(C_1, D_1) with respect to E_1, by the definition route
/// at level 2, cross-checked against the closed expressions.
inline AngleResult exterior_angle(const TowerLevel& level, const ConditionalExpectation& F,
                                  const ConditionalExpectation& Fp, const TowerLevel* next = nullptr,
                                  double tol = kDefaultTol) {
  const CMatrix one = CMatrix::Identity(F.source().ambient_dim(), F.source().ambient_dim());
  if (operator_norm(F.index() - one) < 1e-9 || operator_norm(Fp.index() - one) < 1e-9)
    fail(ErrorCode::DegenerateIntermediate, "an intermediate coincides with the top algebra");

  const IntermediateProjection pc = intermediate_projection_data(level, F.target_ptr(), F, tol);
  const IntermediateProjection pd = intermediate_projection_data(level, Fp.target_ptr(), Fp, tol);
  const ConditionalExpectation G_C = intermediate_dual_expectation(level, F.target_ptr(), F, tol);
  const ConditionalExpectation G_D = intermediate_dual_expectation(level, Fp.target_ptr(), Fp, tol);

  std::optional<TowerLevel> built;
  if (!next) {
    built = iterate_tower(level, tol);
    next = &*built;
  }
  const IntermediateProjection qc = intermediate_projection_data(*next, G_C.target_ptr(), G_C, 1e-8);
  const IntermediateProjection qd = intermediate_projection_data(*next, G_D.target_ptr(), G_D, 1e-8);
  const CMatrix& e2 = next->jones;
  const CMatrix inner = dual_expectation_value(*next, qc.projection * qd.projection - e2);
  const CMatrix sq_c = dual_expectation_value(*next, qc.projection - e2);
  const CMatrix sq_d = dual_expectation_value(*next, qd.projection - e2);
  AngleResult r = detail::finish_angle(operator_norm(inner), std::sqrt(operator_norm(sq_c)),
                                       std::sqrt(operator_norm(sq_d)), AngleRoute::Definition);

  const ExteriorClosedForm closed =
      exterior_closed_form(level, F, Fp, pc.projection, pd.projection, *pc.restricted, *pd.restricted);
  const double mismatch = std::max({operator_norm(closed.inner - inner), operator_norm(closed.norm_sq_c - sq_c),
                                    operator_norm(closed.norm_sq_d - sq_d),
                                    std::abs(closed.cos_value - r.cos_value)});
  if (mismatch > 1e-7)
    fail(ErrorCode::NumericIntegrity,
         "level-2 definition and closed expressions disagree by " + std::to_string(mismatch));
  r.diagnostics.cross_check = closed.cos_value;
  return r;
}

}  // namespace cstar

#endif  // CSTAR_ANGLES_HPP_
