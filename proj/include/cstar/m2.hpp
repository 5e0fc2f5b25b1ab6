// The inclusion C I_2 in M_2(C) with its trace expectation, the diagonal
// subalgebra and its unitary conjugates: closed forms next to the generic
// machinery so each can check the other.

#ifndef CSTAR_M2_HPP_
#define CSTAR_M2_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "cstar/angles.hpp"

namespace cstar::m2 {

using namespace std::complex_literals;

struct Unitary2 {
  Complex l11, l12, l21, l22;

  CMatrix matrix() const {
    CMatrix u(2, 2);
    u << l11, l12, l21, l22;
    return u;
  }

  static Unitary2 from_matrix(const CMatrix& u, double tol = 1e-12) {
    if (u.rows() != 2 || u.cols() != 2)
      fail(ErrorCode::ShapeMismatch, "expected a 2x2 matrix, got " + shape_string(u));
    require_finite(u);
    const double defect = unitarity_defect(u);
    if (defect > tol)
      fail(ErrorCode::NotUnitary, "u*u differs from 1 by " + std::to_string(defect));
    return {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
  }

  static Unitary2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  /// [[cos t, -sin t], [sin t, cos t]]
  static Unitary2 rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, s, c};
  }

  static Unitary2 random(Rng& rng) { return from_matrix(haar_unitary(2, rng), 1e-10); }

  /// 2 |l11| |l12|, the only quantity the angle depends on.
  double overlap() const { return 2.0 * std::abs(l11) * std::abs(l12); }

  bool is_hadamard(double tol = 1e-9) const { return std::abs(std::abs(l11) - std::abs(l12)) < tol; }
};

struct Inclusion {
  AlgebraPtr A;      // M_2
  AlgebraPtr B;      // C I_2
  AlgebraPtr Delta;  // diagonal matrices
  ExpectationPtr E;  // (a11 + a22)/2 I_2, quasi-basis {sqrt(2) e_ij}
  ExpectationPtr F;  // diagonal part, quasi-basis {e_ij}
};

inline Inclusion canonical_inclusion() {
  Inclusion inc;
  inc.A = make_algebra(MatrixStarAlgebra::full(2));
  inc.B = make_algebra(MatrixStarAlgebra::scalars(2));
  inc.Delta = make_algebra(MatrixStarAlgebra::from_spanning_set({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)}));
  std::vector<CMatrix> units;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      units.push_back(matrix_unit(2, i, j));
  std::vector<CMatrix> scaled;
  for (const CMatrix& e : units)
    scaled.push_back(std::sqrt(2.0) * e);
  inc.E = make_expectation(ConditionalExpectation::from_function(inc.A, inc.B, [](const CMatrix& x) {
                             return CMatrix(0.5 * x.trace() * CMatrix::Identity(2, 2));
                           }).with_quasi_basis(std::move(scaled)));
  inc.F = make_expectation(ConditionalExpectation::from_function(inc.A, inc.Delta, [](const CMatrix& x) {
                             return CMatrix(x.diagonal().asDiagonal());
                           }).with_quasi_basis(std::move(units)));
  return inc;
}

/// F_u onto u Delta u*.
inline ExpectationPtr conjugated_diagonal(const Inclusion& inc, const Unitary2& u) {
  return make_expectation(conjugate_expectation(*inc.F, u.matrix(), 1e-9));
}

/// cos = sqrt(1 - (2|l11||l12|)^2) = ||l11|^2 - |l12|^2|. The fourth-power
/// variant sometimes quoted for this angle disagrees with both numeric routes;
/// the norm of T below is sqrt(1 - (2|l11||l12|)^2) / 4.
inline double closed_form_cos(const Unitary2& u) {
  return std::sqrt(std::max(0.0, 1.0 - u.overlap() * u.overlap()));
}

inline double closed_form_angle(const Unitary2& u) {
  Unitary2::from_matrix(u.matrix(), 1e-9);
  return std::acos(std::clamp(closed_form_cos(u), 0.0, 1.0));
}

/// How the two entries x34, x43 missing from the printed entry list are filled.
enum class EntryCompletion {
  Consistent,  // x34 = -x12, x43 = -conj(x12): the values forced by e_D x e_D = F_u(x) e_D
  Literal,     // left at zero, as a literal transcription would
};

/// Jones projection for u Delta u* in module coordinates (a11, a12, a21, a22),
/// assembled entry by entry and then checked against its defining conditions.
inline CMatrix closed_form_eD(const Unitary2& u, EntryCompletion completion = EntryCompletion::Consistent) {
  Unitary2::from_matrix(u.matrix(), 1e-9);
  const double a = std::norm(u.l11);
  const double b = std::norm(u.l12);
  const Complex x11 = a * a + b * b;
  const Complex x12 = u.l21 * std::conj(u.l11) * (a - b);
  const Complex x14 = 2.0 * a * b;
  const Complex x22 = 2.0 * a * std::norm(u.l21);
  const Complex x23 = 2.0 * std::conj(u.l21) * std::conj(u.l21) * u.l11 * u.l11;

  CMatrix e(4, 4);
  const Complex x34 = completion == EntryCompletion::Consistent ? -x12 : Complex(0.0);
  const Complex x43 = completion == EntryCompletion::Consistent ? -std::conj(x12) : Complex(0.0);
  e << x11, x12, std::conj(x12), x14,
       std::conj(x12), x22, x23, -std::conj(x12),
       x12, std::conj(x23), x22, x34,
       x14, -x12, x43, x11;

  const double projection = operator_norm(e * e - e) + operator_norm(e - e.adjoint());
  if (projection > 1e-9)
    fail(ErrorCode::ClosedFormMismatch, "assembled e_D is not a projection (residual " +
                                            std::to_string(projection) + ")");
  // e_D x e_D = F_u(x) e_D, and e_D acts on the module as F_u
  const CMatrix U = u.matrix();
  const auto Fu = [&](const CMatrix& x) {
    const CMatrix y = U.adjoint() * x * U;
    return CMatrix(U * CMatrix(y.diagonal().asDiagonal()) * U.adjoint());
  };
  const auto left = [](const CMatrix& x) { return CMatrix(Eigen::kroneckerProduct(x, CMatrix::Identity(2, 2))); };
  double worst = 0.0;
  CMatrix as_map(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      const CMatrix x = matrix_unit(2, i, j);
      worst = std::max(worst, operator_norm(e * left(x) * e - left(Fu(x)) * e));
      const CMatrix fx = Fu(x);
      as_map.col(2 * i + j) << fx(0, 0), fx(0, 1), fx(1, 0), fx(1, 1);
    }
  }
  worst = std::max(worst, operator_norm(e - as_map));
  if (worst > 1e-9)
    fail(ErrorCode::ClosedFormMismatch, "assembled e_D violates e_D x e_D = F_u(x) e_D (residual " +
                                            std::to_string(worst) + ")");
  return e;
}

struct GapDemo {
  CMatrix u_eC_u_star;
  CMatrix e_uCu_star;
  bool equal = false;
};

/// Conjugating the Jones projection by u is not the Jones projection of the
/// conjugated subalgebra.
inline GapDemo hadamard_gap_demo(const Unitary2& u) {
  const CMatrix U = u.matrix();
  Unitary2::from_matrix(U, 1e-9);
  const CMatrix Lu = Eigen::kroneckerProduct(U, CMatrix::Identity(2, 2)).eval();
  CMatrix e_delta = CMatrix::Zero(4, 4);
  e_delta(0, 0) = 1.0;
  e_delta(3, 3) = 1.0;
  GapDemo demo;
  demo.u_eC_u_star = Lu * e_delta * Lu.adjoint();
  demo.e_uCu_star = closed_form_eD(u);
  demo.equal = operator_norm(demo.u_eC_u_star - demo.e_uCu_star) < 1e-9;
  return demo;
}

struct SweepPoint {
  double theta = 0.0;
  double cos_value = 0.0;
  double angle_rad = 0.0;
};

inline std::vector<SweepPoint> angle_sweep(const std::vector<double>& grid) {
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (double theta : grid) {
    if (theta < -1e-12 || theta > std::numbers::pi / 4 + 1e-12)
      fail(ErrorCode::ShapeMismatch, "sweep angles must lie in [0, pi/4]");
    const Unitary2 u = Unitary2::rotation(theta);
    out.push_back({theta, closed_form_cos(u), closed_form_angle(u)});
  }
  return out;
}

inline std::vector<double> uniform_grid(int points) {
  if (points < 2)
    fail(ErrorCode::ShapeMismatch, "a sweep needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = std::numbers::pi / 4 * i / (points - 1);
  grid.back() = std::numbers::pi / 4;
  return grid;
}

/// Largest distance between consecutive sorted angles, including the ends
/// 0 and pi/2.
inline double max_gap(const std::vector<SweepPoint>& sweep) {
  std::vector<double> angles;
  for (const SweepPoint& p : sweep)
    angles.push_back(p.angle_rad);
  angles.push_back(0.0);
  angles.push_back(std::numbers::pi / 2);
  std::sort(angles.begin(), angles.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < angles.size(); ++i)
    gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap;
}

/// max over x of ||F(F_u(x)) - E(x)|| and ||F_u(F(x)) - E(x)||.
inline double commuting_square_residual(const Inclusion& inc, const Unitary2& u) {
  const ExpectationPtr Fu = conjugated_diagonal(inc, u);
  double worst = 0.0;
  for (const CMatrix& x : inc.A->basis()) {
    const CMatrix ex = inc.E->apply_unchecked(x);
    worst = std::max(worst, operator_norm(inc.F->apply_unchecked(Fu->apply_unchecked(x)) - ex));
    worst = std::max(worst, operator_norm(Fu->apply_unchecked(inc.F->apply_unchecked(x)) - ex));
  }
  return worst;
}

/// One tower level over the canonical inclusion; reused across unitaries.
struct Workspace {
  Inclusion inc = canonical_inclusion();
  TowerLevel level = build_tower_level(inc.E);
};

struct ThreeRoutes {
  double closed_form = 0.0;
  AngleResult formula;
  AngleResult definition;

  double max_residual() const {
    return std::max({std::abs(formula.angle_rad - closed_form), std::abs(definition.angle_rad - closed_form),
                     std::abs(formula.angle_rad - definition.angle_rad)});
  }
  double max_cos_residual(double closed_cos) const {
    return std::max(std::abs(formula.cos_value - closed_cos), std::abs(definition.cos_value - closed_cos));
  }
};

inline ThreeRoutes three_routes(const Workspace& ws, const Unitary2& u) {
  const ExpectationPtr Fu = conjugated_diagonal(ws.inc, u);
  ThreeRoutes r;
  r.closed_form = closed_form_angle(u);
  r.formula = interior_angle_formula_from(*ws.inc.E, *ws.inc.F, *Fu);
  r.definition = interior_angle_definition(ws.level, *ws.inc.F, *Fu);
  return r;
}

/// T = E_1(e_Delta e_D - e_1) as a 2x2 matrix.
inline CMatrix t_matrix(const Workspace& ws, const Unitary2& u) {
  const ExpectationPtr Fu = conjugated_diagonal(ws.inc, u);
  const CMatrix eC = intermediate_projection(ws.level, ws.inc.Delta, *ws.inc.F);
  const CMatrix eD = intermediate_projection(ws.level, Fu->target_ptr(), *Fu);
  return dual_expectation_value(ws.level, eC * eD - ws.level.jones);
}

/// E_t: trace-like expectation onto C I_2 weighted (t, 1 - t) on the diagonal.
inline ExpectationPtr weighted_expectation(const Inclusion& inc, double t) {
  if (!(t > 0.0 && t < 1.0))
    fail(ErrorCode::ShapeMismatch, "weight must lie in (0, 1)");
  std::vector<CMatrix> qb;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      qb.push_back(matrix_unit(2, i, j) / std::sqrt(j == 0 ? t : 1.0 - t));
  return make_expectation(ConditionalExpectation::from_function(inc.A, inc.B, [t](const CMatrix& x) {
                            return CMatrix((t * x(0, 0) + (1.0 - t) * x(1, 1)) * CMatrix::Identity(2, 2));
                          }).with_quasi_basis(std::move(qb)));
}

/// [[1, i], [i, 1]] / sqrt(2)
inline Unitary2 remark_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, 1i * s, 1i * s, s};
}

}  // namespace cstar::m2

#endif  // CSTAR_M2_HPP_
