// Concrete C*-basic construction: A acting on itself as a finite-dimensional
// module, Jones projections as matrices, A_1 = span{x e_B y} and the dual
// conditional expectation E_1.

#ifndef CSTAR_TOWER_HPP_
#define CSTAR_TOWER_HPP_

#include <memory>
#include <string>
#include <vector>

#include "cstar/algebra.hpp"

namespace cstar {

/// Module coordinates: the basis of A is re-orthonormalised for the scalar
/// inner product <x, y> = tr(E(x* y)), so that adjoints of module operators
/// are plain conjugate transposes. For M_2 with the trace-type E these are the
/// coordinates (a_11, a_12, a_21, a_22).
struct TowerLevel {
  ExpectationPtr E;
  Eigen::Index module_dim = 0;
  CMatrix frame;      // source-coordinates -> module coordinates
  CMatrix frame_inv;
  std::vector<CMatrix> left_basis;  // L_{b_k}
  CMatrix jones;                    // e_B
  CMatrix index_inverse;            // Ind(E)^{-1} in the ambient algebra of A
  CMatrix index_sqrt;               // Ind(E)^{1/2}
  std::vector<CMatrix> a1_spanning;  // L_{b_k} e_B L_{b_l}, index k * m + l
  SpanProjector a1_projector;
  CMatrix dual_rule;                 // column k*m+l: coordinates of Ind(E)^{-1} b_k b_l in A
  AlgebraPtr A1;
  AlgebraPtr embedded_A;             // {L_x : x in A} inside M_d
  ExpectationPtr E1;                 // A_1 -> embedded_A

  const MatrixStarAlgebra& A() const { return E->source(); }
  const MatrixStarAlgebra& B() const { return E->target(); }

  CVector to_module(const CMatrix& x) const { return frame * A().coordinates(x); }
  CMatrix from_module(const CVector& v) const { return A().from_coordinates(frame_inv * v); }

  /// L_x as a d x d matrix.
  CMatrix left_mult(const CMatrix& x) const {
    const CVector c = A().coordinates(x);
    CMatrix out = CMatrix::Zero(module_dim, module_dim);
    for (Eigen::Index k = 0; k < c.size(); ++k)
      out += c(k) * left_basis[static_cast<std::size_t>(k)];
    return out;
  }

  /// Matrix of a linear map A -> A in module coordinates.
  template <typename F>
  CMatrix module_matrix(F&& map) const {
    CMatrix coords(module_dim, module_dim);
    for (Eigen::Index k = 0; k < module_dim; ++k)
      coords.col(k) = A().coordinates(map(A().basis(k)));
    return frame * coords * frame_inv;
  }
};

namespace detail {

inline void require_small_residual(double residual, double tol, const std::string& what) {
  if (!(residual <= tol))
    fail(ErrorCode::ConstructionFailure, what + " (residual " + std::to_string(residual) + ")");
}

}  // namespace detail

inline TowerLevel build_tower_level(const ExpectationPtr& E, double tol = kDefaultTol) {
  if (!E->has_quasi_basis())
    fail(ErrorCode::NoQuasiBasis, "the basic construction needs a finite-index expectation");
  const MatrixStarAlgebra& A = E->source();
  const Eigen::Index m = A.dim();
  const CMatrix& M = E->map_matrix();

  TowerLevel level;
  level.E = E;
  level.module_dim = m;

  // structure constants: mult[k].col(l) = coordinates of b_k b_l
  std::vector<CMatrix> mult(static_cast<std::size_t>(m), CMatrix(m, m));
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l)
      mult[static_cast<std::size_t>(k)].col(l) = A.coordinates(A.basis(k) * A.basis(l));

  // Gram matrix of <x, y> = tr(E(x* y)) on the orthonormal basis
  CVector traces(m);
  for (Eigen::Index j = 0; j < m; ++j)
    traces(j) = A.basis(j).trace();
  const CVector trace_of_E = M.transpose() * traces;  // c -> tr(E(from_coordinates(c)))
  CMatrix gram(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const CMatrix bk_adj = A.basis(k).adjoint();
    for (Eigen::Index l = 0; l < m; ++l)
      gram(k, l) = (trace_of_E.transpose() * A.coordinates(bk_adj * A.basis(l)))(0);
  }
  gram = 0.5 * (gram + gram.adjoint()).eval();
  if (min_eigenvalue_hermitian(gram) <= 1e-12 * std::max(1.0, operator_norm(gram)))
    fail(ErrorCode::ConstructionFailure, "E is not faithful: module inner product is degenerate");
  level.frame = positive_sqrt(gram);
  level.frame_inv = positive_inverse_sqrt(gram);

  level.left_basis.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k)
    level.left_basis.push_back(level.frame * mult[static_cast<std::size_t>(k)] * level.frame_inv);
  level.jones = level.frame * M * level.frame_inv;

  const CMatrix index = watatani_index(*E, std::max(tol, 1e-8));
  level.index_inverse = positive_inverse(index);
  level.index_sqrt = positive_sqrt(index);

  level.a1_spanning.reserve(static_cast<std::size_t>(m * m));
  level.dual_rule.resize(m, m * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const CMatrix left = level.left_basis[static_cast<std::size_t>(k)] * level.jones;
    const CMatrix scaled = level.index_inverse * A.basis(k);
    for (Eigen::Index l = 0; l < m; ++l) {
      level.a1_spanning.push_back(left * level.left_basis[static_cast<std::size_t>(l)]);
      level.dual_rule.col(k * m + l) = A.coordinates(scaled * A.basis(l));
    }
  }
  level.a1_projector = SpanProjector(level.a1_spanning);
  level.A1 = make_algebra(MatrixStarAlgebra::from_spanning_set(level.a1_spanning));
  level.embedded_A = make_algebra(MatrixStarAlgebra::from_spanning_set(level.left_basis));
  if (level.embedded_A->dim() != m)
    fail(ErrorCode::ConstructionFailure, "left multiplication is not faithful");

  // E_1 as a conditional expectation A_1 -> L(A)
  const MatrixStarAlgebra& A1 = *level.A1;
  CMatrix dual_map(A1.dim(), A1.dim());
  for (Eigen::Index j = 0; j < A1.dim(); ++j) {
    const CVector value = level.dual_rule * level.a1_projector.least_squares(A1.basis(j));
    CMatrix image = CMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
      image += value(k) * level.left_basis[static_cast<std::size_t>(k)];
    dual_map.col(j) = A1.coordinates(image);
  }
  std::vector<CMatrix> dual_qb;
  const CMatrix sqrt_left = level.left_mult(level.index_sqrt);
  for (const CMatrix& lambda : E->quasi_basis())
    dual_qb.push_back(level.left_mult(lambda) * level.jones * sqrt_left);
  level.E1 = make_expectation(
      ConditionalExpectation(level.A1, level.embedded_A, std::move(dual_map)).with_trusted_quasi_basis(std::move(dual_qb)));

  // cheap invariants: projection laws, exchange law, A_1 contains L(A)
  const CMatrix& e = level.jones;
  detail::require_small_residual((e * e - e).norm() + (e - e.adjoint()).norm(), tol * (1.0 + m),
                                 "Jones projection is not a projection");
  double exchange = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const CMatrix lhs = e * level.left_basis[static_cast<std::size_t>(k)] * e;
    const CMatrix rhs = level.left_mult(E->apply_unchecked(A.basis(k))) * e;
    exchange = std::max(exchange, (lhs - rhs).norm());
  }
  detail::require_small_residual(exchange, tol * (1.0 + m), "exchange law e a e = E(a) e fails");
  double contains = 0.0;
  for (const CMatrix& L : level.left_basis)
    contains = std::max(contains, A1.membership_residual(L));
  detail::require_small_residual(contains, 1e-8 * (1.0 + m), "A_1 does not contain the left multiplications");
  return level;
}

/// E_1(t) via least-squares decomposition of t over {x e_B y}.
inline CMatrix dual_expectation_value(const TowerLevel& level, const CMatrix& t, double tol = 1e-8) {
  auto c = level.a1_projector.coordinates(t, tol);
  if (!c)
    fail(ErrorCode::NotInAlgebra, "element is not in the basic construction");
  return level.A().from_coordinates(level.dual_rule * *c);
}

/// E_1(t) = Ind(E)^{-1} sum_i t(lambda_i) lambda_i^*, evaluated pointwise on the
/// module; independent of any decomposition of t.
inline CMatrix dual_expectation_pointwise(const TowerLevel& level, const CMatrix& t) {
  const Eigen::Index n = level.A().ambient_dim();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const CMatrix& lambda : level.E->quasi_basis())
    sum += level.from_module(t * level.to_module(lambda)) * lambda.adjoint();
  return level.index_inverse * sum;
}

/// Spread of E_1(t) over two decompositions that differ by a random element of
/// the redundancy kernel.
inline double dual_expectation_decomposition_spread(const TowerLevel& level, const CMatrix& t, Rng& rng) {
  const CVector c = level.a1_projector.least_squares(t);
  const CMatrix& kernel = level.a1_projector.null_space();
  CVector shifted = c;
  if (kernel.cols() > 0) {
    CVector w(kernel.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i)
      w(i) = random_complex(rng);
    shifted += kernel * w;
  }
  const double synth = (level.a1_projector.synthesize(shifted) - t).norm();
  const CMatrix v1 = level.A().from_coordinates(level.dual_rule * c);
  const CMatrix v2 = level.A().from_coordinates(level.dual_rule * shifted);
  return std::max((v1 - v2).norm(), synth);
}

struct IntermediateProjection {
  CMatrix projection;                       // e_C
  std::shared_ptr<const ConditionalExpectation> restricted;  // E|_C with {F(lambda_i)}
};

/// e_C = sum_j mu_j e_B mu_j^*, with its postconditions checked.
inline IntermediateProjection intermediate_projection_data(const TowerLevel& level, const AlgebraPtr& C,
                                                           const ConditionalExpectation& F,
                                                           double tol = kDefaultTol) {
  const ConditionalExpectation& E = *level.E;
  const double compat = compatibility_residual(E, F, tol);
  if (compat > std::max(tol, 1e-8))
    fail(ErrorCode::NotCompatible, "E != E|_C o F (residual " + std::to_string(compat) + ")");
  auto restricted = make_expectation(restrict_expectation(E, C, F, tol));
  const Eigen::Index d = level.module_dim;
  CMatrix eC = CMatrix::Zero(d, d);
  for (const CMatrix& mu : restricted->quasi_basis()) {
    const CMatrix L = level.left_mult(mu);
    eC += L * level.jones * L.adjoint();
  }
  const double scale = 1.0 + d;
  const CMatrix F_module = level.module_matrix([&](const CMatrix& a) { return F.apply_unchecked(a); });
  detail::require_small_residual((eC - F_module).norm(), 1e-8 * scale, "sum mu e_B mu* differs from the matrix of F");
  detail::require_small_residual((eC * eC - eC).norm() + (eC - eC.adjoint()).norm(), 1e-8 * scale,
                                 "e_C is not a projection");
  const CMatrix& eB = level.jones;
  detail::require_small_residual((eC * eB - eB).norm() + (eB * eC - eB).norm(), 1e-8 * scale,
                                 "e_C e_B = e_B = e_B e_C fails");
  return {std::move(eC), std::move(restricted)};
}

inline CMatrix intermediate_projection(const TowerLevel& level, const AlgebraPtr& C, const ConditionalExpectation& F,
                                       double tol = kDefaultTol) {
  return intermediate_projection_data(level, C, F, tol).projection;
}

/// Next level: the basic construction of L(A) inside A_1 with respect to E_1.
inline TowerLevel iterate_tower(const TowerLevel& level, double tol = kDefaultTol) {
  return build_tower_level(level.E1, tol);
}

/// G: A_1 -> C_1 with G(x e_B y) = Ind(E|_C)^{-1} x e_C y and quasi-basis
/// {lambda_i e_B Ind(E|_C)^{1/2}}. Requires Ind(E|_C) central in A.
inline ConditionalExpectation intermediate_dual_expectation(const TowerLevel& level, const AlgebraPtr& C,
                                                            const ConditionalExpectation& F,
                                                            double tol = kDefaultTol) {
  const IntermediateProjection ip = intermediate_projection_data(level, C, F, tol);
  const CMatrix& index_c = ip.restricted->index();
  if (!is_central(index_c, level.A(), 1e-8))
    fail(ErrorCode::NonCentralIndex, "Ind(E|_C) is not central in A");
  const Eigen::Index m = level.A().dim();
  const Eigen::Index d = level.module_dim;

  std::vector<CMatrix> c1_spanning;
  c1_spanning.reserve(static_cast<std::size_t>(m * m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const CMatrix left = level.left_basis[static_cast<std::size_t>(k)] * ip.projection;
    for (Eigen::Index l = 0; l < m; ++l)
      c1_spanning.push_back(left * level.left_basis[static_cast<std::size_t>(l)]);
  }
  auto C1 = make_algebra(MatrixStarAlgebra::from_spanning_set(std::move(c1_spanning)));

  const CMatrix middle = level.left_mult(positive_inverse(index_c)) * ip.projection;
  const MatrixStarAlgebra& A1 = *level.A1;
  CMatrix map(A1.dim(), A1.dim());
  for (Eigen::Index j = 0; j < A1.dim(); ++j) {
    const CVector c = level.a1_projector.least_squares(A1.basis(j));
    CMatrix image = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < m; ++k) {
      CMatrix right = CMatrix::Zero(d, d);
      for (Eigen::Index l = 0; l < m; ++l)
        right += c(k * m + l) * level.left_basis[static_cast<std::size_t>(l)];
      image += level.left_basis[static_cast<std::size_t>(k)] * middle * right;
    }
    map.col(j) = A1.coordinates(image);
  }
  ConditionalExpectation G(level.A1, C1, std::move(map));
  std::vector<CMatrix> qb;
  const CMatrix sqrt_left = level.left_mult(positive_sqrt(index_c));
  for (const CMatrix& lambda : level.E->quasi_basis())
    qb.push_back(level.left_mult(lambda) * level.jones * sqrt_left);
  return G.with_quasi_basis(std::move(qb), 1e-7);
}

/// Full invariant sweep of a tower level (the expensive checks that
/// build_tower_level skips).
inline VerificationReport verify_tower_level(const TowerLevel& level, double tol = kDefaultTol,
                                             std::uint64_t seed = kDefaultSeed, int samples = 100) {
  VerificationReport report;
  const CMatrix& e = level.jones;
  const Eigen::Index m = level.A().dim();
  report.add("jones_projection_idempotent", operator_norm(e * e - e), tol);
  report.add("jones_projection_self_adjoint", operator_norm(e - e.adjoint()), tol);

  double exchange = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const CMatrix lhs = e * level.left_basis[static_cast<std::size_t>(k)] * e;
    const CMatrix rhs = level.left_mult(level.E->apply_unchecked(level.A().basis(k))) * e;
    exchange = std::max(exchange, operator_norm(lhs - rhs));
  }
  report.add("exchange_law", exchange, tol);

  for (const Check& c : verify_star_algebra(*level.A1, tol).checks)
    report.checks.push_back({"A1_" + c.name, c.pass, c.residual});

  double contains = 0.0;
  for (const CMatrix& L : level.left_basis)
    contains = std::max(contains, level.A1->membership_residual(L));
  report.add("A1_contains_left_multiplications", contains, tol);

  // faithfulness: Gram matrix of {L_{b_k}} is nonsingular
  SpanProjector images(level.left_basis);
  report.add_flag("left_multiplication_faithful", images.rank() == m, static_cast<double>(m - images.rank()));

  Rng rng(seed);
  double rule = 0.0;
  double spread = 0.0;
  double pointwise = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uniform_int_distribution<Eigen::Index> pick(0, m - 1);
    const Eigen::Index k = pick(rng);
    const Eigen::Index l = pick(rng);
    const CMatrix t = level.a1_spanning[static_cast<std::size_t>(k * m + l)];
    const CMatrix expected = level.index_inverse * level.A().basis(k) * level.A().basis(l);
    rule = std::max(rule, operator_norm(dual_expectation_value(level, t) - expected));
    const CMatrix via_map = level.E1->apply_unchecked(t);
    rule = std::max(rule, operator_norm(via_map - level.left_mult(expected)));
    const CMatrix random_t = level.A1->random_element(rng);
    spread = std::max(spread, dual_expectation_decomposition_spread(level, random_t, rng));
    pointwise = std::max(pointwise, operator_norm(dual_expectation_value(level, random_t) -
                                                  dual_expectation_pointwise(level, random_t)));
  }
  report.add("dual_expectation_rule", rule, tol);
  report.add("dual_expectation_well_defined", spread, 1e-8);
  report.add("dual_expectation_pointwise_agreement", pointwise, 1e-8);
  return report;
}

}  // namespace cstar

#endif  // CSTAR_TOWER_HPP_
