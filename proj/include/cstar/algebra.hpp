// Unital *-subalgebras of M_n(C), conditional expectations between them,
// quasi-bases and the Watatani index.

#ifndef CSTAR_ALGEBRA_HPP_
#define CSTAR_ALGEBRA_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cstar/numerics.hpp"

namespace cstar {

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct VerificationReport {
  std::vector<Check> checks;

  void add(std::string name, double residual, double tol) {
    checks.push_back({std::move(name), residual <= tol, residual});
  }
  void add_flag(std::string name, bool pass, double residual = 0.0) {
    checks.push_back({std::move(name), pass, residual});
  }
  bool passed() const {
    for (const Check& c : checks)
      if (!c.pass)
        return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const Check& c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }
  double worst_residual() const {
    double worst = 0.0;
    for (const Check& c : checks)
      worst = std::max(worst, c.residual);
    return worst;
  }
  std::string summary() const {
    std::string out;
    for (const Check& c : checks)
      out += c.name + (c.pass ? " ok" : " FAILED") + " (residual " + std::to_string(c.residual) + "); ";
    return out;
  }
};

/// A linear span of n x n matrices, expected (not assumed) to be a unital
/// *-algebra. Keeps a Hilbert-Schmidt orthonormal basis derived from the
/// spanning set by order-preserving Gram-Schmidt.
class MatrixStarAlgebra {
 public:
  static MatrixStarAlgebra from_spanning_set(std::vector<CMatrix> spanning, double drop_tol = 1e-10) {
    if (spanning.empty())
      fail(ErrorCode::EmptyAlgebra, "spanning set is empty");
    MatrixStarAlgebra alg;
    alg.n_ = spanning.front().rows();
    double scale = 0.0;
    for (const CMatrix& s : spanning) {
      require_square(s);
      require_same_shape(spanning.front(), s);
      require_finite(s);
      scale = std::max(scale, s.norm());
    }
    std::vector<CVector> ortho;
    for (const CMatrix& s : spanning) {
      CVector v = vec(s);
      const double original = v.norm();
      if (original == 0.0)
        continue;
      // two passes of modified Gram-Schmidt
      for (int pass = 0; pass < 2; ++pass)
        for (const CVector& q : ortho)
          v -= q.dot(v) * q;
      const double r = v.norm();
      if (r <= drop_tol * std::max(scale, 1.0))
        continue;
      ortho.push_back(v / r);
    }
    if (ortho.empty())
      fail(ErrorCode::EmptyAlgebra, "spanning set has no nonzero element");
    alg.spanning_ = std::move(spanning);
    alg.set_basis(ortho);
    return alg;
  }

  /// Trusts the caller that `basis` is Hilbert-Schmidt orthonormal.
  static MatrixStarAlgebra from_orthonormal_basis(std::vector<CMatrix> basis) {
    if (basis.empty())
      fail(ErrorCode::EmptyAlgebra, "basis is empty");
    MatrixStarAlgebra alg;
    alg.n_ = basis.front().rows();
    std::vector<CVector> ortho;
    ortho.reserve(basis.size());
    for (const CMatrix& b : basis) {
      require_same_shape(basis.front(), b);
      ortho.push_back(vec(b));
    }
    alg.spanning_ = std::move(basis);
    alg.set_basis(ortho);
    return alg;
  }

  /// M_n(C) with basis e_11, e_12, ..., e_nn (row-major order).
  static MatrixStarAlgebra full(Eigen::Index n) {
    std::vector<CMatrix> units;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        units.push_back(matrix_unit(n, i, j));
    return from_orthonormal_basis(std::move(units));
  }

  static MatrixStarAlgebra scalars(Eigen::Index n) {
    return from_spanning_set({CMatrix::Identity(n, n)});
  }

  Eigen::Index ambient_dim() const { return n_; }
  Eigen::Index dim() const { return stacked_.cols(); }
  const std::vector<CMatrix>& spanning_set() const { return spanning_; }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const CMatrix& basis(Eigen::Index k) const { return basis_[static_cast<std::size_t>(k)]; }
  CMatrix unit() const { return CMatrix::Identity(n_, n_); }

  /// Coordinates of the orthogonal projection of x onto the span.
  CVector coordinates(const CMatrix& x) const {
    if (x.rows() != n_ || x.cols() != n_)
      fail(ErrorCode::ShapeMismatch, "element " + shape_string(x) + " vs ambient " + std::to_string(n_));
    return stacked_.adjoint() * vec(x);
  }

  CMatrix from_coordinates(const CVector& c) const { return unvec(stacked_ * c, n_, n_); }

  CMatrix project(const CMatrix& x) const { return from_coordinates(coordinates(x)); }

  double membership_residual(const CMatrix& x) const { return (x - project(x)).norm(); }

  bool contains(const CMatrix& x, double tol = kDefaultTol) const {
    return membership_residual(x) <= tol * (1.0 + x.norm());
  }

  bool is_subalgebra_of(const MatrixStarAlgebra& other, double tol = kDefaultTol) const {
    if (this == &other)
      return true;
    if (other.n_ != n_ || dim() > other.dim())
      return false;
    for (const CMatrix& b : basis_)
      if (!other.contains(b, tol))
        return false;
    return true;
  }

  bool same_as(const MatrixStarAlgebra& other, double tol = kDefaultTol) const {
    return dim() == other.dim() && is_subalgebra_of(other, tol) && other.is_subalgebra_of(*this, tol);
  }

  /// u A u* (u need not lie in the algebra).
  MatrixStarAlgebra conjugated(const CMatrix& u) const {
    std::vector<CMatrix> images;
    images.reserve(basis_.size());
    for (const CMatrix& b : basis_)
      images.push_back(u * b * u.adjoint());
    return from_spanning_set(std::move(images));
  }

  /// A fresh element with standard-Gaussian coordinates.
  CMatrix random_element(Rng& rng) const {
    CVector c(dim());
    for (Eigen::Index k = 0; k < dim(); ++k)
      c(k) = random_complex(rng);
    return from_coordinates(c);
  }

 private:
  MatrixStarAlgebra() = default;

  void set_basis(const std::vector<CVector>& ortho) {
    stacked_.resize(n_ * n_, static_cast<Eigen::Index>(ortho.size()));
    basis_.clear();
    for (std::size_t k = 0; k < ortho.size(); ++k) {
      stacked_.col(static_cast<Eigen::Index>(k)) = ortho[k];
      basis_.push_back(unvec(ortho[k], n_, n_));
    }
  }

  Eigen::Index n_ = 0;
  std::vector<CMatrix> spanning_;
  std::vector<CMatrix> basis_;
  CMatrix stacked_;  // n^2 x dim, columns are vec(basis_k)
};

using AlgebraPtr = std::shared_ptr<const MatrixStarAlgebra>;

inline AlgebraPtr make_algebra(MatrixStarAlgebra alg) {
  return std::make_shared<const MatrixStarAlgebra>(std::move(alg));
}

inline VerificationReport verify_star_algebra(const MatrixStarAlgebra& alg, double tol = kDefaultTol) {
  VerificationReport report;
  const auto rel = [&](const CMatrix& x) { return alg.membership_residual(x) / (1.0 + x.norm()); };
  report.add("unit_in_span", rel(alg.unit()), tol);
  double adj = 0.0;
  for (const CMatrix& b : alg.basis())
    adj = std::max(adj, rel(b.adjoint()));
  report.add("closed_under_adjoint", adj, tol);
  double prod = 0.0;
  for (const CMatrix& a : alg.basis())
    for (const CMatrix& b : alg.basis())
      prod = std::max(prod, rel(a * b));
  report.add("closed_under_products", prod, tol);
  return report;
}

inline bool is_central(const CMatrix& z, const MatrixStarAlgebra& alg, double tol = kDefaultTol) {
  for (const CMatrix& b : alg.basis())
    if (commutator_norm(z, b) > tol * (1.0 + operator_norm(z)))
      return false;
  return true;
}

/// Idempotent linear map from `source` onto `target`, stored as a matrix on
/// the orthonormal coordinates of `source`, optionally with a quasi-basis.
class ConditionalExpectation {
 public:
  ConditionalExpectation(AlgebraPtr source, AlgebraPtr target, CMatrix map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (!source_ || !target_)
      fail(ErrorCode::EmptyAlgebra, "null algebra");
    if (source_->ambient_dim() != target_->ambient_dim())
      fail(ErrorCode::ShapeMismatch, "source and target live in different ambient algebras");
    if (map_.rows() != source_->dim() || map_.cols() != source_->dim())
      fail(ErrorCode::ShapeMismatch, "map matrix must be dim(source) square");
    require_finite(map_);
  }

  static ConditionalExpectation from_function(AlgebraPtr source, AlgebraPtr target,
                                              const std::function<CMatrix(const CMatrix&)>& rule) {
    CMatrix map(source->dim(), source->dim());
    for (Eigen::Index k = 0; k < source->dim(); ++k)
      map.col(k) = source->coordinates(rule(source->basis(k)));
    return ConditionalExpectation(std::move(source), std::move(target), std::move(map));
  }

  const MatrixStarAlgebra& source() const { return *source_; }
  const MatrixStarAlgebra& target() const { return *target_; }
  const AlgebraPtr& source_ptr() const { return source_; }
  const AlgebraPtr& target_ptr() const { return target_; }
  const CMatrix& map_matrix() const { return map_; }

  CMatrix apply_unchecked(const CMatrix& x) const {
    return source_->from_coordinates(map_ * source_->coordinates(x));
  }

  CMatrix apply(const CMatrix& x, double tol = 1e-8) const {
    if (!source_->contains(x, tol))
      fail(ErrorCode::NotInAlgebra, "argument is not in the source algebra (residual " +
                                        std::to_string(source_->membership_residual(x)) + ")");
    return apply_unchecked(x);
  }

  CMatrix operator()(const CMatrix& x) const { return apply(x); }

  bool has_quasi_basis() const { return quasi_basis_.has_value(); }
  const std::vector<CMatrix>& quasi_basis() const {
    if (!quasi_basis_)
      fail(ErrorCode::NoQuasiBasis, "conditional expectation carries no quasi-basis");
    return *quasi_basis_;
  }

  /// Copy carrying `lambdas`, which must pass the quasi-basis identities.
  ConditionalExpectation with_quasi_basis(std::vector<CMatrix> lambdas, double tol = 1e-8) const;

  /// Attaches `lambdas` without checking; for quasi-bases known by construction.
  ConditionalExpectation with_trusted_quasi_basis(std::vector<CMatrix> lambdas) const;

  /// Ind(E) = sum lambda_i lambda_i^*, cached when a quasi-basis is attached.
  const CMatrix& index() const {
    if (!index_)
      fail(ErrorCode::NoQuasiBasis, "conditional expectation carries no quasi-basis");
    return *index_;
  }

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  CMatrix map_;
  std::optional<std::vector<CMatrix>> quasi_basis_;
  std::optional<CMatrix> index_;
};

using ExpectationPtr = std::shared_ptr<const ConditionalExpectation>;

inline ExpectationPtr make_expectation(ConditionalExpectation e) {
  return std::make_shared<const ConditionalExpectation>(std::move(e));
}

/// Largest defect of x = sum E(x l_i) l_i^* = sum l_i E(l_i^* x) over the
/// source basis.
inline double quasi_basis_residual(const ConditionalExpectation& E, const std::vector<CMatrix>& lambdas) {
  const MatrixStarAlgebra& A = E.source();
  for (const CMatrix& l : lambdas) {
    if (l.rows() != A.ambient_dim() || l.cols() != A.ambient_dim())
      fail(ErrorCode::ShapeMismatch, "quasi-basis element has the wrong shape");
    if (!A.contains(l, 1e-8))
      fail(ErrorCode::NotInAlgebra, "quasi-basis element outside the source algebra");
  }
  double worst = 0.0;
  for (const CMatrix& x : A.basis()) {
    CMatrix right = CMatrix::Zero(x.rows(), x.cols());
    CMatrix left = CMatrix::Zero(x.rows(), x.cols());
    for (const CMatrix& l : lambdas) {
      right += E.apply_unchecked(x * l) * l.adjoint();
      left += l * E.apply_unchecked(l.adjoint() * x);
    }
    // Frobenius norm bounds the operator norm from above
    worst = std::max({worst, (right - x).norm(), (left - x).norm()});
  }
  return worst;
}

inline bool verify_quasi_basis(const ConditionalExpectation& E, const std::vector<CMatrix>& lambdas,
                               double tol = kDefaultTol) {
  return quasi_basis_residual(E, lambdas) <= tol;
}

inline CMatrix index_from_quasi_basis(const std::vector<CMatrix>& lambdas, Eigen::Index n) {
  CMatrix idx = CMatrix::Zero(n, n);
  for (const CMatrix& l : lambdas)
    idx += l * l.adjoint();
  return idx;
}

inline ConditionalExpectation ConditionalExpectation::with_quasi_basis(std::vector<CMatrix> lambdas,
                                                                       double tol) const {
  const double residual = quasi_basis_residual(*this, lambdas);
  if (residual > tol)
    fail(ErrorCode::NoQuasiBasis, "quasi-basis identities fail (residual " + std::to_string(residual) + ")");
  ConditionalExpectation out = *this;
  out.index_ = index_from_quasi_basis(lambdas, source_->ambient_dim());
  out.quasi_basis_ = std::move(lambdas);
  return out;
}

inline ConditionalExpectation ConditionalExpectation::with_trusted_quasi_basis(std::vector<CMatrix> lambdas) const {
  ConditionalExpectation out = *this;
  out.index_ = index_from_quasi_basis(lambdas, source_->ambient_dim());
  out.quasi_basis_ = std::move(lambdas);
  return out;
}

/// Watatani index, with its structural guarantees checked: self-adjoint,
/// central in the source algebra, and bounded below by 1.
inline CMatrix watatani_index(const ConditionalExpectation& E, double tol = kDefaultTol) {
  const CMatrix& idx = E.index();
  const double scale = 1.0 + operator_norm(idx);
  if (operator_norm(idx - idx.adjoint()) > tol * scale)
    fail(ErrorCode::NumericIntegrity, "index is not self-adjoint");
  if (!is_central(idx, E.source(), tol))
    fail(ErrorCode::NumericIntegrity, "index is not central in the source algebra");
  if (min_eigenvalue_hermitian(idx) < 1.0 - tol * scale)
    fail(ErrorCode::NumericIntegrity, "index has spectrum below 1");
  return idx;
}

/// Sampled check of the conditional-expectation axioms.
inline VerificationReport verify_expectation(const ConditionalExpectation& E, double tol = kDefaultTol,
                                             std::uint64_t seed = kDefaultSeed, int samples = 100) {
  VerificationReport report;
  const MatrixStarAlgebra& A = E.source();
  const MatrixStarAlgebra& B = E.target();
  report.add("target_inside_source", B.is_subalgebra_of(A, tol) ? 0.0 : 1.0, tol);
  report.add("unit_preserved", operator_norm(E.apply_unchecked(A.unit()) - A.unit()), tol);

  double fixes = 0.0;
  for (const CMatrix& b : B.basis())
    fixes = std::max(fixes, operator_norm(E.apply_unchecked(b) - b));
  report.add("fixes_target", fixes, tol);

  double range = 0.0;
  double bimod = 0.0;
  for (const CMatrix& x : A.basis()) {
    const CMatrix ex = E.apply_unchecked(x);
    range = std::max(range, B.membership_residual(ex));
    for (const CMatrix& b : B.basis()) {
      bimod = std::max(bimod, operator_norm(E.apply_unchecked(b * x) - b * ex));
      bimod = std::max(bimod, operator_norm(E.apply_unchecked(x * b) - ex * b));
    }
  }
  report.add("range_in_target", range, tol);
  report.add("target_bimodular", bimod, tol);
  report.add("idempotent", operator_norm(E.map_matrix() * E.map_matrix() - E.map_matrix()), tol);

  Rng rng(seed);
  double worst_neg = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMatrix x = A.random_element(rng);
    const CMatrix p = E.apply_unchecked(x.adjoint() * x);
    const double scale = 1.0 + operator_norm(p);
    worst_neg = std::max(worst_neg, std::max(0.0, -min_eigenvalue_hermitian(p)) / scale);
    worst_neg = std::max(worst_neg, operator_norm(p - p.adjoint()) / scale);
  }
  report.add("positive_on_samples", worst_neg, tol);
  return report;
}

inline void require_intermediate(const MatrixStarAlgebra& lower, const MatrixStarAlgebra& middle,
                                 const MatrixStarAlgebra& upper, double tol) {
  if (!lower.is_subalgebra_of(middle, tol))
    fail(ErrorCode::NotIntermediate, "lower algebra is not contained in the intermediate algebra");
  if (!middle.is_subalgebra_of(upper, tol))
    fail(ErrorCode::NotIntermediate, "intermediate algebra is not contained in the upper algebra");
}

/// max over source basis x of ||E(x) - E(F(x))||.
inline double compatibility_residual(const ConditionalExpectation& E, const ConditionalExpectation& F,
                                     double tol = kDefaultTol) {
  require_intermediate(E.target(), F.target(), E.source(), tol);
  if (!F.source().same_as(E.source(), tol))
    fail(ErrorCode::NotIntermediate, "expectations have different source algebras");
  double worst = 0.0;
  for (const CMatrix& x : E.source().basis())
    worst = std::max(worst, operator_norm(E.apply_unchecked(x) - E.apply_unchecked(F.apply_unchecked(x))));
  return worst;
}

inline bool is_compatible(const ConditionalExpectation& E, const ConditionalExpectation& F,
                          double tol = kDefaultTol) {
  return compatibility_residual(E, F, tol) <= tol;
}

/// E restricted to an intermediate algebra C = target(F), with the derived
/// quasi-basis {F(lambda_i)}.
inline ConditionalExpectation restrict_expectation(const ConditionalExpectation& E, const AlgebraPtr& C,
                                                   const ConditionalExpectation& F, double tol = kDefaultTol) {
  require_intermediate(E.target(), *C, E.source(), tol);
  if (!F.target().same_as(*C, tol) || !F.source().same_as(E.source(), tol))
    fail(ErrorCode::NotIntermediate, "F must map source(E) onto the intermediate algebra");
  CMatrix map(C->dim(), C->dim());
  for (Eigen::Index k = 0; k < C->dim(); ++k)
    map.col(k) = C->coordinates(E.apply_unchecked(C->basis(k)));
  ConditionalExpectation restricted(C, E.target_ptr(), std::move(map));
  std::vector<CMatrix> derived;
  for (const CMatrix& l : E.quasi_basis())
    derived.push_back(F.apply_unchecked(l));
  const double residual = quasi_basis_residual(restricted, derived);
  if (residual > std::max(tol, 1e-8))
    fail(ErrorCode::NotCompatible,
         "{F(lambda_i)} is not a quasi-basis of the restriction (residual " + std::to_string(residual) + ")");
  return restricted.with_quasi_basis(std::move(derived), std::max(tol, 1e-8));
}

/// F_u = Ad_u o F o Ad_{u*} onto u C u*, with quasi-basis {u eta_i u*}.
inline ConditionalExpectation conjugate_expectation(const ConditionalExpectation& F, const CMatrix& u,
                                                    double tol = kDefaultTol) {
  const MatrixStarAlgebra& A = F.source();
  if (u.rows() != A.ambient_dim() || u.cols() != A.ambient_dim())
    fail(ErrorCode::ShapeMismatch, "unitary has the wrong size");
  if (unitarity_defect(u) > tol)
    fail(ErrorCode::NotUnitary, "u*u differs from 1 by " + std::to_string(unitarity_defect(u)));
  for (const CMatrix& b : A.basis())
    if (!A.contains(u.adjoint() * b * u, 1e-8))
      fail(ErrorCode::NotInAlgebra, "conjugation by u does not preserve the source algebra");
  auto target = make_algebra(F.target().conjugated(u));
  ConditionalExpectation Fu = ConditionalExpectation::from_function(
      F.source_ptr(), target,
      [&](const CMatrix& a) { return CMatrix(u * F.apply_unchecked(u.adjoint() * a * u) * u.adjoint()); });
  if (!F.has_quasi_basis())
    return Fu;
  std::vector<CMatrix> conj;
  for (const CMatrix& eta : F.quasi_basis())
    conj.push_back(u * eta * u.adjoint());
  return Fu.with_quasi_basis(std::move(conj));
}

struct CauchySchwarzResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||E(x*y)|| <= ||E(x*x)||^{1/2} ||E(y*y)||^{1/2}.
inline CauchySchwarzResult cauchy_schwarz_check(const ConditionalExpectation& E, const CMatrix& x,
                                                const CMatrix& y, double tol = kDefaultTol) {
  CauchySchwarzResult r;
  r.lhs = operator_norm(E.apply(x.adjoint() * y));
  r.rhs = std::sqrt(operator_norm(E.apply(x.adjoint() * x))) * std::sqrt(operator_norm(E.apply(y.adjoint() * y)));
  r.holds = r.lhs <= r.rhs + tol;
  return r;
}

}  // namespace cstar

#endif  // CSTAR_ALGEBRA_HPP_
