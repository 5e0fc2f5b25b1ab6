// Dense complex-matrix kernel: norms, positivity, span membership.

#ifndef CSTAR_NUMERICS_HPP_
#define CSTAR_NUMERICS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cstar/error.hpp"

namespace cstar {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 42;

inline std::string shape_string(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void require_finite(const CMatrix& m) {
  if (!m.allFinite())
    fail(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
}

inline void require_square(const CMatrix& m) {
  if (m.rows() != m.cols())
    fail(ErrorCode::ShapeMismatch, "expected a square matrix, got " + shape_string(m));
}

inline void require_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::ShapeMismatch, shape_string(a) + " vs " + shape_string(b));
}

/// Largest singular value (the C*-norm of m in its defining representation).
inline double operator_norm(const CMatrix& m) {
  require_finite(m);
  if (m.size() == 0)
    return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

inline double frobenius_norm(const CMatrix& m) { return m.norm(); }

/// Hilbert-Schmidt inner product <a, b> = tr(a* b).
inline Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.array().conjugate() * b.array()).sum();
}

inline bool is_positive_semidefinite(const CMatrix& m, double tol = kDefaultTol) {
  require_square(m);
  require_finite(m);
  if (operator_norm(m - m.adjoint()) > tol)
    return false;
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

inline double min_eigenvalue_hermitian(const CMatrix& m) {
  require_square(m);
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// f(m) for a Hermitian m through its spectral decomposition.
template <typename F>
CMatrix hermitian_function(const CMatrix& m, F&& f) {
  require_square(m);
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXd values = es.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i)
    values(i) = f(values(i));
  return es.eigenvectors() * values.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline CMatrix positive_sqrt(const CMatrix& m) {
  return hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline CMatrix positive_inverse(const CMatrix& m) {
  const double top = std::max(operator_norm(m), 1.0);
  return hermitian_function(m, [top](double x) {
    if (x <= 1e-14 * top)
      fail(ErrorCode::NumericIntegrity, "positive element is not invertible");
    return 1.0 / x;
  });
}

inline CMatrix positive_inverse_sqrt(const CMatrix& m) {
  return positive_sqrt(positive_inverse(m));
}

inline CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline double unitarity_defect(const CMatrix& u) {
  require_square(u);
  return operator_norm(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

inline double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return operator_norm(a * b - b * a);
}

/// Column-major vectorisation; <vec(a), vec(b)> equals hs_inner(a, b).
inline CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

/// Least-squares decomposition against a fixed (possibly redundant) family of
/// matrices. The Hilbert-Schmidt Gram matrix is pseudo-inverted once.
class SpanProjector {
 public:
  SpanProjector() = default;

  explicit SpanProjector(std::span<const CMatrix> basis) {
    if (basis.empty())
      fail(ErrorCode::ShapeMismatch, "empty spanning family");
    rows_ = basis.front().rows();
    cols_ = basis.front().cols();
    stacked_.resize(rows_ * cols_, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      require_same_shape(basis.front(), basis[k]);
      require_finite(basis[k]);
      stacked_.col(static_cast<Eigen::Index>(k)) = vec(basis[k]);
    }
    const CMatrix gram = stacked_.adjoint() * stacked_;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
    const Eigen::VectorXd& values = es.eigenvalues();
    const double cutoff = 1e-12 * std::max(values.maxCoeff(), 0.0);
    Eigen::VectorXd inv(values.size());
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (values(i) > cutoff) {
        inv(i) = 1.0 / values(i);
      } else {
        inv(i) = 0.0;
        null_cols.push_back(i);
      }
    }
    pinv_gram_ = es.eigenvectors() * inv.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    null_space_.resize(gram.rows(), static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t c = 0; c < null_cols.size(); ++c)
      null_space_.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(null_cols[c]);
  }

  Eigen::Index size() const { return stacked_.cols(); }
  Eigen::Index rank() const { return size() - null_space_.cols(); }

  /// Kernel of the synthesis map c -> sum c_k basis_k (redundancy directions).
  const CMatrix& null_space() const { return null_space_; }

  CVector least_squares(const CMatrix& target) const {
    if (target.rows() != rows_ || target.cols() != cols_)
      fail(ErrorCode::ShapeMismatch, "target " + shape_string(target) + " does not match span elements");
    return pinv_gram_ * (stacked_.adjoint() * vec(target));
  }

  CMatrix synthesize(const CVector& coeffs) const {
    return unvec(stacked_ * coeffs, rows_, cols_);
  }

  /// Coefficients reproducing target within tol * (1 + ||target||_F), if any.
  std::optional<CVector> coordinates(const CMatrix& target, double tol = kDefaultTol) const {
    CVector c = least_squares(target);
    const double residual = (synthesize(c) - target).norm();
    if (residual > tol * (1.0 + target.norm()))
      return std::nullopt;
    return c;
  }

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  CMatrix stacked_;
  CMatrix pinv_gram_;
  CMatrix null_space_;
};

inline std::optional<std::vector<Complex>> coordinates_in_span(std::span<const CMatrix> basis,
                                                               const CMatrix& target,
                                                               double tol = kDefaultTol) {
  if (basis.empty())
    fail(ErrorCode::ShapeMismatch, "empty spanning family");
  require_same_shape(basis.front(), target);
  SpanProjector projector(basis);
  auto c = projector.coordinates(target, tol);
  if (!c)
    return std::nullopt;
  return std::vector<Complex>(c->data(), c->data() + c->size());
}

// Random sampling helpers (standard complex Gaussians).

inline Complex random_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

inline CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = random_complex(rng);
  return m;
}

/// Haar-distributed unitary via QR with phase correction.
inline CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  const CMatrix z = random_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0)
      q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace cstar

#endif  // CSTAR_NUMERICS_HPP_
