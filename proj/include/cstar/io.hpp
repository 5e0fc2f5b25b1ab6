// JSON serialisation of matrices, algebras, expectations, angles and
// verification reports. Formats are described in docs/formats.md.

#ifndef CSTAR_IO_HPP_
#define CSTAR_IO_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cstar/angles.hpp"

namespace cstar::io {

using nlohmann::json;

inline constexpr const char* kSchema = "cstar-angles/1";

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
inline json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    fail(ErrorCode::ParseError, "matrix needs rows, cols and data");
  const auto rows = j.at("rows").get<long long>();
  const auto cols = j.at("cols").get<long long>();
  const json& data = j.at("data");
  if (rows < 0 || cols < 0 || !data.is_array() || static_cast<long long>(data.size()) != rows * cols)
    fail(ErrorCode::ShapeMismatch, "matrix data does not match its declared shape");
  CMatrix m(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const json& z = data[static_cast<std::size_t>(k)];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      fail(ErrorCode::ParseError, "matrix entries must be [re, im] pairs");
    m(k / cols, k % cols) = Complex(z[0].get<double>(), z[1].get<double>());
  }
  require_finite(m);
  return m;
}

inline json matrices_to_json(const std::vector<CMatrix>& ms) {
  json out = json::array();
  for (const CMatrix& m : ms)
    out.push_back(matrix_to_json(m));
  return out;
}

inline std::vector<CMatrix> matrices_from_json(const json& j) {
  if (!j.is_array())
    fail(ErrorCode::ParseError, "expected an array of matrices");
  std::vector<CMatrix> out;
  for (const json& m : j)
    out.push_back(matrix_from_json(m));
  return out;
}

inline json algebra_to_json(const MatrixStarAlgebra& a) {
  return {{"ambient_dim", a.ambient_dim()}, {"dim", a.dim()}, {"spanning_set", matrices_to_json(a.spanning_set())}};
}

inline MatrixStarAlgebra algebra_from_json(const json& j) {
  if (!j.contains("spanning_set"))
    fail(ErrorCode::ParseError, "algebra needs a spanning_set");
  return MatrixStarAlgebra::from_spanning_set(matrices_from_json(j.at("spanning_set")));
}

/// The expectation is stored as its values on the source spanning set.
inline json expectation_to_json(const ConditionalExpectation& E) {
  std::vector<CMatrix> images;
  for (const CMatrix& x : E.source().spanning_set())
    images.push_back(E.apply_unchecked(x));
  json out{{"source", algebra_to_json(E.source())},
           {"target", algebra_to_json(E.target())},
           {"images", matrices_to_json(images)}};
  if (E.has_quasi_basis())
    out["quasi_basis"] = matrices_to_json(E.quasi_basis());
  return out;
}

inline ConditionalExpectation expectation_from_json(const json& j) {
  for (const char* key : {"source", "target", "images"})
    if (!j.contains(key))
      fail(ErrorCode::ParseError, std::string("expectation needs '") + key + "'");
  auto source = make_algebra(algebra_from_json(j.at("source")));
  auto target = make_algebra(algebra_from_json(j.at("target")));
  const std::vector<CMatrix> images = matrices_from_json(j.at("images"));
  const std::vector<CMatrix>& spanning = source->spanning_set();
  if (images.size() != spanning.size())
    fail(ErrorCode::ShapeMismatch, "one image per spanning element is required");
  const SpanProjector proj(spanning);
  CMatrix map(source->dim(), source->dim());
  for (Eigen::Index k = 0; k < source->dim(); ++k) {
    const CVector c = proj.least_squares(source->basis(k));
    CMatrix image = CMatrix::Zero(source->ambient_dim(), source->ambient_dim());
    for (std::size_t i = 0; i < images.size(); ++i)
      image += c(static_cast<Eigen::Index>(i)) * images[i];
    map.col(k) = source->coordinates(image);
  }
  ConditionalExpectation E(source, target, std::move(map));
  if (j.contains("quasi_basis"))
    return E.with_quasi_basis(matrices_from_json(j.at("quasi_basis")));
  return E;
}

inline json angle_to_json(const AngleResult& r) {
  json out{{"cos", r.cos_value},
           {"angle_rad", r.angle_rad},
           {"angle_deg", r.angle_deg()},
           {"route", to_string(r.route)},
           {"numerator", r.diagnostics.numerator},
           {"denominator_c", r.diagnostics.denom_c},
           {"denominator_d", r.diagnostics.denom_d}};
  if (r.diagnostics.cross_check)
    out["cross_check_cos"] = *r.diagnostics.cross_check;
  return out;
}

inline json checks_to_json(const VerificationReport& report) {
  json out = json::array();
  for (const Check& c : report.checks)
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  return out;
}

}  // namespace cstar::io

#endif  // CSTAR_IO_HPP_
