// Walks through the diagonal subalgebra of M_2 and its unitary conjugates:
// index values, Jones projections, and the angle along the rotation family
// computed three independent ways.

#include <cstdio>
#include <iostream>
#include <numbers>

#include "cstar/m2.hpp"

using namespace cstar;

namespace {

void print_matrix(const char* label, const CMatrix& m) {
  std::printf("%s =\n", label);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::printf("  ");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (std::abs(z.imag()) < 1e-12)
        std::printf("%8.4f       ", z.real());
      else
        std::printf("%7.4f%+7.4fi", z.real(), z.imag());
    }
    std::printf("\n");
  }
}

}  // namespace

int main() {
  const m2::Workspace ws;
  std::printf("Ind(E) = %.6g, Ind(F) = %.6g\n", ws.inc.E->index()(0, 0).real(), ws.inc.F->index()(0, 0).real());
  print_matrix("e_1", ws.level.jones);
  print_matrix("e_Delta", intermediate_projection(ws.level, ws.inc.Delta, *ws.inc.F));

  std::printf("\nrotation by theta: closed form, quasi-basis formula, Jones projections\n");
  std::printf("%10s %14s %14s %14s\n", "theta", "closed", "formula", "definition");
  for (int k = 0; k <= 8; ++k) {
    const double theta = std::numbers::pi / 4 * k / 8;
    const m2::ThreeRoutes r = m2::three_routes(ws, m2::Unitary2::rotation(theta));
    std::printf("%10.6f %14.10f %14.10f %14.10f\n", theta, r.closed_form, r.formula.angle_rad, r.definition.angle_rad);
  }

  const m2::GapDemo demo = m2::hadamard_gap_demo(m2::remark_unitary());
  std::printf("\nfor u = [[1, i], [i, 1]] / sqrt(2):\n");
  print_matrix("u e_Delta u*", demo.u_eC_u_star);
  print_matrix("e_{u Delta u*}", demo.e_uCu_star);
  std::printf("they %s\n", demo.equal ? "coincide" : "differ");
  return 0;
}
