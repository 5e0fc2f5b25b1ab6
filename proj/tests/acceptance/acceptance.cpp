// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cstar/groups.hpp"
#include "cstar/m2.hpp"
#include "cstar/verify.hpp"

using namespace cstar;
using namespace std::complex_literals;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_entry(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Outcome closed_form_against_routes() {
  const m2::Workspace ws;
  Rng rng(kDefaultSeed);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    worst = std::max(worst, m2::three_routes(ws, u).max_cos_residual(m2::closed_form_cos(u)));
  }
  return {worst < 1e-8, "100 unitaries, max |cos closed - cos route| = " + num(worst)};
}

Outcome m2_constants() {
  const m2::Workspace ws;
  const CMatrix one = CMatrix::Identity(2, 2);
  const double ind_e = operator_norm(ws.inc.E->index() - 4.0 * one);
  const double ind_f = operator_norm(ws.inc.F->index() - 2.0 * one);
  CMatrix e1(4, 4);
  e1 << 0.5, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5;
  CMatrix e_delta = CMatrix::Zero(4, 4);
  e_delta(0, 0) = e_delta(3, 3) = 1.0;
  const double d1 = max_entry(ws.level.jones - e1);
  const double d2 = max_entry(intermediate_projection(ws.level, ws.inc.Delta, *ws.inc.F) - e_delta);
  const double worst = std::max({ind_e, ind_f, d1, d2});
  return {worst < 1e-10, "Ind(E) = 4, Ind(F) = 2, e_1 and e_Delta entrywise; max residual " + num(worst)};
}

Outcome hadamard_and_diagonal() {
  const m2::Workspace ws;
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<m2::Unitary2> hadamard{{s, s, s, -s},
                                           {s, 1i * s, 1i * s, s},
                                           m2::Unitary2::rotation(std::numbers::pi / 4),
                                           {s, std::exp(0.3i) * s, -std::exp(-0.3i) * s, s}};
  const std::vector<m2::Unitary2> diagonal{m2::Unitary2::identity(),
                                           {1i, 0.0, 0.0, -1.0},
                                           {std::exp(0.7i), 0.0, 0.0, std::exp(-2.0i)},
                                           {0.0, 1.0, 1.0, 0.0},
                                           {0.0, 1i, 1i, 0.0},
                                           {0.0, std::exp(1.1i), -std::exp(0.4i), 0.0}};
  double right = 0.0, zero = 0.0;
  bool square_iff = true;
  for (const auto& u : hadamard) {
    const m2::ThreeRoutes r = m2::three_routes(ws, u);
    right = std::max({right, std::abs(r.formula.angle_rad - std::numbers::pi / 2),
                      std::abs(r.definition.angle_rad - std::numbers::pi / 2)});
    square_iff = square_iff && m2::commuting_square_residual(ws.inc, u) < 1e-8;
  }
  for (const auto& u : diagonal) {
    const m2::ThreeRoutes r = m2::three_routes(ws, u);
    zero = std::max({zero, r.formula.angle_rad, r.definition.angle_rad});
    square_iff = square_iff && m2::commuting_square_residual(ws.inc, u) >= 1e-8;
  }
  Rng rng(kDefaultSeed);
  for (int k = 0; k < 20; ++k) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    square_iff = square_iff && (m2::commuting_square_residual(ws.inc, u) < 1e-8) == u.is_hadamard();
  }
  return {right < 1e-8 && zero < 1e-8 && square_iff,
          "Hadamard |angle - pi/2| <= " + num(right) + ", diagonal/antidiagonal angle <= " + num(zero) +
              ", commuting square iff Hadamard: " + (square_iff ? "yes" : "no")};
}

Outcome sweep_surjective() {
  const std::vector<m2::SweepPoint> sweep = m2::angle_sweep(m2::uniform_grid(1000));
  const m2::Inclusion inc = m2::canonical_inclusion();
  double route = 0.0;
  for (const m2::SweepPoint& p : sweep) {
    const ExpectationPtr Fu = m2::conjugated_diagonal(inc, m2::Unitary2::rotation(p.theta));
    route = std::max(route, std::abs(interior_angle_formula_from(*inc.E, *inc.F, *Fu).cos_value - p.cos_value));
  }
  const double gap = m2::max_gap(sweep);
  const double ends = std::max(std::abs(sweep.front().angle_rad), std::abs(sweep.back().angle_rad - std::numbers::pi / 2));
  return {gap < 0.01 && ends < 1e-12 && route < 1e-8,
          "1000 points, max gap " + num(gap) + " rad, endpoint error " + num(ends) + ", formula residual " + num(route)};
}

Outcome conjugated_projection_gap() {
  const m2::GapDemo demo = m2::hadamard_gap_demo(m2::remark_unitary());
  CMatrix conj(4, 4), jones(4, 4);
  conj << 0.5, 0, -0.5i, 0, 0, 0.5, 0, 0.5i, 0.5i, 0, 0.5, 0, 0, -0.5i, 0, 0.5;
  jones << 0.5, 0, 0, 0.5, 0, 0.5, -0.5, 0, 0, -0.5, 0.5, 0, 0.5, 0, 0, 0.5;
  const double d = std::max(max_entry(demo.u_eC_u_star - conj), max_entry(demo.e_uCu_star - jones));
  const double gap = operator_norm(demo.u_eC_u_star - demo.e_uCu_star);
  return {d < 1e-10 && gap > 0.4, "entrywise residual " + num(d) + ", ||u e_C u* - e_{uCu*}|| = " + num(gap)};
}

Outcome z3z3z5z5_example() {
  using namespace groups;
  const FiniteGroup G = FiniteGroup::parse("Z3xZ3xZ5xZ5");
  const Subgroup H = parse_subgroup(G, "(0,0,1,0)");
  const Subgroup K = parse_subgroup(G, "(1,0,0,0),(0,1,0,0),(0,0,1,0)");
  const Subgroup L = parse_subgroup(G, "(0,1,0,0),(0,0,1,0)");
  const GroupAngle a = group_angle(G, H, K, L);
  const bool exact = a.cos_exact && *a.cos_exact == Rational(1, 2);
  const double angle = std::abs(a.result.angle_rad - std::numbers::pi / 3);
  const double numeric = std::abs(RegularRoute(G, H).angle(K, L).cos_value - 0.5);
  return {exact && angle < 1e-12 && numeric < 1e-6,
          std::string("cos = ") + (a.cos_exact ? std::to_string(a.cos_exact->numerator()) + "/" +
                                                     std::to_string(a.cos_exact->denominator())
                                               : "irrational") +
              ", |angle - pi/3| = " + num(angle) + ", order-225 numeric residual " + num(numeric)};
}

Outcome lattice_equivalence() {
  std::string detail;
  bool pass = true;
  for (const char* spec : {"S3", "S4", "Z2xZ2xZ2", "Z12"}) {
    auto G = std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::parse(spec));
    const LatticeSweep sweep = lattice_agreement(G, true);
    pass = pass && sweep.max_residual < 1e-7;
    detail += std::string(detail.empty() ? "" : "; ") + spec + ": " + std::to_string(sweep.triples) +
              " triples, max residual " + num(sweep.max_residual);
  }
  return {pass, detail};
}

// e_C e_B = e_B = e_B e_C, E_1(e_B) = Ind(E)^{-1}, E_1(e_C) = Ind(E)^{-1} Ind(E|C),
// Ind(E) = Ind(F) Ind(E|C), E_1(x e_C y) = Ind(F)^{-1} x y, and the expectation
// G: A_1 -> C_1 is idempotent, compatible with E_1 and has a quasi-basis.
double intermediate_identities(const TowerLevel& level, const ExpectationPtr& F) {
  const IntermediateProjection p = intermediate_projection_data(level, F->target_ptr(), *F);
  const CMatrix& eB = level.jones;
  const CMatrix& eC = p.projection;
  const CMatrix ind_inv = positive_inverse(level.E->index());
  const CMatrix ind_f_inv = positive_inverse(F->index());
  std::vector<double> r{operator_norm(eC * eB - eB), operator_norm(eB * eC - eB),
                        operator_norm(dual_expectation_value(level, eB) - ind_inv),
                        operator_norm(dual_expectation_value(level, eC) - ind_inv * p.restricted->index()),
                        operator_norm(level.E->index() - F->index() * p.restricted->index())};
  const MatrixStarAlgebra& A = level.A();
  for (Eigen::Index k = 0; k < A.dim(); ++k)
    for (Eigen::Index l = 0; l < A.dim(); ++l) {
      const CMatrix t = level.left_basis[static_cast<std::size_t>(k)] * eC * level.left_basis[static_cast<std::size_t>(l)];
      r.push_back(operator_norm(dual_expectation_value(level, t) - ind_f_inv * A.basis(k) * A.basis(l)));
    }
  const ConditionalExpectation G = intermediate_dual_expectation(level, F->target_ptr(), *F);
  const CMatrix& M = G.map_matrix();
  r.push_back(operator_norm(M * M - M));
  r.push_back(compatibility_residual(*level.E1, G, 1e-8));
  r.push_back(quasi_basis_residual(G, G.quasi_basis()));
  return *std::max_element(r.begin(), r.end());
}

Outcome intermediate_identity_suite() {
  const m2::Workspace ws;
  double worst = intermediate_identities(ws.level, ws.inc.F);
  std::string detail = "M2/diagonal " + num(worst);
  for (const auto& [spec, gens] : std::vector<std::pair<const char*, const char*>>{{"S3", "(123)"}, {"Z4xZ2", "(1,0)"}}) {
    auto G = std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::parse(spec));
    const groups::GroupInclusion inc = groups::group_algebra_inclusion(G, groups::trivial(*G));
    const TowerLevel level = build_tower_level(inc.E);
    const double r = intermediate_identities(level, groups::subgroup_expectation(inc.algebra, groups::parse_subgroup(*G, gens)));
    detail += std::string(", ") + spec + " " + num(r);
    worst = std::max(worst, r);
  }
  return {worst < 1e-8, "max residual: " + detail};
}

Outcome exterior_routes() {
  const m2::Workspace ws;
  const TowerLevel next = iterate_tower(ws.level);
  Rng rng(kDefaultSeed);
  double worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, m2::Unitary2::random(rng));
    const AngleResult b = exterior_angle(ws.level, *ws.inc.F, *Fu, &next);
    worst = std::max(worst, std::abs(*b.diagnostics.cross_check - b.cos_value));
  }
  double self = 1.0 - exterior_angle(ws.level, *ws.inc.F, *ws.inc.F, &next).cos_value;
  for (const auto& [spec, k, l] : std::vector<std::tuple<const char*, const char*, const char*>>{
           {"Z4", "2", "2"}, {"Z2xZ2", "(1,0)", "(0,1)"}, {"Z2xZ2", "(1,0)", "(1,1)"}}) {
    auto G = std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::parse(spec));
    const groups::GroupInclusion inc = groups::group_algebra_inclusion(G, groups::trivial(*G));
    const TowerLevel level = build_tower_level(inc.E);
    const ExpectationPtr FK = groups::subgroup_expectation(inc.algebra, groups::parse_subgroup(*G, k));
    const ExpectationPtr FL = groups::subgroup_expectation(inc.algebra, groups::parse_subgroup(*G, l));
    const TowerLevel up = iterate_tower(level);
    const AngleResult b = exterior_angle(level, *FK, *FL, &up);
    worst = std::max(worst, std::abs(*b.diagnostics.cross_check - b.cos_value));
    self = std::max(self, 1.0 - exterior_angle(level, *FK, *FK, &up).cos_value);
  }
  return {worst < 1e-7 && self < 1e-8,
          "route residual " + num(worst) + " (10 M2 unitaries, Z4, Z2xZ2), 1 - cos beta(C, C) = " + num(self)};
}

Outcome traciality_counterexample() {
  const m2::Inclusion inc = m2::canonical_inclusion();
  const ExpectationPtr Fu = m2::conjugated_diagonal(inc, m2::remark_unitary());
  const ExpectationPtr E3 = m2::weighted_expectation(inc, 0.3);
  const ExpectationPtr E5 = m2::weighted_expectation(inc, 0.5);
  const double r3 = compatibility_residual(*E3, *Fu);
  const double r5 = compatibility_residual(*E5, *Fu);
  return {!is_compatible(*E3, *Fu) && r3 > 0.05 && is_compatible(*E5, *Fu),
          "t = 0.3 residual " + num(r3) + ", t = 0.5 residual " + num(r5)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"M2 closed form matches both numeric routes", 5.0, closed_form_against_routes},
      {"M2 index constants and fixed projections", 1.0, m2_constants},
      {"Hadamard right angles, diagonal zero angles, commuting squares", 0.0, hadamard_and_diagonal},
      {"rotation sweep covers [0, pi/2]", 10.0, sweep_surjective},
      {"conjugated projection differs from the conjugate's projection", 0.0, conjugated_projection_gap},
      {"Z3xZ3xZ5xZ5 angle is pi/3", 300.0, z3z3z5z5_example},
      {"subgroup lattices: coset formula vs definition route", 120.0, lattice_equivalence},
      {"intermediate projection and dual expectation identities", 0.0, intermediate_identity_suite},
      {"exterior angle: level-2 definition vs closed expressions", 0.0, exterior_routes},
      {"compatibility needs a tracial expectation", 0.0, traciality_counterexample},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    if (!in_time)
      o.detail += " (over the " + num(c.budget_s) + " s budget)";
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s [%.2f s]\n", pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
