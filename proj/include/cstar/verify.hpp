// Invariant suites run by `angles verify`. Every check records its residual.

#ifndef CSTAR_VERIFY_HPP_
#define CSTAR_VERIFY_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cstar/groups.hpp"
#include "cstar/m2.hpp"

namespace cstar {

using namespace std::complex_literals;

namespace detail {

inline void merge(VerificationReport& into, const VerificationReport& from, const std::string& prefix) {
  for (const Check& c : from.checks)
    into.checks.push_back({prefix + c.name, c.pass, c.residual});
}

/// Mixes a quasi-basis by a random unitary scalar matrix, which yields
/// another quasi-basis of the same expectation.
inline std::vector<CMatrix> mixed_quasi_basis(const std::vector<CMatrix>& lambdas, Rng& rng) {
  const Eigen::Index k = static_cast<Eigen::Index>(lambdas.size());
  const CMatrix c = haar_unitary(k, rng);
  std::vector<CMatrix> out;
  for (Eigen::Index j = 0; j < k; ++j) {
    CMatrix acc = CMatrix::Zero(lambdas.front().rows(), lambdas.front().cols());
    for (Eigen::Index i = 0; i < k; ++i)
      acc += c(i, j) * lambdas[static_cast<std::size_t>(i)];
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace detail

struct LatticeSweep {
  int triples = 0;
  double max_residual = 0.0;  // |cos exact - cos numeric|
  std::string worst;          // description of the worst triple
};

/// Exact coset formula against a definition route over every (H, K, L) with
/// H strictly inside K and L. `generic` selects the full basic construction;
/// otherwise the regular-representation shortcut is used.
inline LatticeSweep lattice_agreement(const std::shared_ptr<const groups::FiniteGroup>& G, bool generic) {
  using namespace groups;
  const std::vector<Subgroup> subs = all_subgroups(*G);
  LatticeSweep sweep;
  for (const Subgroup& H : subs) {
    std::vector<const Subgroup*> above;
    for (const Subgroup& K : subs)
      if (K.order() > H.order() && K.contains(H))
        above.push_back(&K);
    if (above.empty())
      continue;
    const auto record = [&](std::size_t a, std::size_t b, double value) {
      const double exact = group_angle(*G, H, *above[a], *above[b]).result.cos_value;
      const double r = std::abs(exact - value);
      ++sweep.triples;
      if (r >= sweep.max_residual) {
        sweep.max_residual = r;
        sweep.worst = "|H|=" + std::to_string(H.order()) + " |K|=" + std::to_string(above[a]->order()) +
                      " |L|=" + std::to_string(above[b]->order());
      }
    };
    if (generic) {
      const GroupInclusion inc = group_algebra_inclusion(G, H);
      const TowerLevel level = build_tower_level(inc.E);
      std::vector<IntermediateProjection> proj;
      for (const Subgroup* K : above) {
        const ExpectationPtr F = subgroup_expectation(inc.algebra, *K);
        proj.push_back(intermediate_projection_data(level, F->target_ptr(), *F));
      }
      for (std::size_t a = 0; a < above.size(); ++a)
        for (std::size_t b = a; b < above.size(); ++b)
          record(a, b, interior_angle_definition(level, proj[a], proj[b]).cos_value);
    } else {
      const RegularRoute route(*G, H);
      std::vector<Eigen::MatrixXd> proj;
      for (const Subgroup* K : above)
        proj.push_back(route.projection(*K));
      for (std::size_t a = 0; a < above.size(); ++a)
        for (std::size_t b = a; b < above.size(); ++b)
          record(a, b, route.angle(proj[a], proj[b]).cos_value);
    }
  }
  return sweep;
}

inline VerificationReport suite_algebra(std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  Rng rng(seed);

  double submult = 0.0;
  double adjoint = 0.0;
  for (int s = 0; s < 100; ++s) {
    const CMatrix a = random_matrix(4, 4, rng);
    const CMatrix b = random_matrix(4, 4, rng);
    submult = std::max(submult, operator_norm(a * b) - operator_norm(a) * operator_norm(b));
    adjoint = std::max(adjoint, std::abs(operator_norm(a) - operator_norm(a.adjoint())));
  }
  report.add("operator_norm_submultiplicative", std::max(submult, 0.0), 1e-9);
  report.add("operator_norm_adjoint_invariant", adjoint, 1e-10);

  {
    std::vector<CMatrix> family;
    for (int k = 0; k < 5; ++k)
      family.push_back(random_matrix(3, 3, rng));
    family.push_back(family[0] + family[1]);  // deliberately redundant
    SpanProjector proj(family);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      CMatrix t = CMatrix::Zero(3, 3);
      for (const CMatrix& f : family)
        t += random_complex(rng) * f;
      const auto c = proj.coordinates(t, 1e-9);
      worst = std::max(worst, c ? (proj.synthesize(*c) - t).norm() / (1.0 + t.norm()) : 1.0);
    }
    report.add("span_reconstruction", worst, 1e-9);
  }

  const m2::Inclusion inc = m2::canonical_inclusion();
  detail::merge(report, verify_star_algebra(*inc.A), "M2_");
  detail::merge(report, verify_star_algebra(*inc.Delta), "diagonal_");
  detail::merge(report, verify_expectation(*inc.E, kDefaultTol, seed), "E_");
  detail::merge(report, verify_expectation(*inc.F, kDefaultTol, seed), "F_");
  const m2::Unitary2 u = m2::Unitary2::random(rng);
  const ExpectationPtr Fu = m2::conjugated_diagonal(inc, u);
  detail::merge(report, verify_expectation(*Fu, kDefaultTol, seed), "Fu_");

  const CMatrix indE = watatani_index(*inc.E);
  double central = 0.0;
  for (const CMatrix& b : inc.A->basis())
    central = std::max(central, commutator_norm(indE, b));
  report.add("index_central", central, 1e-9);

  const std::vector<CMatrix> mixed = detail::mixed_quasi_basis(inc.E->quasi_basis(), rng);
  report.add("second_quasi_basis_valid", quasi_basis_residual(*inc.E, mixed), 1e-9);
  report.add("index_quasi_basis_independent",
             operator_norm(index_from_quasi_basis(mixed, 2) - indE), 1e-9);

  const ConditionalExpectation EC = restrict_expectation(*inc.E, inc.Delta, *inc.F);
  report.add("index_multiplicative_m2", operator_norm(indE - inc.F->index() * EC.index()), 1e-9);
  std::vector<CMatrix> composite;
  for (const CMatrix& g : inc.F->quasi_basis())
    for (const CMatrix& m : EC.quasi_basis())
      composite.push_back(g * m);
  report.add("composite_quasi_basis_m2", quasi_basis_residual(*inc.E, composite), 1e-9);

  {
    using namespace groups;
    auto G = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(3));
    const Subgroup H = trivial(*G);
    const Subgroup K = parse_subgroup(*G, "(12)");
    const GroupInclusion ginc = group_algebra_inclusion(G, H);
    const ExpectationPtr FK = subgroup_expectation(ginc.algebra, K);
    const ConditionalExpectation EK = restrict_expectation(*ginc.E, FK->target_ptr(), *FK);
    detail::merge(report, verify_expectation(*ginc.E, kDefaultTol, seed), "group_E_");
    report.add("index_multiplicative_group",
               operator_norm(ginc.E->index() - FK->index() * EK.index()), 1e-9);
    std::vector<CMatrix> gcomp;
    for (const CMatrix& g : FK->quasi_basis())
      for (const CMatrix& m : EK.quasi_basis())
        gcomp.push_back(g * m);
    report.add("composite_quasi_basis_group", quasi_basis_residual(*ginc.E, gcomp), 1e-9);
  }

  const ExpectationPtr Fr = m2::conjugated_diagonal(inc, m2::remark_unitary());
  const double bad = compatibility_residual(*m2::weighted_expectation(inc, 0.3), *Fr);
  const double good = compatibility_residual(*m2::weighted_expectation(inc, 0.5), *Fr);
  report.add_flag("nontracial_weight_incompatible", bad > 0.05, bad);
  report.add("tracial_weight_compatible", good, 1e-9);

  double cs = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto r = cauchy_schwarz_check(*inc.E, inc.A->random_element(rng), inc.A->random_element(rng));
    cs = std::max(cs, r.lhs - r.rhs);
  }
  report.add("cauchy_schwarz", std::max(cs, 0.0), 1e-9);
  return report;
}

inline VerificationReport suite_tower(std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  Rng rng(seed);
  const m2::Workspace ws;
  detail::merge(report, verify_tower_level(ws.level, kDefaultTol, seed), "m2_");
  report.add("iterated_index_scalar", operator_norm(ws.level.E1->index() - 4.0 * CMatrix::Identity(4, 4)), 1e-9);

  CMatrix e1(4, 4);
  e1 << 0.5, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5;
  const CMatrix e_delta = intermediate_projection(ws.level, ws.inc.Delta, *ws.inc.F);
  CMatrix e_delta_expected = CMatrix::Zero(4, 4);
  e_delta_expected(0, 0) = e_delta_expected(3, 3) = 1.0;
  report.add("e1_fixed_coordinates", (ws.level.jones - e1).cwiseAbs().maxCoeff(), 1e-10);
  report.add("e_delta_fixed_coordinates", (e_delta - e_delta_expected).cwiseAbs().maxCoeff(), 1e-10);

  m2::Unitary2 u = m2::Unitary2::random(rng);
  const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, u);
  const IntermediateProjection pd = intermediate_projection_data(ws.level, Fu->target_ptr(), *Fu);
  const CMatrix& eB = ws.level.jones;
  const CMatrix& eD = pd.projection;
  report.add("eD_projection", operator_norm(eD * eD - eD) + operator_norm(eD - eD.adjoint()), 1e-9);
  report.add("eD_dominates_eB", operator_norm(eD * eB - eB) + operator_norm(eB * eD - eB), 1e-9);
  report.add_flag("projections_do_not_commute", commutator_norm(e_delta, eD) > 1e-6, commutator_norm(e_delta, eD));

  const auto identities = [&](const TowerLevel& level, const ExpectationPtr& F, const std::string& tag) {
    const IntermediateProjection p = intermediate_projection_data(level, F->target_ptr(), *F);
    const CMatrix& indE = level.E->index();
    report.add(tag + "dual_of_jones", operator_norm(dual_expectation_value(level, level.jones) - positive_inverse(indE)),
               1e-8);
    report.add(tag + "dual_of_intermediate_projection",
               operator_norm(dual_expectation_value(level, p.projection) -
                             positive_inverse(indE) * p.restricted->index()),
               1e-8);
    report.add(tag + "index_multiplicative", operator_norm(indE - F->index() * p.restricted->index()), 1e-8);
    const CMatrix indF_inv = positive_inverse(F->index());
    double restricted = 0.0;
    const MatrixStarAlgebra& A = level.A();
    for (Eigen::Index k = 0; k < A.dim(); ++k)
      for (Eigen::Index l = 0; l < A.dim(); ++l) {
        const CMatrix t = level.left_basis[static_cast<std::size_t>(k)] * p.projection *
                          level.left_basis[static_cast<std::size_t>(l)];
        restricted = std::max(restricted, operator_norm(dual_expectation_value(level, t) -
                                                        indF_inv * A.basis(k) * A.basis(l)));
      }
    report.add(tag + "dual_restricts_to_dual_of_F", restricted, 1e-8);
    const ConditionalExpectation G = intermediate_dual_expectation(level, F->target_ptr(), *F);
    const CMatrix& M = G.map_matrix();
    report.add(tag + "G_idempotent", operator_norm(M * M - M), 1e-8);
    report.add(tag + "G_compatible", compatibility_residual(*level.E1, G, 1e-8), 1e-8);
    report.add(tag + "G_quasi_basis", quasi_basis_residual(G, G.quasi_basis()), 1e-8);
  };
  identities(ws.level, ws.inc.F, "m2_");
  {
    using namespace groups;
    for (const auto& [spec, gens] : std::vector<std::pair<std::string, std::string>>{{"S3", "(123)"}, {"Z2xZ2xZ2", "(1,0,0),(0,1,0)"}}) {
      auto G = std::make_shared<const FiniteGroup>(FiniteGroup::parse(spec));
      const GroupInclusion inc = group_algebra_inclusion(G, trivial(*G));
      const TowerLevel level = build_tower_level(inc.E);
      identities(level, subgroup_expectation(inc.algebra, parse_subgroup(*G, gens)), spec + "_");
    }
  }
  return report;
}

inline VerificationReport suite_angles(std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  Rng rng(seed);
  const m2::Workspace ws;
  double agree = 0.0;
  double symmetry = 0.0;
  double cs_link = 0.0;
  for (int s = 0; s < 100; ++s) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, u);
    const AngleResult f = interior_angle_formula_from(*ws.inc.E, *ws.inc.F, *Fu);
    const AngleResult d = interior_angle_definition(ws.level, *ws.inc.F, *Fu);
    const AngleResult r = interior_angle_definition(ws.level, *Fu, *ws.inc.F);
    agree = std::max(agree, std::abs(f.cos_value - d.cos_value));
    symmetry = std::max(symmetry, std::abs(d.cos_value - r.cos_value));
  }
  report.add("route_agreement_m2", agree, 1e-8);
  report.add("symmetry", symmetry, 1e-9);

  // right angle exactly when E_Delta and E_D form a commuting square
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<m2::Unitary2> family{m2::Unitary2::rotation(std::numbers::pi / 4), {s, s, s, -s},
                                   m2::Unitary2::rotation(0.3), m2::remark_unitary(),
                                   m2::Unitary2::rotation(1.1), m2::Unitary2::random(rng)};
  for (const m2::Unitary2& u : family) {
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, u);
    const bool right = interior_angle_definition(ws.level, *ws.inc.F, *Fu).cos_value < 1e-8;
    const bool square = m2::commuting_square_residual(ws.inc, u) < 1e-8;
    cs_link = std::max(cs_link, right == square ? 0.0 : 1.0);
  }
  report.add("right_angle_iff_commuting_square", cs_link, 0.5);

  double self = 0.0;
  for (int k = 0; k < 5; ++k) {
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, m2::Unitary2::random(rng));
    self = std::max(self, interior_angle_definition(ws.level, *Fu, *Fu).angle_rad);
  }
  report.add("self_angle_zero", self, 1e-6);

  {
    const ConditionalExpectation EC = restrict_expectation(*ws.inc.E, ws.inc.Delta, *ws.inc.F);
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, m2::Unitary2::random(rng));
    const ConditionalExpectation ED = restrict_expectation(*ws.inc.E, Fu->target_ptr(), *Fu);
    const ConditionalExpectation EC2 = EC.with_quasi_basis(detail::mixed_quasi_basis(EC.quasi_basis(), rng));
    const double a = interior_angle_formula(*ws.inc.E, EC, ED).cos_value;
    const double b = interior_angle_formula(*ws.inc.E, EC2, ED).cos_value;
    report.add("quasi_basis_invariance", std::abs(a - b), 1e-8);
  }

  {
    using namespace groups;
    auto G = std::make_shared<const FiniteGroup>(FiniteGroup::parse("Z2xZ2xZ2"));
    const GroupInclusion inc = group_algebra_inclusion(G, trivial(*G));
    const TowerLevel level = build_tower_level(inc.E);
    const ExpectationPtr FK = subgroup_expectation(inc.algebra, parse_subgroup(*G, "(1,0,0),(0,1,0)"));
    const ExpectationPtr FL = subgroup_expectation(inc.algebra, parse_subgroup(*G, "(1,0,0),(0,0,1)"));
    report.add("z2cubed_cos_one_third",
               std::abs(interior_angle_definition(level, *FK, *FL).cos_value - 1.0 / 3.0), 1e-8);
    double worst = 0.0;
    for (const char* spec : {"Z2xZ2xZ2", "Z4xZ2", "S3"})
      worst = std::max(worst, lattice_agreement(std::make_shared<const FiniteGroup>(FiniteGroup::parse(spec)), true)
                                  .max_residual);
    report.add("route_agreement_groups", worst, 1e-8);
  }

  {
    const TowerLevel next = iterate_tower(ws.level);
    double two_route = 0.0;
    double self_ext = 0.0;
    for (int k = 0; k < 10; ++k) {
      const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, m2::Unitary2::random(rng));
      const AngleResult b = exterior_angle(ws.level, *ws.inc.F, *Fu, &next);
      two_route = std::max(two_route, std::abs(b.cos_value - *b.diagnostics.cross_check));
    }
    self_ext = exterior_angle(ws.level, *ws.inc.F, *ws.inc.F, &next).angle_rad;
    using namespace groups;
    auto Z4 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(4));
    const GroupInclusion inc = group_algebra_inclusion(Z4, trivial(*Z4));
    const TowerLevel level = build_tower_level(inc.E);
    const ExpectationPtr F2 = subgroup_expectation(inc.algebra, parse_subgroup(*Z4, "2"));
    const AngleResult z = exterior_angle(level, *F2, *F2);
    two_route = std::max(two_route, std::abs(z.cos_value - *z.diagnostics.cross_check));
    self_ext = std::max(self_ext, z.angle_rad);
    report.add("exterior_two_route_agreement", two_route, 1e-7);
    report.add("exterior_self_angle_zero", self_ext, 1e-6);
  }
  return report;
}

inline VerificationReport suite_m2(std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  Rng rng(seed);
  const m2::Workspace ws;
  report.add("index_E_is_4", operator_norm(ws.inc.E->index() - 4.0 * CMatrix::Identity(2, 2)), 1e-10);
  report.add("index_F_is_2", operator_norm(ws.inc.F->index() - 2.0 * CMatrix::Identity(2, 2)), 1e-10);

  double three = 0.0;
  double eD = 0.0;
  double tt = 0.0;
  for (int s = 0; s < 100; ++s) {
    const m2::Unitary2 u = m2::Unitary2::random(rng);
    const m2::ThreeRoutes r = m2::three_routes(ws, u);
    three = std::max(three, r.max_cos_residual(m2::closed_form_cos(u)));
    const ExpectationPtr Fu = m2::conjugated_diagonal(ws.inc, u);
    eD = std::max(eD, (m2::closed_form_eD(u) - intermediate_projection(ws.level, Fu->target_ptr(), *Fu))
                          .cwiseAbs()
                          .maxCoeff());
    const CMatrix T = m2::t_matrix(ws, u);
    const double lambda = (1.0 - u.overlap() * u.overlap()) / 16.0;
    tt = std::max(tt, operator_norm(T.adjoint() * T - lambda * CMatrix::Identity(2, 2)));
  }
  report.add("three_route_agreement", three, 1e-8);
  report.add("closed_form_eD_matches_tower", eD, 1e-9);
  report.add("T_star_T_scalar", tt, 1e-10);

  // zero angle exactly for diagonal or antidiagonal u
  double zero_char = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double theta = std::numbers::pi / 2 * k / 20.0;
    const m2::Unitary2 u{std::cos(theta), -std::sin(theta) * 1i, -std::sin(theta) * 1i, std::cos(theta)};
    const bool flat = m2::three_routes(ws, u).definition.angle_rad < 1e-6;
    const bool diag = std::abs(u.l12) < 1e-9 || std::abs(u.l11) < 1e-9;
    zero_char = std::max(zero_char, flat == diag ? 0.0 : 1.0);
  }
  report.add("zero_angle_iff_diagonal_or_antidiagonal", zero_char, 0.5);

  double hadamard = 0.0;
  const double s = 1.0 / std::sqrt(2.0);
  for (const m2::Unitary2& u : std::vector<m2::Unitary2>{m2::Unitary2{s, s, s, -s}, m2::Unitary2{s, -s, s, s}, m2::remark_unitary(),
                                m2::Unitary2{s, s * 1i, s, -s * 1i}})
    hadamard = std::max(hadamard, std::abs(m2::three_routes(ws, u).definition.angle_rad - std::numbers::pi / 2));
  report.add("hadamard_right_angle", hadamard, 1e-8);

  const auto sweep = m2::angle_sweep(m2::uniform_grid(1000));
  report.add("sweep_max_gap", m2::max_gap(sweep), 0.01);
  report.add("sweep_endpoints",
             std::abs(sweep.front().angle_rad) + std::abs(sweep.back().angle_rad - std::numbers::pi / 2), 1e-9);

  const m2::GapDemo demo = m2::hadamard_gap_demo(m2::remark_unitary());
  report.add_flag("conjugated_projection_differs", !demo.equal,
                  operator_norm(demo.u_eC_u_star - demo.e_uCu_star));
  return report;
}

inline VerificationReport suite_groups(std::uint64_t seed = kDefaultSeed) {
  using namespace groups;
  VerificationReport report;
  Rng rng(seed);
  std::map<std::string, std::shared_ptr<const FiniteGroup>> test_groups;
  for (const char* spec : {"S3", "S4", "Z2xZ2xZ2", "Z4xZ2", "Z12"})
    test_groups[spec] = std::make_shared<const FiniteGroup>(FiniteGroup::parse(spec));
  bool tables = true;
  for (const auto& [name, G] : test_groups)
    tables = tables && G->verify(seed);
  report.add_flag("cayley_tables_valid", tables);

  double agree = 0.0;
  for (const auto& [name, G] : test_groups)
    agree = std::max(agree, lattice_agreement(G, false).max_residual);
  report.add("formula_matches_definition_route", agree, 1e-7);

  // zero iff K = L, right angle iff K cap L = H, over full lattices
  double zero = 0.0;
  double right = 0.0;
  for (const auto& [name, G] : test_groups) {
    const auto subs = all_subgroups(*G);
    for (const Subgroup& H : subs)
      for (const Subgroup& K : subs)
        for (const Subgroup& L : subs) {
          if (!(K.contains(H) && L.contains(H)) || K == H || L == H)
            continue;
          const GroupAngle a = group_angle(*G, H, K, L);
          zero = std::max(zero, (a.cos_squared == Rational(1)) == (K == L) ? 0.0 : 1.0);
          right = std::max(right, (a.cos_squared == Rational(0)) == (intersection(K, L) == H) ? 0.0 : 1.0);
        }
  }
  report.add("zero_angle_iff_equal", zero, 0.5);
  report.add("right_angle_iff_meet_is_bottom", right, 0.5);

  {
    auto G = test_groups.at("S3");
    const Subgroup H = trivial(*G);
    const Subgroup K = parse_subgroup(*G, "(12)");
    const Subgroup L = parse_subgroup(*G, "(123)");
    const RegularRoute canonical(*G, H);
    const RegularRoute shuffled(*G, H, random_coset_reps(*G, H, rng));
    const double a = canonical.angle(K, L).cos_value;
    const double b = shuffled.angle(shuffled.projection(K, random_coset_reps(*G, K, H, rng)), shuffled.projection(L))
                         .cos_value;
    report.add("coset_representative_invariance", std::abs(a - b), 1e-8);
    const GroupInclusion inc = group_algebra_inclusion(G, H);
    report.add("index_is_coset_count", operator_norm(inc.E->index() - 6.0 * CMatrix::Identity(6, 6)), 1e-9);
    const auto profile = normalizer_angle_profile(*G, H, K);
    Subgroup zero_set;
    for (const ProfileEntry& p : profile)
      if (p.angle_rad < 1e-12)
        zero_set.elements.push_back(p.g);
    report.add_flag("normalizer_zero_set", zero_set == normalizer(*G, K));
  }

  {
    auto G = std::make_shared<const FiniteGroup>(FiniteGroup::parse("Z3xZ3xZ5xZ5"));
    const Subgroup K = parse_subgroup(*G, "(1,0,0,0),(0,1,0,0),(0,0,1,0)");
    const Subgroup L = parse_subgroup(*G, "(0,1,0,0),(0,0,1,0)");
    const Subgroup H = parse_subgroup(*G, "(0,0,1,0)");
    const GroupAngle a = group_angle(*G, H, K, L);
    report.add_flag("z3z3z5z5_cos_is_one_half", a.cos_exact && *a.cos_exact == Rational(1, 2));
    report.add("z3z3z5z5_angle_is_pi_over_3", std::abs(a.result.angle_rad - std::numbers::pi / 3), 1e-12);
  }
  return report;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "tower", "angles", "m2", "groups"};
  return names;
}

inline VerificationReport run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed) {
  if (name == "algebra")
    return suite_algebra(seed);
  if (name == "tower")
    return suite_tower(seed);
  if (name == "angles")
    return suite_angles(seed);
  if (name == "m2")
    return suite_m2(seed);
  if (name == "groups")
    return suite_groups(seed);
  if (name == "all") {
    VerificationReport all;
    for (const std::string& s : suite_names())
      detail::merge(all, run_suite(s, seed), s + ".");
    return all;
  }
  fail(ErrorCode::ParseError, "unknown suite '" + name + "'");
}

}  // namespace cstar

#endif  // CSTAR_VERIFY_HPP_
