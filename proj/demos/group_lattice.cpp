// Angles between group subalgebras: the exact coset formula next to the
// regular-representation computation, and the angle profile of a subgroup
// under conjugation.

#include <cstdio>
#include <string>

#include "cstar/groups.hpp"

using namespace cstar;
using namespace cstar::groups;

namespace {

std::string rational(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace

int main() {
  {
    const FiniteGroup G = FiniteGroup::parse("Z3xZ3xZ5xZ5");
    const Subgroup H = parse_subgroup(G, "(0,0,1,0)");
    const Subgroup K = parse_subgroup(G, "(1,0,0,0),(0,1,0,0),(0,0,1,0)");
    const Subgroup L = parse_subgroup(G, "(0,1,0,0),(0,0,1,0)");
    const GroupAngle a = group_angle(G, H, K, L);
    const AngleResult numeric = RegularRoute(G, H).angle(K, L);
    std::printf("Z3xZ3xZ5xZ5: [K:H] = %d, [L:H] = %d, [K cap L:H] = %d\n", a.index_k, a.index_l, a.index_meet);
    std::printf("  cos^2 = %s, angle = %.12f rad (%.6f deg)\n", rational(a.cos_squared).c_str(), a.result.angle_rad,
                a.result.angle_deg());
    std::printf("  regular representation (order %d): cos = %.12f\n\n", G.order(), numeric.cos_value);
  }
  {
    const FiniteGroup G = FiniteGroup::symmetric(4);
    const Subgroup H = trivial(G);
    const Subgroup K = parse_subgroup(G, "(12)(34),(13)(24)");
    std::printf("S4, H = 1, K = Klein four-group %s\n", is_normal(G, K) ? "(normal)" : "");
    const Subgroup K2 = parse_subgroup(G, "(123)");
    std::printf("conjugates of <(123)> by g in S4:\n");
    for (const ProfileEntry& p : normalizer_angle_profile(G, H, K2))
      std::printf("  g = %-10s angle %.6f\n", G.label(p.g).c_str(), p.angle_rad);
    std::printf("angle(K, <(123)>) = %.6f\n", group_angle(G, H, K, K2).result.angle_rad);
  }
  return 0;
}
