// Walks the arch and prints how far the transformed Poschl-Teller potential
// sits from the Hulthen form, level by level.

#include <cstdio>

#include "ptspec/liouville.hpp"

using namespace ptspec;

int main() {
  const HulthenParams p{0.5, -9.0};
  const Spectrum s = hulthen_levels(p);
  for (const auto& level : s.levels) {
    const TransformInput input = hulthen_transform_input(p, level, 0.5);
    std::printf("n=%d sigma=%+d beta_eff=%.4f kappa=%.4f\n", level.N, *level.sigma,
                level.param("beta_eff").real(), level.param("kappa").real());
    for (double t : {-6.0, -2.0, -0.5, 0.0, 0.5, 2.0, 6.0}) {
      const cplx xi = arch_point(t, 0.5);
      const cplx lhs = transform_potential(input, xi);
      const cplx rhs = v_hulthen(p, xi) - level.energy;
      std::printf("  t=%+5.1f  xi=%+.4f%+.4fi  |dV|=%.2e\n", t, xi.real(), xi.imag(), std::abs(lhs - rhs));
    }
  }
  return 0;
}
