// Prints the fixture spectra next to their finite-difference eigenvalues.

#include <cstdio>

#include "ptspec/oracle.hpp"

using namespace ptspec;

int main() {
  const ShiftedLine line{0.5, 12.0};
  const GridSpec grid{12.0, 1500};
  for (const ModelSpec& model : {ModelSpec{EckartParams{3.5, 1.0}}, ModelSpec{PTParams{4.3, 1.7, 0.5}}}) {
    const Spectrum s = levels(model);
    const auto report = match_levels(s, discretize(model, line, grid), 1e-2);
    std::printf("%s\n  %-3s %-6s %-14s %-26s %s\n", model_name(kind_of(model)), "N", "family", "analytic",
                "finite difference", "|dE|");
    for (const auto& c : report.levels) {
      const cplx e = c.numeric.value_or(cplx(NAN, NAN));
      std::printf("  %-3d %-6s %-14.8f %+.8f%+.2ei  %.2e\n", c.level.N,
                  family_key(c.level.sigma, c.level.tau).c_str(), c.level.energy, e.real(), e.imag(), c.abs_error);
    }
  }
  const Spectrum h = hulthen_levels({0.5, -9.0});
  std::printf("hulthen (arch residual)\n");
  for (const auto& c : residual_levels(h, ArchContour{0.5, 10.0}, 1e-6).levels)
    std::printf("  %-3d %-6s %-14.8f residual %.2e\n", c.level.N, family_key(c.level.sigma, c.level.tau).c_str(),
                c.level.energy, c.residual.value_or(NAN));
  return 0;
}
