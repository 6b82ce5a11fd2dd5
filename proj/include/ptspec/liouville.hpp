#pragma once

// Change of independent variable r = r(xi) in -chi'' + W chi = -kappa^2 chi.
// Psi = chi(r(xi)) / sqrt(r'(xi)) then solves -Psi'' + V Psi = E Psi with
//   V - E = r'^2 (W(r) + kappa^2) + 3/4 (r''/r')^2 - 1/2 r'''/r'.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptspec/contour.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"
#include "ptspec/spectra.hpp"

namespace ptspec {

using CoordinateMap = std::function<MapDerivatives(cplx xi)>;

struct TransformInput {
  std::function<cplx(cplx)> W;
  double kappa_sq = 0.0;
  CoordinateMap map;
};

inline MapDerivatives identity_map(cplx xi) { return {xi, 1.0, 0.0, 0.0}; }

inline CoordinateMap affine_map(cplx offset) {
  return [offset](cplx xi) { return MapDerivatives{xi + offset, 1.0, 0.0, 0.0}; };
}

/// V - E for precomputed map derivatives.
inline cplx transform_potential(const std::function<cplx(cplx)>& W, double kappa_sq,
                                const MapDerivatives& d) {
  if (std::abs(d.r1) < 1e-14) throw error(errc::vanishing_jacobian, "r'(xi) = 0");
  const cplx q = d.r2 / d.r1;
  return d.r1 * d.r1 * (W(d.r) + kappa_sq) + 0.75 * q * q - 0.5 * d.r3 / d.r1;
}

inline cplx transform_potential(const TransformInput& input, cplx xi) {
  return transform_potential(input.W, input.kappa_sq, input.map(xi));
}

/// Poschl-Teller problem of a Hulthen level pushed through sinh r = -i e^{i xi}.
inline TransformInput hulthen_transform_input(const HulthenParams& p, const Level& level,
                                              double epsilon) {
  const PTParams partner = hulthen_partner(p, level, epsilon);
  const double kappa = level.param("kappa").real();
  return {[partner](cplx r) { return v_pt(partner, r); }, kappa * kappa, liouville_derivatives};
}

namespace detail {

inline std::vector<double> arch_samples(double L, int n_samples) {
  if (n_samples < 1) throw error(errc::invalid_argument, "n_samples must be >= 1");
  if (n_samples == 1) return {0.0};
  return symmetric_grid(L, static_cast<std::size_t>(n_samples));
}

}  // namespace detail

/// max over n_samples arch points of |transform - (V_hulthen - E)|, together with
/// the algebraic pieces sinh^2 r = -e^{2 i xi} and cosh^2 r = 1 - e^{2 i xi}
/// (relative to max(1, |e^{2 i xi}|), which grows like e^{2|t|} along the arch).
///
/// `map_epsilon` selects the arch on which the map derivatives are taken;
/// leaving it equal to `epsilon` is the consistent case.
inline double verify_hulthen_identity(double alpha, double C, const Level& level, int n_samples,
                                      double epsilon = 0.5, double L = 10.0,
                                      std::optional<double> map_epsilon = std::nullopt) {
  const HulthenParams p{alpha, C};
  require_level(p, level);
  require_epsilon(epsilon);
  const double map_eps = map_epsilon.value_or(epsilon);
  require_epsilon(map_eps);
  const TransformInput input = hulthen_transform_input(p, level, epsilon);

  double worst = 0.0;
  for (double t : detail::arch_samples(L, n_samples)) {
    const cplx xi = arch_point(t, epsilon);
    const MapDerivatives d = liouville_derivatives(arch_point(t, map_eps));
    const cplx lhs = transform_potential(input.W, input.kappa_sq, d);
    const cplx rhs = v_hulthen(p, xi) - level.energy;
    const cplx q = std::exp(2.0 * I * xi);
    const cplx sh = std::sinh(d.r);
    const cplx ch = std::cosh(d.r);
    const double scale = std::max(1.0, std::abs(q));
    worst = std::max({worst, std::abs(lhs - rhs), std::abs(sh * sh + q) / scale,
                      std::abs(ch * ch - (1.0 - q)) / scale});
  }
  return worst;
}

struct LiouvilleLevelResult {
  Level level;
  double max_deviation = 0.0;
};

struct LiouvilleReport {
  double max_deviation = 0.0;
  int n_samples = 0;
  double level_independence = 0.0;
  std::vector<LiouvilleLevelResult> per_level;

  bool passed(double tol) const { return max_deviation < tol && level_independence < tol; }
};

/// Identity check for every level plus the pairwise spread of the transformed
/// potentials V = transform + kappa^2 across levels.
inline LiouvilleReport liouville_check(const HulthenParams& p, int n_samples, double epsilon = 0.5,
                                       double L = 10.0) {
  const Spectrum spectrum = hulthen_levels(p);
  LiouvilleReport report;
  report.n_samples = n_samples;
  const auto grid = detail::arch_samples(L, n_samples);
  std::vector<std::vector<cplx>> transformed;
  for (const auto& level : spectrum.levels) {
    const double dev = verify_hulthen_identity(p.alpha, p.C, level, n_samples, epsilon, L);
    report.per_level.push_back({level, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
    const TransformInput input = hulthen_transform_input(p, level, epsilon);
    std::vector<cplx> values;
    for (double t : grid) values.push_back(transform_potential(input, arch_point(t, epsilon)) + input.kappa_sq);
    transformed.push_back(std::move(values));
  }
  for (std::size_t a = 0; a < transformed.size(); ++a)
    for (std::size_t b = a + 1; b < transformed.size(); ++b)
      for (std::size_t j = 0; j < grid.size(); ++j)
        report.level_independence =
            std::max(report.level_independence, std::abs(transformed[a][j] - transformed[b][j]));
  return report;
}

}  // namespace ptspec
