#pragma once

// Analytic eigenfunctions on their contours and the ODE residual checker.
//
// Every eigenfunction is held in factored form
//     psi = entire * polynomial * prod_k base_k^{exponent_k},
// so that single-point evaluation can use principal powers while contour
// sampling continues each logarithm along the path.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ptspec/contour.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"
#include "ptspec/spectra.hpp"
#include "ptspec/specfun.hpp"

namespace ptspec {

struct PowerFactor {
  cplx base;
  cplx exponent;
};

struct Factorized {
  std::vector<PowerFactor> powers;
  cplx entire = 1.0;
  cplx polynomial = 1.0;
};

struct WaveSample {
  double t;
  cplx xi;
  cplx psi;
};

inline cplx evaluate_principal(const Factorized& f) {
  cplx out = f.entire * f.polynomial;
  for (const auto& p : f.powers) out *= std::pow(p.base, p.exponent);
  return out;
}

// ---------------------------------------------------------------- factor builders

inline Factorized eckart_factors(const Level& level, cplx r) {
  const cplx sh = std::sinh(r);
  if (std::abs(sh) < singular_tolerance) throw error(errc::singular_point, "sinh r = 0");
  const cplx u = level.param("u");
  const cplx v = level.param("v");
  const cplx z = 0.5 * (1.0 - std::cosh(r) / sh);
  Factorized f;
  f.powers.push_back({1.0 / sh, u + v});
  f.entire = std::exp((v - u) * r);
  f.polynomial = gauss2f1_terminating({level.param("a"), level.param("b"), level.param("c"), z});
  return f;
}

/// The C1 = 0 Gauss branch, z^{1-c'} 2F1(a'+1-c', b'+1-c'; 2-c'; z), built with
/// u -> -u and terminated at the same degree.
inline Factorized eckart_second_branch_factors(const EckartParams& p, const Level& level, cplx r) {
  const cplx sh = std::sinh(r);
  if (std::abs(sh) < singular_tolerance) throw error(errc::singular_point, "sinh r = 0");
  const cplx u2 = -level.param("u");
  const cplx v = level.param("v");
  const cplx y = std::cosh(r) / sh;
  const cplx z = 0.5 * (1.0 - y);
  const cplx c2 = 1.0 + 2.0 * u2;
  const cplx sum = 2.0 * u2 + 2.0 * v + 1.0;
  const cplx prod = (u2 + v) * (u2 + v + 1.0) + p.A * (1.0 - p.A);
  const cplx disc = std::sqrt(sum * sum - 4.0 * prod);
  cplx a2 = 0.5 * (sum + disc);
  cplx b2 = 0.5 * (sum - disc);
  if (!nonpositive_integer(b2 + 1.0 - c2, 1e-9)) std::swap(a2, b2);
  if (!nonpositive_integer(b2 + 1.0 - c2, 1e-9))
    throw error(errc::non_terminating, "second Eckart branch does not terminate");
  // Snap the terminating parameter to its integer value.
  const double nb = std::round((b2 + 1.0 - c2).real());
  Factorized f;
  f.powers = {{y - 1.0, u2}, {y + 1.0, v}, {z, 1.0 - c2}};
  f.polynomial = gauss2f1_terminating({a2 + 1.0 - c2, nb, 2.0 - c2, z});
  return f;
}

inline Factorized pt_factors(const PTParams& p, const Level& level, cplx r) {
  const cplx sh = std::sinh(r);
  const cplx ch = std::cosh(r);
  if (std::abs(sh) < singular_tolerance || std::abs(ch) < singular_tolerance)
    throw error(errc::singular_point, "sinh r or cosh r vanishes");
  const double sigma = *level.sigma;
  const double tau = *level.tau;
  Factorized f;
  f.powers = {{sh, tau * p.beta + 0.5}, {ch, sigma * p.alpha + 0.5}};
  f.polynomial =
      gauss2f1_terminating({level.param("b"), level.param("a"), level.param("c"), -sh * sh});
  return f;
}

/// The C1 = 0 Gauss branch of the same level, reached through tau -> -tau.
inline Factorized pt_second_branch_factors(const PTParams& p, const Level& level, cplx r) {
  const cplx sh = std::sinh(r);
  const cplx ch = std::cosh(r);
  if (std::abs(sh) < singular_tolerance || std::abs(ch) < singular_tolerance)
    throw error(errc::singular_point, "sinh r or cosh r vanishes");
  const double sigma = *level.sigma;
  const double tau = *level.tau;
  const double c2 = -tau * p.beta + 1.0;
  const double sum = -tau * p.beta + sigma * p.alpha + 1.0;
  const double kappa = std::sqrt(-level.energy);
  double a2 = 0.5 * (sum + kappa);
  double b2 = 0.5 * (sum - kappa);
  if (!nonpositive_integer(a2 + 1.0 - c2, 1e-9)) std::swap(a2, b2);
  if (!nonpositive_integer(a2 + 1.0 - c2, 1e-9))
    throw error(errc::non_terminating, "second Poschl-Teller branch does not terminate");
  const double na = std::round(a2 + 1.0 - c2);
  Factorized f;
  f.powers = {{sh, -tau * p.beta + 0.5}, {ch, sigma * p.alpha + 0.5}, {sh * sh, 1.0 - c2}};
  f.polynomial = gauss2f1_terminating({na, b2 + 1.0 - c2, 2.0 - c2, -sh * sh});
  return f;
}

/// Psi(xi) = chi(r(xi)) / sqrt(r'(xi)) with chi the partner Poschl-Teller state.
inline Factorized hulthen_factors(const HulthenParams& p, const Level& level, double epsilon,
                                  cplx xi) {
  const MapDerivatives d = liouville_derivatives(xi);
  const PTParams partner = hulthen_partner(p, level, epsilon);
  const Level chi = make_pt_level(partner.alpha, partner.beta, *level.sigma, *level.tau, level.N);
  Factorized f = pt_factors(partner, chi, d.r);
  if (std::abs(d.r1) < singular_tolerance)
    throw error(errc::singular_point, "r'(xi) vanishes");
  f.powers.push_back({d.r1, -0.5});
  return f;
}

// ---------------------------------------------------------------- single-point evaluation
//
// Principal powers: on the shifted line sinh r stays in the lower half plane
// and cosh r, i tanh r in the right half plane, so no factor meets the cut.
// Use sample_psi for general paths.

inline cplx eckart_psi(const EckartParams& p, const Level& level, cplx r) {
  require_level(p, level);
  return evaluate_principal(eckart_factors(level, r));
}

inline cplx pt_psi(const PTParams& p, const Level& level, cplx r) {
  require_level(p, level);
  return evaluate_principal(pt_factors(p, level, r));
}

inline cplx hulthen_psi(const HulthenParams& p, const Level& level, const ArchContour& arch,
                        double t) {
  require_level(p, level);
  require_epsilon(arch.epsilon);
  return evaluate_principal(hulthen_factors(p, level, arch.epsilon, arch.at(t).xi));
}

// ---------------------------------------------------------------- contour sampling

using FactorBuilder = std::function<Factorized(cplx xi)>;

/// Samples a factored function along `contour`, continuing every complex power
/// from the principal branch at the grid point nearest t = 0.
inline std::vector<WaveSample> sample_factorized(const FactorBuilder& build,
                                                 const ContourSpec& contour,
                                                 std::span<const double> grid) {
  const std::size_t n = grid.size();
  std::vector<WaveSample> out(n);
  std::vector<Factorized> parts(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx xi = evaluate(contour, grid[j]).xi;
    parts[j] = build(xi);
    out[j] = {grid[j], xi, parts[j].entire * parts[j].polynomial};
  }
  if (n == 0) return out;
  const std::size_t anchor = index_nearest_zero(grid);
  const std::size_t n_powers = parts.front().powers.size();
  std::vector<cplx> bases(n);
  for (std::size_t k = 0; k < n_powers; ++k) {
    for (std::size_t j = 0; j < n; ++j) bases[j] = parts[j].powers[k].base;
    const auto powered = complex_power_tracked(bases, parts[anchor].powers[k].exponent, anchor);
    for (std::size_t j = 0; j < n; ++j) out[j].psi *= powered[j];
  }
  return out;
}

inline FactorBuilder eigenfunction_builder(const ModelSpec& model, const Level& level,
                                           const ContourSpec& contour) {
  require_level(model, level);
  if (const auto* e = std::get_if<EckartParams>(&model)) {
    (void)e;
    return [level](cplx xi) { return eckart_factors(level, xi); };
  }
  if (const auto* pt = std::get_if<PTParams>(&model)) {
    const PTParams p = *pt;
    return [p, level](cplx xi) { return pt_factors(p, level, xi); };
  }
  const HulthenParams p = std::get<HulthenParams>(model);
  if (!std::holds_alternative<ArchContour>(contour))
    throw error(errc::invalid_argument, "Hulthen eigenfunctions live on the arch contour");
  const double epsilon = contour_epsilon(contour);
  return [p, level, epsilon](cplx xi) { return hulthen_factors(p, level, epsilon, xi); };
}

/// Eigenfunction of an emitted level sampled along its contour.
inline std::vector<WaveSample> sample_psi(const ModelSpec& model, const Level& level,
                                          const ContourSpec& contour,
                                          std::span<const double> grid) {
  require_epsilon(contour_epsilon(contour));
  return sample_factorized(eigenfunction_builder(model, level, contour), contour, grid);
}

/// The second Gauss branch of an Eckart or Poschl-Teller level.
inline std::vector<WaveSample> sample_second_branch(const ModelSpec& model, const Level& level,
                                                    const ContourSpec& contour,
                                                    std::span<const double> grid) {
  require_level(model, level);
  FactorBuilder build;
  if (const auto* e = std::get_if<EckartParams>(&model)) {
    const EckartParams p = *e;
    build = [p, level](cplx xi) { return eckart_second_branch_factors(p, level, xi); };
  } else if (const auto* pt = std::get_if<PTParams>(&model)) {
    const PTParams p = *pt;
    build = [p, level](cplx xi) { return pt_second_branch_factors(p, level, xi); };
  } else {
    throw error(errc::invalid_argument, "second-branch construction exists for Eckart and PT only");
  }
  return sample_factorized(build, contour, grid);
}

// ---------------------------------------------------------------- Jacobi forms

enum class EckartJacobiConvention { doubled, quartered };  // (2u, 2v) or (u/2, v/2)

inline cplx eckart_jacobi_form(const Level& level, cplx r, EckartJacobiConvention convention) {
  const cplx u = level.param("u");
  const cplx v = level.param("v");
  const double scale = convention == EckartJacobiConvention::doubled ? 2.0 : 0.5;
  return jacobi_poly(level.N, scale * u, scale * v, std::cosh(r) / std::sinh(r));
}

/// N! / (tau beta + 1)_N * P_N^{(tau beta, sigma alpha)}(cosh 2r); equals the Gauss factor.
inline cplx pt_jacobi_form(const PTParams& p, const Level& level, cplx r) {
  const double tb = *level.tau * p.beta;
  const double sa = *level.sigma * p.alpha;
  cplx norm = 1.0;
  for (int k = 1; k <= level.N; ++k) norm *= static_cast<double>(k) / (tb + k);
  return norm * jacobi_poly(level.N, tb, sa, std::cosh(2.0 * r));
}

// ---------------------------------------------------------------- diagnostics

/// Relative spread of a_j / b_j about its value at the grid centre, over points
/// where |b_j| >= min_rel * max|b|.
inline double ratio_spread(std::span<const cplx> a, std::span<const cplx> b, double min_rel = 1e-6) {
  if (a.size() != b.size() || a.empty())
    throw error(errc::invalid_argument, "ratio_spread needs equal non-empty sequences");
  double bmax = 0.0;
  for (const auto& x : b) bmax = std::max(bmax, std::abs(x));
  const cplx ref = a[a.size() / 2] / b[b.size() / 2];
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(b[j]) < min_rel * bmax) continue;
    worst = std::max(worst, std::abs(a[j] / b[j] - ref) / std::abs(ref));
  }
  return worst;
}

inline std::vector<cplx> psi_values(std::span<const WaveSample> samples) {
  std::vector<cplx> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.psi);
  return out;
}

/// max(|psi(t_first)|, |psi(t_last)|) / |psi(t nearest 0)|.
inline double decay_ratio(std::span<const WaveSample> samples) {
  if (samples.size() < 3) throw error(errc::invalid_argument, "need at least three samples");
  std::size_t mid = 0;
  for (std::size_t j = 1; j < samples.size(); ++j)
    if (std::abs(samples[j].t) < std::abs(samples[mid].t)) mid = j;
  return std::max(std::abs(samples.front().psi), std::abs(samples.back().psi)) /
         std::abs(samples[mid].psi);
}

// ---------------------------------------------------------------- residual

enum class StencilOrder { second = 2, fourth = 4 };

inline constexpr double residual_floor = 1e-30;

using ComplexPotential = std::function<cplx(cplx)>;

/// max over interior points of |-psi'' + (V - E) psi| / max(|psi|_local, floor).
///
/// psi'' is the derivative along xi, recovered from t-derivatives by the chain
/// rule psi_xixi = (psi_tt - psi_t xi''/xi') / xi'^2 with the contour's analytic
/// xi', xi''. The t-derivatives use centred stencils of the requested order;
/// |psi|_local is the largest |psi| inside the stencil.
inline double residual_check(const ComplexPotential& V, double E,
                             std::span<const WaveSample> samples, const ContourSpec& contour,
                             StencilOrder order = StencilOrder::fourth) {
  const std::size_t n = samples.size();
  const std::size_t half = order == StencilOrder::second ? 1 : 2;
  if (n < 5) throw error(errc::grid_too_coarse, "residual check needs at least 5 samples");
  const double h = samples[1].t - samples[0].t;
  if (!(h > 0.0)) throw error(errc::invalid_argument, "samples must be ordered by increasing t");
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs((samples[j].t - samples[j - 1].t) - h) > 1e-9 * h)
      throw error(errc::invalid_argument, "residual check needs a uniform t-grid");
  }

  double worst = 0.0;
  for (std::size_t j = half; j + half < n; ++j) {
    cplx d1;
    cplx d2;
    double local = 0.0;
    for (std::size_t k = j - half; k <= j + half; ++k) local = std::max(local, std::abs(samples[k].psi));
    if (order == StencilOrder::second) {
      const cplx m = samples[j - 1].psi;
      const cplx p = samples[j + 1].psi;
      d1 = (p - m) / (2.0 * h);
      d2 = (m - 2.0 * samples[j].psi + p) / (h * h);
    } else {
      const cplx m2 = samples[j - 2].psi;
      const cplx m1 = samples[j - 1].psi;
      const cplx p1 = samples[j + 1].psi;
      const cplx p2 = samples[j + 2].psi;
      d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
      d2 = (-m2 + 16.0 * m1 - 30.0 * samples[j].psi + 16.0 * p1 - p2) / (12.0 * h * h);
    }
    const ContourPoint c = evaluate(contour, samples[j].t);
    const cplx psi_xi = d1 / c.dxi;
    const cplx psi_xixi = (d2 - psi_xi * c.d2xi) / (c.dxi * c.dxi);
    const cplx res = -psi_xixi + (V(samples[j].xi) - E) * samples[j].psi;
    worst = std::max(worst, std::abs(res) / std::max(local, residual_floor));
  }
  return worst;
}

inline ComplexPotential potential_of(const ModelSpec& model) {
  return [model](cplx xi) { return potential(model, xi); };
}

/// Residual of an emitted level's eigenfunction on a uniform grid of spacing h over [-half_width, half_width].
inline double level_residual(const ModelSpec& model, const Level& level, const ContourSpec& contour,
                             double half_width = 8.0, double h = 1e-3,
                             StencilOrder order = StencilOrder::fourth) {
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half_width / h)) + 1;
  const auto grid = symmetric_grid(half_width, n);
  const auto samples = sample_psi(model, level, contour, grid);
  return residual_check(potential_of(model), level.energy, samples, contour, order);
}

/// The contour a model's eigenfunctions are defined on.
inline ContourSpec natural_contour(const ModelSpec& model, double epsilon) {
  if (std::holds_alternative<HulthenParams>(model)) return ArchContour{epsilon, 10.0};
  return ShiftedLine{epsilon, 12.0};
}

}  // namespace ptspec
