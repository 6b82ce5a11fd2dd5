#pragma once

// Complex integration paths t -> xi(t). Every path exposes xi, dxi/dt and
// d2xi/dt2 so discretizers and residual checks never special-case the shape.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ptspec/errors.hpp"
#include "ptspec/specfun.hpp"

namespace ptspec {

inline constexpr cplx I{0.0, 1.0};

inline void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 2))
    throw error(errc::epsilon_out_of_range,
                "epsilon = " + std::to_string(epsilon) + " is outside (0, pi/2)");
}

struct ContourPoint {
  cplx xi;
  cplx dxi;
  cplx d2xi;
};

/// r(t) = t - i epsilon.
struct ShiftedLine {
  double epsilon = 0.5;
  double L = 12.0;

  ContourPoint at(double t) const { return {cplx(t, -epsilon), 1.0, 0.0}; }
};

/// Image of the shifted line under sinh r = -i exp(i xi):
/// xi(t) = v(t) - i u(t), v = arctan(tanh t / tan eps), u = ln(sinh^2 t + sin^2 eps) / 2.
struct ArchContour {
  double epsilon = 0.5;
  double L = 10.0;

  ContourPoint at(double t) const;
};

using ContourSpec = std::variant<ShiftedLine, ArchContour>;

inline ContourPoint evaluate(const ContourSpec& contour, double t) {
  return std::visit([t](const auto& c) { return c.at(t); }, contour);
}

inline double contour_epsilon(const ContourSpec& contour) {
  return std::visit([](const auto& c) { return c.epsilon; }, contour);
}

inline double contour_half_length(const ContourSpec& contour) {
  return std::visit([](const auto& c) { return c.L; }, contour);
}

inline cplx arch_point(double t, double epsilon) {
  require_epsilon(epsilon);
  const double v = std::atan(std::tanh(t) / std::tan(epsilon));
  const double s = std::sin(epsilon);
  double u = 0.0;
  const double at = std::abs(t);
  if (at < 1.0) {
    const double sh = std::sinh(t);
    u = 0.5 * std::log(sh * sh + s * s);
  } else {
    // sinh^2 t = e^{2|t|} (1 - e^{-2|t|})^2 / 4, kept finite for large |t|.
    const double decay = std::exp(-2.0 * at);
    u = at - std::numbers::ln2 +
        0.5 * std::log((1.0 - decay) * (1.0 - decay) + 4.0 * s * s * decay);
  }
  return {v, -u};
}

inline ContourPoint ArchContour::at(double t) const {
  const cplx r(t, -epsilon);
  const cplx sh = std::sinh(r);
  return {arch_point(t, epsilon), -I * std::cosh(r) / sh, I / (sh * sh)};
}

/// r(xi) and its first three derivatives for the map sinh r = -i exp(i xi).
struct MapDerivatives {
  cplx r;
  cplx r1;
  cplx r2;
  cplx r3;
};

/// Closed-form derivatives of the Liouville map.
///
/// r is the principal arcsinh of -i e^{i xi}. On the arch of any epsilon in
/// (0, pi/2) this branch is continuous in t and returns exactly t - i epsilon,
/// because the shifted line lies inside the principal strip |Im r| < pi/2.
inline MapDerivatives liouville_derivatives(cplx xi) {
  const cplx q = std::exp(2.0 * I * xi);
  const cplx cosh_sq = 1.0 - q;
  if (std::abs(cosh_sq) < 1e-12)
    throw error(errc::singular_point, "exp(2 i xi) = 1, cosh r vanishes");
  const cplx r = std::asinh(-I * std::exp(I * xi));
  const cplx r1 = I * std::tanh(r);
  const cplx r2 = I * r1 / cosh_sq;
  const cplx r3 = I / cosh_sq * (r2 + 2.0 * I * r1 * r1 * r1);
  return {r, r1, r2, r3};
}

/// Uniform grid of n points on [-L, L], exactly antisymmetric in floating point.
inline std::vector<double> symmetric_grid(double L, std::size_t n) {
  if (n < 2) throw error(errc::invalid_argument, "grid needs at least two points");
  const double h = 2.0 * L / static_cast<double>(n - 1);
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j)
    t[j] = (static_cast<double>(j) - 0.5 * static_cast<double>(n - 1)) * h;
  return t;
}

inline void require_symmetric(std::span<const double> grid) {
  const std::size_t n = grid.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double a = grid[j];
    const double b = grid[n - 1 - j];
    if (std::abs(a + b) > 1e-12 * std::max(1.0, std::abs(a)))
      throw error(errc::asymmetric_grid, "grid is not symmetric about 0");
  }
}

/// max_t |xi(-t) + conj(xi(t))| over a symmetric grid.
inline double pt_path_check(const ContourSpec& contour, std::span<const double> grid) {
  require_symmetric(grid);
  require_epsilon(contour_epsilon(contour));
  double worst = 0.0;
  for (double t : grid) {
    const cplx plus = evaluate(contour, t).xi;
    const cplx minus = evaluate(contour, -t).xi;
    worst = std::max(worst, std::abs(minus + std::conj(plus)));
  }
  return worst;
}

}  // namespace ptspec
