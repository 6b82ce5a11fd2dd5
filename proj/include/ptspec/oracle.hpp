#pragma once

// Independent numerical check of the closed-form spectra: three-point finite
// differences of -d^2/dt^2 + V(t - i eps) with Dirichlet ends at +-L, and
// shift-invert iteration seeded at each analytic energy.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ptspec/contour.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"
#include "ptspec/spectra.hpp"
#include "ptspec/wavefun.hpp"

namespace ptspec {

inline constexpr std::uint64_t default_seed = 20080308;

/// n interior nodes on (-L, L), spacing h = 2L / (n + 1).
struct GridSpec {
  double L = 12.0;
  int n = 1500;

  double h() const { return 2.0 * L / (n + 1); }

  std::vector<double> nodes() const {
    std::vector<double> t(static_cast<std::size_t>(n));
    const double c = 0.5 * (n + 1);
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = (j + 1 - c) * h();
    return t;
  }

  static GridSpec with_spacing(double L, double h) {
    return {L, static_cast<int>(std::llround(2.0 * L / h)) - 1};
  }
};

/// Complex symmetric tridiagonal matrix with constant off-diagonal.
struct TridiagonalOperator {
  std::vector<cplx> diag;
  cplx offdiag;
  std::vector<double> t;
  double h = 0.0;

  std::size_t size() const { return diag.size(); }

  std::vector<cplx> apply(std::span<const cplx> x) const {
    const std::size_t n = size();
    std::vector<cplx> y(n);
    for (std::size_t j = 0; j < n; ++j) {
      y[j] = diag[j] * x[j];
      if (j > 0) y[j] += offdiag * x[j - 1];
      if (j + 1 < n) y[j] += offdiag * x[j + 1];
    }
    return y;
  }
};

inline TridiagonalOperator discretize(const ComplexPotential& V, const ShiftedLine& contour,
                                      const GridSpec& grid) {
  require_epsilon(contour.epsilon);
  if (grid.n < 100) throw error(errc::grid_too_coarse, "finite-difference grid needs n >= 100");
  TridiagonalOperator op;
  op.h = grid.h();
  op.t = grid.nodes();
  op.offdiag = -1.0 / (op.h * op.h);
  op.diag.resize(op.t.size());
  for (std::size_t j = 0; j < op.t.size(); ++j) {
    cplx value;
    try {
      value = V(contour.at(op.t[j]).xi);
    } catch (const error& e) {
      if (e.code() != errc::singular_point) throw;
      throw error(errc::singular_potential_on_grid, "potential is singular at t = " + std::to_string(op.t[j]));
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      throw error(errc::singular_potential_on_grid, "potential is not finite at t = " + std::to_string(op.t[j]));
    op.diag[j] = 2.0 / (op.h * op.h) + value;
  }
  return op;
}

inline TridiagonalOperator discretize(const ModelSpec& model, const ShiftedLine& contour,
                                      const GridSpec& grid) {
  validate(model);
  if (std::holds_alternative<HulthenParams>(model))
    throw error(errc::invalid_argument,
                "the Hulthen model lives on the arch; verify it with the residual method");
  return discretize(potential_of(model), contour, grid);
}

/// max entry of H - conj(J H J) with J the index reflection.
inline double pt_commutator_norm(const TridiagonalOperator& op) {
  const std::size_t n = op.size();
  double worst = std::abs(op.offdiag - std::conj(op.offdiag));
  for (std::size_t j = 0; j < n; ++j)
    worst = std::max(worst, std::abs(op.diag[j] - std::conj(op.diag[n - 1 - j])));
  return worst;
}

/// LU factors of a general tridiagonal matrix with row interchanges; same
/// elimination order as LAPACK's gttrf.
class TridiagonalLU {
 public:
  /// Returns nullopt when a pivot vanishes exactly.
  static std::optional<TridiagonalLU> factor(const TridiagonalOperator& op, cplx shift) {
    const std::size_t n = op.size();
    TridiagonalLU lu;
    lu.d_.resize(n);
    for (std::size_t j = 0; j < n; ++j) lu.d_[j] = op.diag[j] - shift;
    lu.dl_.assign(n > 0 ? n - 1 : 0, op.offdiag);
    lu.du_.assign(n > 0 ? n - 1 : 0, op.offdiag);
    lu.du2_.assign(n > 1 ? n - 2 : 0, cplx(0.0));
    lu.swapped_.assign(n > 0 ? n - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(lu.d_[i]) >= std::abs(lu.dl_[i])) {
        if (lu.d_[i] == cplx(0.0)) return std::nullopt;
        const cplx fact = lu.dl_[i] / lu.d_[i];
        lu.dl_[i] = fact;
        lu.d_[i + 1] -= fact * lu.du_[i];
      } else {
        const cplx fact = lu.d_[i] / lu.dl_[i];
        lu.d_[i] = lu.dl_[i];
        lu.dl_[i] = fact;
        const cplx temp = lu.du_[i];
        lu.du_[i] = lu.d_[i + 1];
        lu.d_[i + 1] = temp - fact * lu.d_[i + 1];
        if (i + 2 < n) {
          lu.du2_[i] = lu.du_[i + 1];
          lu.du_[i + 1] = -fact * lu.du_[i + 1];
        }
        lu.swapped_[i] = true;
      }
    }
    for (const auto& p : lu.d_)
      if (p == cplx(0.0) || !std::isfinite(std::abs(p))) return std::nullopt;
    return lu;
  }

  void solve_in_place(std::vector<cplx>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const cplx temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n < 2 ? 0 : n - 2; i-- > 0;)
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  }

 private:
  std::vector<cplx> d_, dl_, du_, du2_;
  std::vector<bool> swapped_;
};

struct EigenResult {
  cplx E;
  int iterations = 0;
  cplx shift_used;
  std::vector<cplx> vector;
};

namespace detail {

inline cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
  return s;
}

inline void normalize(std::vector<cplx>& x) {
  const double nrm = std::sqrt(dotc(x, x).real());
  for (auto& v : x) v /= nrm;
}

}  // namespace detail

/// Inverse iteration on (H - shift)^{-1}, converging to the eigenvalue nearest
/// the shift, finished with a Rayleigh quotient on the last iterate.
inline EigenResult shift_invert_eigen(const TridiagonalOperator& op, cplx shift, int max_iter = 200,
                                      double tol = 1e-12, std::uint64_t seed = default_seed) {
  const std::size_t n = op.size();
  if (n == 0) throw error(errc::invalid_argument, "empty operator");
  auto lu = TridiagonalLU::factor(op, shift);
  if (!lu) {
    shift += 1e-8 * cplx(1.0, 1.0);
    lu = TridiagonalLU::factor(op, shift);
    if (!lu) throw error(errc::lu_breakdown, "tridiagonal LU broke down at the shift and its perturbation");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(normal(rng), normal(rng));
  detail::normalize(x);

  cplx estimate = shift;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<cplx> y = x;
    lu->solve_in_place(y);
    // y ~ x / (lambda - shift)
    const cplx next = shift + 1.0 / detail::dotc(x, y);
    x = std::move(y);
    detail::normalize(x);
    const bool converged = it > 1 && std::abs(next - estimate) <= tol * std::max(1.0, std::abs(next));
    estimate = next;
    if (converged) {
      const auto hx = op.apply(x);
      return {detail::dotc(x, hx), it, shift, std::move(x)};
    }
  }
  throw error(errc::no_convergence,
              "inverse iteration did not converge in " + std::to_string(max_iter) + " iterations");
}

/// Full spectrum through a dense complex eigensolver; a debug path for small n.
inline std::vector<cplx> dense_eigenvalues(const TridiagonalOperator& op) {
  const std::size_t n = op.size();
  if (n > 400) throw error(errc::invalid_argument, "dense mode is limited to n <= 400");
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    H(k, k) = op.diag[j];
    if (j + 1 < n) H(k, k + 1) = H(k + 1, k) = op.offdiag;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(H, false);
  std::vector<cplx> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return out;
}

/// Exact eigenvalues of the free discrete operator: (2/h^2)(1 - cos(m pi / (n + 1))).
inline double free_discrete_eigenvalue(const GridSpec& grid, int m) {
  const double h = grid.h();
  return 2.0 * (1.0 - std::cos(m * std::numbers::pi / (grid.n + 1))) / (h * h);
}

struct LevelCheck {
  Level level;
  std::optional<cplx> numeric;
  std::optional<int> iterations;
  std::optional<double> residual;
  double abs_error = 0.0;
  bool passed = false;
  std::string diagnostic;
};

struct VerificationReport {
  std::string method;
  double tolerance = 0.0;
  double max_abs_imag = 0.0;
  std::optional<double> convergence_slope;
  std::vector<LevelCheck> levels;
  std::string note =
      "tolerances follow finite-difference theory; no reference numerics exist for these models";

  bool all_passed() const {
    return std::all_of(levels.begin(), levels.end(), [](const LevelCheck& c) { return c.passed; });
  }
  int n_passed() const {
    return static_cast<int>(std::count_if(levels.begin(), levels.end(), [](const LevelCheck& c) { return c.passed; }));
  }
};

/// Seeds shift-invert at each analytic energy; a level passes when the
/// converged eigenvalue is within tol of it and has |Im E| < tol.
inline VerificationReport match_levels(const Spectrum& spectrum, const TridiagonalOperator& op,
                                       double tol, std::uint64_t seed = default_seed,
                                       int max_iter = 200) {
  VerificationReport report;
  report.method = "fd";
  report.tolerance = tol;
  for (const auto& level : spectrum.levels) {
    LevelCheck check;
    check.level = level;
    try {
      const EigenResult r = shift_invert_eigen(op, level.energy, max_iter, 1e-12, seed);
      check.numeric = r.E;
      check.iterations = r.iterations;
      check.abs_error = std::abs(r.E - level.energy);
      report.max_abs_imag = std::max(report.max_abs_imag, std::abs(r.E.imag()));
      check.passed = check.abs_error < tol && std::abs(r.E.imag()) < tol;
      if (!check.passed) {
        check.diagnostic = check.abs_error >= tol ? "converged to an eigenvalue away from the analytic value"
                                                  : "imaginary part above tolerance";
      }
    } catch (const error& e) {
      check.passed = false;
      check.diagnostic = e.what();
    }
    report.levels.push_back(std::move(check));
  }
  return report;
}

/// Residual verification of every emitted level on its natural contour.
inline VerificationReport residual_levels(const Spectrum& spectrum, const ContourSpec& contour,
                                          double tol, double half_width = 8.0, double h = 1e-3) {
  VerificationReport report;
  report.method = "residual";
  report.tolerance = tol;
  for (const auto& level : spectrum.levels) {
    LevelCheck check;
    check.level = level;
    try {
      const double res = level_residual(spectrum.model, level, contour, half_width, h);
      check.residual = res;
      check.passed = res < tol;
      if (!check.passed) check.diagnostic = "residual above tolerance";
    } catch (const error& e) {
      check.diagnostic = e.what();
    }
    report.levels.push_back(std::move(check));
  }
  return report;
}

struct ConvergenceResult {
  double slope = 0.0;
  std::vector<double> h;
  std::vector<double> abs_error;
};

/// Least-squares slope of log|E_h - exact| against log h.
inline ConvergenceResult convergence_study(const ComplexPotential& V, const ShiftedLine& contour,
                                           double exact, cplx shift, std::span<const double> h_list,
                                           double L = 12.0, double loose_tol = 0.5,
                                           std::uint64_t seed = default_seed) {
  if (h_list.size() < 3) throw error(errc::invalid_argument, "convergence study needs >= 3 resolutions");
  ConvergenceResult out;
  for (double h : h_list) {
    const GridSpec grid = GridSpec::with_spacing(L, h);
    const auto op = discretize(V, contour, grid);
    const EigenResult r = shift_invert_eigen(op, shift, 500, 1e-13, seed);
    const double err = std::abs(r.E - exact);
    if (!(err < loose_tol))
      throw error(errc::no_convergence, "resolution h = " + std::to_string(h) + " misses the level by " + std::to_string(err));
    out.h.push_back(grid.h());
    out.abs_error.push_back(err);
  }
  double mx = 0.0, my = 0.0;
  const double m = static_cast<double>(out.h.size());
  for (std::size_t k = 0; k < out.h.size(); ++k) {
    mx += std::log(out.h[k]) / m;
    my += std::log(out.abs_error[k]) / m;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < out.h.size(); ++k) {
    const double dx = std::log(out.h[k]) - mx;
    sxy += dx * (std::log(out.abs_error[k]) - my);
    sxx += dx * dx;
  }
  out.slope = sxy / sxx;
  return out;
}

inline ConvergenceResult convergence_study(const ModelSpec& model, const ShiftedLine& contour,
                                           const Level& level, std::span<const double> h_list,
                                           double L = 12.0) {
  require_level(model, level);
  return convergence_study(potential_of(model), contour, level.energy, level.energy, h_list, L);
}

}  // namespace ptspec
