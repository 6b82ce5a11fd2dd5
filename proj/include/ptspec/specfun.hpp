#pragma once

// Complex-parameter special functions used by every bound-state eigenfunction:
// terminating Gauss series, Jacobi polynomials, and complex powers whose
// logarithm is continued along an ordered sequence of samples.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptspec/errors.hpp"

namespace ptspec {

using cplx = std::complex<double>;

inline constexpr double integer_tolerance = 1e-12;

/// Returns N when x = -N for an integer N >= 0 (within `tol`), otherwise nullopt.
inline std::optional<int> nonpositive_integer(cplx x, double tol = integer_tolerance) {
  if (std::abs(x.imag()) > tol) return std::nullopt;
  const double nearest = std::round(x.real());
  if (nearest > 0.0 || std::abs(x.real() - nearest) > tol) return std::nullopt;
  return static_cast<int>(-nearest);
}

/// Rising factorial (x)_k by running product.
inline cplx pochhammer(cplx x, int k) {
  cplx out = 1.0;
  for (int j = 0; j < k; ++j) out *= x + static_cast<double>(j);
  return out;
}

struct GaussParams {
  cplx a;
  cplx b;
  cplx c;
  cplx z;
};

namespace detail {

// Degree of the terminating series, taken from whichever of a, b cuts it first.
inline int termination_degree(const GaussParams& p) {
  const auto na = nonpositive_integer(p.a);
  const auto nb = nonpositive_integer(p.b);
  if (!na && !nb)
    throw error(errc::non_terminating, "neither a nor b is a non-positive integer");
  if (na && nb) return std::min(*na, *nb);
  return na ? *na : *nb;
}

}  // namespace detail

/// Sum_{k=0}^{N} (a)_k (b)_k / ((c)_k k!) z^k where a or b equals -N.
/// `n_terms` must be N + 1.
inline cplx gauss2f1_terminating(const GaussParams& p, int n_terms) {
  const int degree = detail::termination_degree(p);
  if (n_terms != degree + 1)
    throw error(errc::invalid_argument, "n_terms = " + std::to_string(n_terms) +
                                            " but the series terminates after " +
                                            std::to_string(degree + 1) + " terms");
  // (c)_k appears as a denominator for k = 1..N.
  for (int j = 0; j < degree; ++j) {
    if (std::abs(p.c + static_cast<double>(j)) < integer_tolerance)
      throw error(errc::pole_in_c, "(c)_k vanishes at k = " + std::to_string(j + 1));
  }
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 0; k < degree; ++k) {
    const double kd = static_cast<double>(k);
    term *= (p.a + kd) * (p.b + kd) / ((p.c + kd) * (kd + 1.0)) * p.z;
    sum += term;
  }
  return sum;
}

inline cplx gauss2f1_terminating(const GaussParams& p) {
  return gauss2f1_terminating(p, detail::termination_degree(p) + 1);
}

namespace detail {

// Generalized binomial C(x, m) as a polynomial in x; finite for any complex x.
inline cplx binomial(cplx x, int m) {
  cplx out = 1.0;
  for (int j = 0; j < m; ++j) out *= (x - static_cast<double>(j)) / static_cast<double>(j + 1);
  return out;
}

inline cplx jacobi_explicit_sum(int n, cplx alpha, cplx beta, cplx z) {
  const cplx lower = (z - 1.0) / 2.0;
  const cplx upper = (z + 1.0) / 2.0;
  const double nd = static_cast<double>(n);
  cplx sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += binomial(nd + alpha, n - k) * binomial(nd + beta, k) * std::pow(lower, k) *
           std::pow(upper, n - k);
  }
  return sum;
}

}  // namespace detail

/// Jacobi polynomial P_n^{(alpha, beta)}(z) for complex parameters.
///
/// Uses the three-term recurrence. The recurrence divides by
/// 2n(n+alpha+beta)(2n+alpha+beta-2), which vanishes for isolated parameter
/// values; there the finite binomial sum is used instead, so the function is
/// defined for all arguments.
inline cplx jacobi_poly(int n, cplx alpha, cplx beta, cplx z) {
  if (n < 0) throw error(errc::invalid_argument, "Jacobi degree must be >= 0");
  if (n == 0) return 1.0;
  const cplx p1 = (alpha - beta) / 2.0 + (alpha + beta + 2.0) * z / 2.0;
  if (n == 1) return p1;

  const cplx ab = alpha + beta;
  cplx prev = 1.0;
  cplx curr = p1;
  for (int k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const cplx s = 2.0 * kd + ab;
    const cplx denom = 2.0 * kd * (kd + ab) * (s - 2.0);
    if (std::abs(denom) < 1e-12) return detail::jacobi_explicit_sum(n, alpha, beta, z);
    const cplx lin = (s - 1.0) * (alpha * alpha - beta * beta);
    const cplx cub = (s - 2.0) * (s - 1.0) * s;
    const cplx back = 2.0 * (kd + alpha - 1.0) * (kd + beta - 1.0) * s;
    const cplx next = ((lin + cub * z) * curr - back * prev) / denom;
    prev = curr;
    curr = next;
  }
  return curr;
}

/// base^exponent with the logarithm's phase continued along the sequence.
///
/// The phase is pinned to the principal branch at `anchor` and unwrapped
/// outward in both directions. Consecutive samples must differ in argument by
/// less than `max_step` (modulo 2 pi) so the continuation is unambiguous.
inline std::vector<cplx> complex_power_tracked(std::span<const cplx> base, cplx exponent,
                                               std::size_t anchor,
                                               double max_step = std::numbers::pi) {
  const std::size_t n = base.size();
  if (n == 0) return {};
  if (anchor >= n) throw error(errc::invalid_argument, "anchor index outside the sample range");
  for (std::size_t k = 0; k < n; ++k) {
    if (base[k] == cplx(0.0, 0.0))
      throw error(errc::zero_base, "sample " + std::to_string(k) + " is zero");
  }

  std::vector<double> phase(n);
  phase[anchor] = std::arg(base[anchor]);
  auto step = [&](std::size_t from, std::size_t to) {
    const double jump = std::remainder(std::arg(base[to]) - std::arg(base[from]),
                                       2.0 * std::numbers::pi);
    if (std::abs(jump) >= max_step * (1.0 - 1e-12))
      throw error(errc::phase_jump, "argument changes by " + std::to_string(jump) +
                                        " between samples " + std::to_string(from) +
                                        " and " + std::to_string(to));
    phase[to] = phase[from] + jump;
  };
  for (std::size_t k = anchor + 1; k < n; ++k) step(k - 1, k);
  for (std::size_t k = anchor; k-- > 0;) step(k + 1, k);

  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx log_base(std::log(std::abs(base[k])), phase[k]);
    out[k] = std::exp(exponent * log_base);
  }
  return out;
}

/// Index of the sample whose parameter is closest to zero.
inline std::size_t index_nearest_zero(std::span<const double> t) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < t.size(); ++k)
    if (std::abs(t[k]) < std::abs(t[best])) best = k;
  return best;
}

}  // namespace ptspec
