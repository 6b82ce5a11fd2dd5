#pragma once

// The three PT-symmetric potentials: Eckart with imaginary coupling,
// regularized Poschl-Teller, and the arch-contour Hulthen form.
// Units: hbar = 2m = 1, so H = -d^2/dxi^2 + V(xi).

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <type_traits>
#include <variant>

#include "ptspec/contour.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/specfun.hpp"

namespace ptspec {

inline constexpr double singular_tolerance = 1e-12;

/// A(A-1)/sinh^2 r - 2 i beta coth r.
struct EckartParams {
  double A = 0.0;
  double beta = 0.0;

  cplx B() const { return {0.0, beta}; }
};

/// (beta^2 - 1/4)/sinh^2 r - (alpha^2 - 1/4)/cosh^2 r on r = x - i epsilon.
struct PTParams {
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.5;

  double A() const { return alpha - 0.5; }
  double B() const { return beta + 0.5; }
};

/// A/(1 - e^{2 i xi})^2 + B/(1 - e^{2 i xi}) with A = 1 - alpha^2 and C = A + B.
struct HulthenParams {
  double alpha = 0.0;
  double C = 0.0;

  double A() const { return 1.0 - alpha * alpha; }
  double B() const { return C - A(); }
};

using ModelSpec = std::variant<EckartParams, PTParams, HulthenParams>;

enum class ModelKind { eckart, poschl_teller, hulthen };

inline ModelKind kind_of(const ModelSpec& model) {
  return static_cast<ModelKind>(model.index());
}

inline const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::eckart: return "eckart";
    case ModelKind::poschl_teller: return "pt";
    case ModelKind::hulthen: return "hulthen";
  }
  return "unknown";
}

inline void validate(const EckartParams& p) {
  if (!std::isfinite(p.A) || !std::isfinite(p.beta))
    throw error(errc::invalid_argument, "Eckart A and beta must be finite");
}

inline void validate(const PTParams& p) {
  if (!(p.alpha > 0.0)) throw error(errc::invalid_argument, "Poschl-Teller alpha must be > 0");
  if (!(p.beta > 0.0)) throw error(errc::invalid_argument, "Poschl-Teller beta must be > 0");
  require_epsilon(p.epsilon);
}

inline void validate(const HulthenParams& p) {
  if (!(p.alpha > 0.0)) throw error(errc::invalid_argument, "Hulthen alpha must be > 0");
  if (!std::isfinite(p.C)) throw error(errc::invalid_argument, "Hulthen C must be finite");
}

inline void validate(const ModelSpec& model) {
  std::visit([](const auto& p) { validate(p); }, model);
}

inline cplx v_eckart(const EckartParams& p, cplx r) {
  const cplx sh = std::sinh(r);
  if (std::abs(sh) < singular_tolerance) throw error(errc::singular_point, "sinh r = 0");
  return p.A * (p.A - 1.0) / (sh * sh) - 2.0 * I * p.beta * std::cosh(r) / sh;
}

inline cplx v_pt(const PTParams& p, cplx r) {
  const cplx sh = std::sinh(r);
  const cplx ch = std::cosh(r);
  if (std::abs(sh) < singular_tolerance || std::abs(ch) < singular_tolerance)
    throw error(errc::singular_point, "sinh r or cosh r vanishes");
  return (p.beta * p.beta - 0.25) / (sh * sh) - (p.alpha * p.alpha - 0.25) / (ch * ch);
}

inline cplx v_hulthen(const HulthenParams& p, cplx xi) {
  const cplx d = 1.0 - std::exp(2.0 * I * xi);
  if (std::abs(d) < singular_tolerance)
    throw error(errc::singular_point, "exp(2 i xi) = 1");
  return p.A() / (d * d) + p.B() / d;
}

inline cplx potential(const ModelSpec& model, cplx xi) {
  return std::visit(
      [xi](const auto& p) -> cplx {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, EckartParams>) return v_eckart(p, xi);
        else if constexpr (std::is_same_v<P, PTParams>) return v_pt(p, xi);
        else return v_hulthen(p, xi);
      },
      model);
}

/// max_t |V(xi(-t)) - conj(V(xi(t)))| over a symmetric grid.
inline double pt_symmetry_check(const ModelSpec& model, const ContourSpec& contour,
                                std::span<const double> grid) {
  require_symmetric(grid);
  double worst = 0.0;
  for (double t : grid) {
    const cplx plus = potential(model, evaluate(contour, t).xi);
    const cplx minus = potential(model, evaluate(contour, -t).xi);
    worst = std::max(worst, std::abs(minus - std::conj(plus)));
  }
  return worst;
}

struct InverseSquareExpansion {
  cplx exact;
  cplx first_order;
};

/// 1/sinh^2(t - i eps) against its first-order expansion in eps.
inline InverseSquareExpansion sinh_inverse_square_expansion(double t, double epsilon) {
  if (t == 0.0) throw error(errc::singular_point, "expansion is singular at t = 0");
  const cplx sh = std::sinh(cplx(t, -epsilon));
  const double s = std::sinh(t);
  const double c = std::cosh(t);
  return {1.0 / (sh * sh), 1.0 / (s * s) + 2.0 * I * epsilon * c / (s * s * s)};
}

}  // namespace ptspec
