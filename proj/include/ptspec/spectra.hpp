#pragma once

// Closed-form bound-state enumeration for the three models.
//
// Family boundaries are strict: a level sitting exactly on 2N+1 = -(sigma alpha
// + tau beta), kappa = 0 or N = A - 1 is not normalizable and is dropped.
// Eckart levels need D = A - N - 1 above integer_tolerance, so that a sweep
// value like 3.0000000000000004 does not emit E ~ 1e31.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"
#include "ptspec/specfun.hpp"

namespace ptspec {

struct Level {
  ModelKind model = ModelKind::eckart;
  int N = 0;
  std::optional<int> sigma;
  std::optional<int> tau;
  double energy = 0.0;
  std::map<std::string, cplx> internal;

  cplx param(const std::string& name) const {
    const auto it = internal.find(name);
    if (it == internal.end())
      throw error(errc::invalid_argument, "level has no internal parameter '" + name + "'");
    return it->second;
  }
};

struct Spectrum {
  ModelSpec model;
  std::vector<Level> levels;
  std::map<std::string, int> family_counts;
  std::vector<std::string> notes;

  bool empty() const { return levels.empty(); }

  /// Levels merged across families, lowest energy first.
  std::vector<Level> by_energy() const {
    std::vector<Level> out = levels;
    std::stable_sort(out.begin(), out.end(),
                     [](const Level& a, const Level& b) { return a.energy < b.energy; });
    return out;
  }
};

inline std::string sign_char(std::optional<int> s) {
  if (!s) return "none";
  return *s > 0 ? "+" : "-";
}

inline std::string family_key(std::optional<int> sigma, std::optional<int> tau) {
  if (!sigma && !tau) return "all";
  return "(" + sign_char(sigma) + "," + sign_char(tau) + ")";
}

/// (sigma, tau) in enumeration order.
inline constexpr std::array<std::pair<int, int>, 4> quasi_parities{
    {{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}}};

// ---------------------------------------------------------------- Eckart

inline double eckart_energy(double A, double beta, int N) {
  const double D = A - N - 1.0;
  return -D * D + beta * beta / (D * D);
}

inline Spectrum eckart_levels(const EckartParams& p) {
  validate(p);
  Spectrum out{p, {}, {}, {}};
  for (int N = 0; p.A - N - 1.0 > integer_tolerance; ++N) {
    const double D = p.A - N - 1.0;
    // u + v = D, u - v = -i beta / D
    const cplx diff(0.0, -p.beta / D);
    const cplx u = 0.5 * (D + diff);
    const cplx v = 0.5 * (D - diff);
    Level level;
    level.model = ModelKind::eckart;
    level.N = N;
    level.energy = eckart_energy(p.A, p.beta, N);
    level.internal = {{"D", D},
                      {"u", u},
                      {"v", v},
                      {"a", 2.0 * p.A - N - 1.0},
                      {"b", static_cast<double>(-N)},
                      {"c", 1.0 + 2.0 * u}};
    out.levels.push_back(std::move(level));
  }
  out.family_counts["all"] = static_cast<int>(out.levels.size());
  if (out.levels.empty()) out.notes.push_back("no N >= 0 satisfies N < A - 1");
  return out;
}

/// E_N - E_{N-1} in closed form, (2D + 1)(1 + beta^2 / (D^2 (D+1)^2)) with D = A - N - 1.
inline double eckart_gap(const EckartParams& p, int N) {
  const int count = static_cast<int>(eckart_levels(p).levels.size());
  if (N < 1 || N > count - 1)
    throw error(errc::index_out_of_range,
                "gap index " + std::to_string(N) + " outside [1, " + std::to_string(count - 1) + "]");
  const double D = p.A - N - 1.0;
  return (2.0 * D + 1.0) * (1.0 + p.beta * p.beta / (D * D * (D + 1.0) * (D + 1.0)));
}

// ---------------------------------------------------------------- Poschl-Teller

inline double pt_energy(double alpha, double beta, int sigma, int tau, int N) {
  const double k = 2.0 * N + 1.0 + sigma * alpha + tau * beta;
  return -k * k;
}

inline Level make_pt_level(double alpha, double beta, int sigma, int tau, int N) {
  const double shift = sigma * alpha + tau * beta;
  Level level;
  level.model = ModelKind::poschl_teller;
  level.N = N;
  level.sigma = sigma;
  level.tau = tau;
  level.energy = pt_energy(alpha, beta, sigma, tau, N);
  level.internal = {{"mu", 0.5 * (tau * beta + 0.5)},
                    {"nu", 0.5 * (sigma * alpha + 0.5)},
                    {"a", N + 1.0 + shift},
                    {"b", static_cast<double>(-N)},
                    {"c", tau * beta + 1.0},
                    {"kappa", -(2.0 * N + 1.0 + shift)}};
  return level;
}

inline Spectrum pt_levels(const PTParams& p) {
  validate(p);
  Spectrum out{p, {}, {}, {}};
  for (const auto& [sigma, tau] : quasi_parities) {
    const double bound = -(sigma * p.alpha + tau * p.beta);
    int count = 0;
    for (int N = 0; bound - (2.0 * N + 1.0) > integer_tolerance; ++N, ++count)
      out.levels.push_back(make_pt_level(p.alpha, p.beta, sigma, tau, N));
    out.family_counts[family_key(sigma, tau)] = count;
  }
  if (out.levels.empty()) out.notes.push_back("all families empty");
  return out;
}

/// -(2N + 1 + sigma alpha + tau beta)^2 for complex couplings.
inline cplx pt_levels_complex(cplx alpha, cplx beta, int sigma, int tau, int N) {
  const cplx shift = static_cast<double>(sigma) * alpha + static_cast<double>(tau) * beta;
  if (!(2.0 * N + 1.0 < -shift.real()))
    throw error(errc::outside_family, "2N+1 >= -Re(sigma alpha + tau beta)");
  const cplx k = 2.0 * N + 1.0 + shift;
  return -k * k;
}

// ---------------------------------------------------------------- Hulthen

inline Spectrum hulthen_levels(const HulthenParams& p) {
  validate(p);
  Spectrum out{p, {}, {}, {}};
  for (const auto& [sigma, tau] : quasi_parities) out.family_counts[family_key(sigma, tau)] = 0;

  // kappa > 0 needs s^2 < -C for s > 0; s < 0 only occurs for n < (alpha - 1)/2.
  const int n_last = static_cast<int>(std::ceil(std::sqrt(std::abs(p.C)) + p.alpha + 1.0));
  std::vector<Level> found;
  for (int sigma : {-1, +1}) {
    for (int n = 0; n <= n_last; ++n) {
      const double s = sigma * p.alpha + 2.0 * n + 1.0;
      const std::string where = "(sigma=" + std::to_string(sigma) + ", n=" + std::to_string(n) + ")";
      if (std::abs(s) < integer_tolerance) {
        out.notes.push_back(where + " rejected: s = 0");
        continue;
      }
      const double kappa = -0.5 * (s + p.C / s);
      if (!(kappa > 0.0)) continue;
      const double tau_beta = 0.5 * (p.C / s - s);
      if (std::abs(tau_beta) < integer_tolerance) {
        out.notes.push_back(where + " rejected: DegenerateBeta (tau beta = 0)");
        continue;
      }
      const double closed = p.C + 0.25 * (s - p.C / s) * (s - p.C / s);
      Level level;
      level.model = ModelKind::hulthen;
      level.N = n;
      level.sigma = sigma;
      level.tau = tau_beta > 0.0 ? +1 : -1;
      level.energy = kappa * kappa;
      level.internal = {{"kappa", kappa},
                        {"beta_eff", std::abs(tau_beta)},
                        {"s", s},
                        {"energy_closed_form", closed}};
      found.push_back(std::move(level));
    }
  }
  // Family order, then N.
  auto rank = [](const Level& l) {
    for (std::size_t k = 0; k < quasi_parities.size(); ++k)
      if (quasi_parities[k].first == *l.sigma && quasi_parities[k].second == *l.tau)
        return static_cast<int>(k);
    return 4;
  };
  std::stable_sort(found.begin(), found.end(), [&](const Level& a, const Level& b) {
    return std::pair(rank(a), a.N) < std::pair(rank(b), b.N);
  });
  for (const auto& level : found) ++out.family_counts[family_key(level.sigma, level.tau)];
  out.levels = std::move(found);
  if (out.levels.empty()) out.notes.push_back("no (sigma, n) gives kappa > 0");
  return out;
}

/// The Poschl-Teller problem a Hulthen level is the Liouville image of.
inline PTParams hulthen_partner(const HulthenParams& p, const Level& level, double epsilon) {
  return {p.alpha, level.param("beta_eff").real(), epsilon};
}

inline Spectrum levels(const ModelSpec& model) {
  return std::visit(
      [](const auto& p) -> Spectrum {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, EckartParams>) return eckart_levels(p);
        else if constexpr (std::is_same_v<P, PTParams>) return pt_levels(p);
        else return hulthen_levels(p);
      },
      model);
}

/// Throws LevelMismatch unless `level` is one the closed form emits for `model`.
inline void require_level(const ModelSpec& model, const Level& level) {
  if (kind_of(model) != level.model)
    throw error(errc::level_mismatch, "level belongs to a different model");
  for (const auto& candidate : levels(model).levels) {
    if (candidate.N == level.N && candidate.sigma == level.sigma && candidate.tau == level.tau &&
        std::abs(candidate.energy - level.energy) <= 1e-9 * std::max(1.0, std::abs(level.energy)))
      return;
  }
  throw error(errc::level_mismatch, "level (N=" + std::to_string(level.N) +
                                        ") is not in the spectrum of these parameters");
}

}  // namespace ptspec
