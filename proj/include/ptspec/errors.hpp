#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptspec {

enum class errc {
  invalid_argument,
  non_terminating,
  pole_in_c,
  zero_base,
  phase_jump,
  epsilon_out_of_range,
  singular_point,
  asymmetric_grid,
  index_out_of_range,
  outside_family,
  degenerate_beta,
  level_mismatch,
  grid_too_coarse,
  singular_potential_on_grid,
  lu_breakdown,
  no_convergence,
  vanishing_jacobian,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::non_terminating: return "NonTerminating";
    case errc::pole_in_c: return "PoleInC";
    case errc::zero_base: return "ZeroBase";
    case errc::phase_jump: return "PhaseJump";
    case errc::epsilon_out_of_range: return "EpsilonOutOfRange";
    case errc::singular_point: return "SingularPoint";
    case errc::asymmetric_grid: return "AsymmetricGrid";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::outside_family: return "OutsideFamily";
    case errc::degenerate_beta: return "DegenerateBeta";
    case errc::level_mismatch: return "LevelMismatch";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::singular_potential_on_grid: return "SingularPotentialOnGrid";
    case errc::lu_breakdown: return "LUBreakdown";
    case errc::no_convergence: return "NoConvergence";
    case errc::vanishing_jacobian: return "VanishingJacobian";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers what failed.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace ptspec
