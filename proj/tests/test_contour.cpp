#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "ptspec/contour.hpp"

using namespace ptspec;

namespace {

template <class F>
errc code_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ptspec::error thrown";
  return errc::invalid_argument;
}

}  // namespace

TEST(ShiftedLine, PointAndDerivatives) {
  const ShiftedLine line{0.5, 12.0};
  const auto p = line.at(1.25);
  EXPECT_EQ(p.xi, cplx(1.25, -0.5));
  EXPECT_EQ(p.dxi, cplx(1.0));
  EXPECT_EQ(p.d2xi, cplx(0.0));
  EXPECT_EQ(ShiftedLine{}.L, 12.0);
  EXPECT_EQ(ArchContour{}.L, 10.0);
}

TEST(ArchPoint, Apex) {
  const cplx xi = arch_point(0.0, std::numbers::pi / 6);
  EXPECT_NEAR(xi.real(), 0.0, 1e-15);
  EXPECT_NEAR(xi.imag(), std::log(2.0), 1e-14);
}

TEST(ArchPoint, FarLeg) {
  const double t = 20.0, eps = 0.5;
  const cplx xi = arch_point(t, eps);
  EXPECT_NEAR(xi.real(), std::numbers::pi / 2 - eps, 1e-8);
  EXPECT_NEAR(-xi.imag(), t - std::log(2.0), 1e-12);
  EXPECT_TRUE(std::isfinite(arch_point(400.0, eps).imag()));
}

TEST(ArchPoint, BothFormsOfUAgreeNearTheSwitch) {
  for (double t : {0.999999, 1.0, 1.000001}) {
    const double sh = std::sinh(t), s = std::sin(0.7);
    EXPECT_NEAR(-arch_point(t, 0.7).imag(), 0.5 * std::log(sh * sh + s * s), 1e-14);
  }
}

TEST(ArchPoint, StaysInsideTheStrip) {
  for (double eps : {0.1, 0.5, 1.2})
    for (double t = -10.0; t <= 10.0; t += 0.25) {
      const double v = arch_point(t, eps).real();
      EXPECT_LT(std::abs(v), std::numbers::pi / 2 - eps + 1e-15);
    }
}

TEST(ArchPoint, ApexRisesAsEpsilonShrinks) {
  double previous = -1.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const double apex = arch_point(0.0, eps).imag();
    EXPECT_NEAR(apex, std::log(1.0 / std::sin(eps)), 1e-13);
    EXPECT_GT(apex, previous);
    previous = apex;
  }
}

TEST(ArchContour, DerivativesAgainstFiniteDifferences) {
  const ArchContour arch{0.5, 10.0};
  const double h = 1e-4;
  for (double t : {-3.0, -0.4, 0.0, 0.9, 2.5}) {
    const auto p = arch.at(t);
    const cplx d1 = (arch.at(t + h).xi - arch.at(t - h).xi) / (2 * h);
    const cplx d2 = (arch.at(t + h).xi - 2.0 * p.xi + arch.at(t - h).xi) / (h * h);
    EXPECT_LT(std::abs(p.dxi - d1), 1e-7);
    EXPECT_LT(std::abs(p.d2xi - d2), 1e-5);
  }
}

TEST(ArchContour, IsTheMapImageOfTheShiftedLine) {
  // sinh(t - i eps) = -i exp(i xi(t))
  for (double eps : {0.3, 0.5, 1.2})
    for (double t : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
      const cplx lhs = std::sinh(cplx(t, -eps));
      const cplx rhs = -I * std::exp(I * arch_point(t, eps));
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST(Epsilon, Window) {
  EXPECT_EQ(code_of([] { require_epsilon(0.0); }), errc::epsilon_out_of_range);
  EXPECT_EQ(code_of([] { require_epsilon(std::numbers::pi / 2); }), errc::epsilon_out_of_range);
  EXPECT_EQ(code_of([] { require_epsilon(-0.1); }), errc::epsilon_out_of_range);
  EXPECT_EQ(code_of([] { require_epsilon(std::nan("")); }), errc::epsilon_out_of_range);
  EXPECT_EQ(code_of([] { arch_point(0.0, 2.0); }), errc::epsilon_out_of_range);
  EXPECT_NO_THROW(require_epsilon(1e-6));
}

TEST(LiouvilleDerivatives, AtTheApex) {
  const auto d = liouville_derivatives(arch_point(0.0, 0.5));
  EXPECT_LT(std::abs(d.r - cplx(0.0, -0.5)), 1e-14);
  EXPECT_LT(std::abs(d.r1 - std::tan(0.5)), 1e-14);
}

TEST(LiouvilleDerivatives, RecoversTheShiftedLine) {
  for (double eps : {0.2, 0.5, 1.4})
    for (double t : {-9.0, -2.0, -0.1, 0.0, 1.0, 6.0})
      EXPECT_LT(std::abs(liouville_derivatives(arch_point(t, eps)).r - cplx(t, -eps)), 1e-11);
}

TEST(LiouvilleDerivatives, ClosedFormsAgainstFiniteDifferences) {
  auto r = [](cplx xi) { return liouville_derivatives(xi).r; };
  auto r1 = [](cplx xi) { return liouville_derivatives(xi).r1; };
  auto r2 = [](cplx xi) { return liouville_derivatives(xi).r2; };
  for (cplx xi : {arch_point(0.3, 0.5), arch_point(-1.4, 0.8), cplx(0.2, 0.6)}) {
    const double h = 1e-5;
    const auto d = liouville_derivatives(xi);
    EXPECT_LT(std::abs(d.r1 - (r(xi + h) - r(xi - h)) / (2 * h)), 1e-8);
    EXPECT_LT(std::abs(d.r2 - (r1(xi + h) - r1(xi - h)) / (2 * h)), 1e-7);
    EXPECT_LT(std::abs(d.r3 - (r2(xi + h) - r2(xi - h)) / (2 * h)), 1e-6);
    EXPECT_LT(std::abs(d.r2 - oracle::second_derivative(r, xi)), 1e-5);
  }
}

TEST(LiouvilleDerivatives, SingularWhereCoshVanishes) {
  EXPECT_EQ(code_of([] { liouville_derivatives(0.0); }), errc::singular_point);
  EXPECT_EQ(code_of([] { liouville_derivatives(std::numbers::pi); }), errc::singular_point);
  EXPECT_NO_THROW(liouville_derivatives(cplx(0.0, 1e-3)));
}

TEST(LineEstimates, ModulusIdentities) {
  for (double eps : {0.2, 0.5, 1.3})
    for (double t = -12.0; t <= 12.0; t += 0.5) {
      const cplx r(t, -eps);
      const double sh = std::sinh(t);
      const double scale = std::max(1.0, sh * sh);
      EXPECT_LT(std::abs(std::norm(std::sinh(r)) - (sh * sh + std::pow(std::sin(eps), 2))), 1e-12 * scale);
      EXPECT_LT(std::abs(std::norm(std::cosh(r)) - (sh * sh + std::pow(std::cos(eps), 2))), 1e-12 * scale);
    }
}

TEST(Grid, SymmetricGrid) {
  const auto g = symmetric_grid(10.0, 101);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), -10.0);
  EXPECT_EQ(g.back(), 10.0);
  EXPECT_EQ(g[50], 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(g[j], -g[g.size() - 1 - j]);
  EXPECT_EQ(code_of([] { symmetric_grid(1.0, 1); }), errc::invalid_argument);
}

TEST(PtPath, ShiftedLineIsExact) {
  const auto g = symmetric_grid(12.0, 201);
  EXPECT_EQ(pt_path_check(ShiftedLine{0.5, 12.0}, g), 0.0);
}

TEST(PtPath, Arch) {
  const auto g = symmetric_grid(10.0, 101);
  EXPECT_LT(pt_path_check(ArchContour{0.5, 10.0}, g), 1e-12);
  EXPECT_LT(pt_path_check(ArchContour{1.2, 10.0}, g), 1e-12);
}

TEST(PtPath, Errors) {
  const std::vector<double> lopsided{-1.0, 0.0, 2.0};
  EXPECT_EQ(code_of([&] { pt_path_check(ShiftedLine{}, lopsided); }), errc::asymmetric_grid);
  const auto g = symmetric_grid(1.0, 5);
  EXPECT_EQ(code_of([&] { pt_path_check(ShiftedLine{1.7, 1.0}, g); }), errc::epsilon_out_of_range);
}

TEST(ContourSpecVariant, UniformAccess) {
  const ContourSpec line = ShiftedLine{0.3, 7.0};
  const ContourSpec arch = ArchContour{0.4, 9.0};
  EXPECT_EQ(contour_epsilon(line), 0.3);
  EXPECT_EQ(contour_half_length(arch), 9.0);
  EXPECT_EQ(evaluate(line, 2.0).xi, cplx(2.0, -0.3));
  EXPECT_EQ(evaluate(arch, 2.0).xi, arch_point(2.0, 0.4));
}
