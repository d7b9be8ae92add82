#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracheat/errors.hpp"
#include "fracheat/extension.hpp"
#include "fracheat/fractional.hpp"
#include "test_util.hpp"

using namespace fracheat;
using std::numbers::pi;

namespace {

SpaceTimeGrid small_grid() { return make_grid(1, 16.0, 32, 16.0, 32, -8.0); }

GridFunction bump(const SpaceTimeGrid& g) {
  return sample_field(g, [](const Point& x, double t) { return Complex(std::exp(-x[0] * x[0] - t * t), 0.0); });
}

Complex lambda_of(const SpaceTimeGrid& g, long k, long m) {
  const double xi = static_cast<double>(k) / g.L_x();
  return {4 * pi * pi * xi * xi, 2 * pi * static_cast<double>(m) / g.L_t()};
}

}  // namespace

TEST(Extend, ZeroAndConstantData) {
  const auto g = small_grid();
  for (double s : {0.25, 0.5, 0.75}) {
    const auto params = ExtensionParams::from_s(s);
    const auto yg = extension_ygrid(g, params, 64);
    const auto zero = extend(GridFunction(g), params, yg);
    for (const auto& v : zero.values()) EXPECT_EQ(v, Complex(0.0, 0.0));
    const auto c = sample_field(g, [](const Point&, double) { return Complex(0.5, 2.0); });
    const auto U = extend(c, params, yg);
    for (const auto& v : U.values()) EXPECT_NEAR(std::abs(v - Complex(0.5, 2.0)), 0.0, 1e-12);
  }
}

TEST(Extend, HalfOrderModeIsDecayingExponential) {
  const auto g = small_grid();
  const auto params = ExtensionParams::from_s(0.5);
  const auto yg = extension_ygrid(g, params, 256);
  const long k = 3;
  const long m = -2;
  const auto w = test::plane_wave(g, k, m);
  const Complex root = std::sqrt(lambda_of(g, k, m));
  const auto U = extend(w, params, yg);
  double err = 0.0;
  for (std::size_t l = 0; l < yg.size(); ++l) {
    const Complex factor = std::exp(-root * yg.level(l));
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(U(l, i) - factor * w.values()[i]));
  }
  EXPECT_LE(err, 1e-6);
}

TEST(Extend, FiniteDifferenceMatchesBesselProfile) {
  for (double s : {0.25, 0.5, 0.75}) {
    const auto params = ExtensionParams::from_s(s);
    const auto yg = YGrid::for_weight(params.a, 20.0, 256);
    ExtendOptions closed;
    closed.backend = ProfileBackend::bessel_k;
    for (Complex lambda : {Complex(1.0, 1.0), Complex(4.0, -6.0), Complex(0.0, 3.0)}) {
      const auto fd = mode_profile(lambda, params, yg);
      const auto cf = mode_profile(lambda, params, yg, closed);
      EXPECT_EQ(cf[0], Complex(1.0, 0.0));
      for (std::size_t l = 0; l < yg.size(); ++l) EXPECT_LE(std::abs(fd[l] - cf[l]), 5e-5) << "s=" << s;
    }
  }
}

// The plain conservative scheme is an M-matrix, so its profiles obey the discrete
// maximum principle exactly; Richardson extrapolation only does so to its own error.
TEST(Extend, ProfilesStayBetweenZeroAndDatumForRealSymbols) {
  ExtendOptions plain;
  plain.richardson_levels = 0;
  for (double s : {0.25, 0.5, 0.75}) {
    const auto params = ExtensionParams::from_s(s);
    const auto yg = YGrid::for_weight(params.a, 30.0, 128);
    for (double lambda : {0.08, 1.0, 40.0, 900.0}) {
      const auto U = mode_profile(lambda, params, yg, plain);
      for (const auto& v : U) {
        EXPECT_GE(v.real(), -1e-12);
        EXPECT_LE(v.real(), 1.0 + 1e-12);
        EXPECT_NEAR(v.imag(), 0.0, 1e-14);
      }
    }
  }
}

TEST(Extend, ProfileModulusIsNonincreasing) {
  ExtendOptions plain;
  plain.richardson_levels = 0;
  for (double s : {0.25, 0.5, 0.75}) {
    const auto params = ExtensionParams::from_s(s);
    const auto yg = YGrid::for_weight(params.a, 30.0, 256);
    for (Complex lambda : {Complex(0.1, 0.0), Complex(0.0, 0.4), Complex(2.0, -9.0), Complex(0.0, 300.0)}) {
      const auto U = mode_profile(lambda, params, yg, plain);
      for (std::size_t l = 1; l < U.size(); ++l) {
        EXPECT_LE(std::abs(U[l]), std::abs(U[l - 1]) + 1e-12) << "s=" << s << " lambda=" << lambda << " l=" << l;
      }
    }
  }
}

TEST(Extend, RejectsShortOrMismatchedYGrid) {
  const auto g = small_grid();
  const auto u = bump(g);
  const auto params = ExtensionParams::from_s(0.5);
  EXPECT_THROW(extend(u, params, YGrid::for_weight(0.0, 2.0, 64)), InvalidArgument);
  EXPECT_THROW(extend(u, params, YGrid::for_weight(0.5, 40.0, 64)), GridMismatch);
  EXPECT_THROW(mode_profile(Complex(-1.0, 0.0), params, YGrid::for_weight(0.0, 40.0, 64)), InvalidArgument);
}

TEST(NormalDerivative, LocalModelIsRecoveredExactly) {
  for (double a : {-0.5, 0.0, 0.5}) {
    const auto yg = YGrid::for_weight(a, 10.0, 128);
    const Complex flat = normal_derivative_column(yg, [](std::size_t) { return Complex(3.0, -1.0); });
    EXPECT_NEAR(std::abs(flat), 0.0, 1e-12);
    const Complex model = normal_derivative_column(
        yg, [&](std::size_t l) { return Complex(std::pow(yg.level(l), 1 - a) / (1 - a), 0.0); });
    EXPECT_NEAR(std::abs(model - 1.0), 0.0, 1e-10) << "a=" << a;
  }
}

TEST(NormalDerivative, HalfOrderModeGivesMinusRoot) {
  const auto g = small_grid();
  const auto params = ExtensionParams::from_s(0.5);
  const auto yg = extension_ygrid(g, params, 256);
  const auto w = test::plane_wave(g, 2, 1);
  const Complex root = std::sqrt(lambda_of(g, 2, 1));
  const auto d = weighted_normal_derivative(extend(w, params, yg));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LE(std::abs(d.values()[i] + root * w.values()[i]), 1e-6 * std::abs(root));
  }
}

TEST(DtN, ZeroDatum) {
  const auto g = small_grid();
  const auto r = dtn_verify(GridFunction(g), 0.5, extension_ygrid(g, ExtensionParams::from_s(0.5), 64));
  EXPECT_EQ(r.discrepancy, 0.0);
  EXPECT_EQ(r.lhs_norm, 0.0);
  EXPECT_EQ(r.rhs_norm, 0.0);
}

TEST(DtN, HalfOrderSingleMode) {
  const auto g = small_grid();
  const auto w = test::plane_wave(g, -1, 3);
  const auto r = dtn_verify(w, 0.5, extension_ygrid(g, ExtensionParams::from_s(0.5), 256));
  EXPECT_LE(r.discrepancy, 1e-6);
}

TEST(DtN, SmoothBumpAcrossOrders) {
  const auto g = small_grid();
  const auto u = bump(g);
  for (double s : {0.25, 0.5, 0.75}) {
    const auto r = dtn_verify(u, s, extension_ygrid(g, ExtensionParams::from_s(s), 256));
    EXPECT_LE(r.discrepancy, 1e-3) << "s=" << s;
    EXPECT_GT(r.rhs_norm, 0.0);
  }
}

TEST(DtN, ClosedFormRouteAgreesPerMode) {
  const auto g = small_grid();
  const auto u = bump(g);
  const auto yg = extension_ygrid(g, ExtensionParams::from_s(0.5), 256);
  ExtendOptions closed;
  closed.backend = ProfileBackend::bessel_k;
  const auto fd = dft_forward(dtn_verify(u, 0.5, yg).lhs);
  const auto cf = dft_forward(dtn_verify(u, 0.5, yg, closed).lhs);
  double peak = 0.0;
  for (const auto& v : cf.values()) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < fd.values().size(); ++i) {
    EXPECT_LE(std::abs(fd.values()[i] - cf.values()[i]), 1e-6 * peak);
  }
}

TEST(DtN, LeftSideIsLinear) {
  const auto g = small_grid();
  const auto f = bump(g);
  const auto h = sample_field(g, [](const Point& x, double t) {
    return Complex(std::exp(-0.5 * (x[0] - 1) * (x[0] - 1) - t * t), 0.3 * std::exp(-x[0] * x[0] - 2 * t * t));
  });
  const auto yg = extension_ygrid(g, ExtensionParams::from_s(0.3), 128);
  const Complex alpha(1.5, -0.5);
  const Complex beta(-0.25, 2.0);
  auto combo = f;
  for (std::size_t i = 0; i < combo.values().size(); ++i) {
    combo.values()[i] = alpha * f.values()[i] + beta * h.values()[i];
  }
  const auto lc = dtn_verify(combo, 0.3, yg).lhs;
  const auto lf = dtn_verify(f, 0.3, yg).lhs;
  const auto lh = dtn_verify(h, 0.3, yg).lhs;
  auto expected = lf;
  for (std::size_t i = 0; i < expected.values().size(); ++i) {
    expected.values()[i] = alpha * lf.values()[i] + beta * lh.values()[i];
  }
  EXPECT_LE(test::relative_l2(lc, expected), 1e-12);
}

TEST(DtN, DiscrepancyShrinksUnderRefinement) {
  const auto g = small_grid();
  const auto u = bump(g);
  for (double s : {0.25, 0.5, 0.75}) {
    const auto params = ExtensionParams::from_s(s);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t J : {64u, 128u, 256u, 512u}) {
      const double d = dtn_verify(u, s, extension_ygrid(g, params, J)).discrepancy;
      EXPECT_LE(d, 1.1 * previous) << "s=" << s << " J=" << J;
      previous = d;
    }
  }
}

TEST(BoundaryResidual, SemigroupEvolutionIsNeumann) {
  const SpatialGrid sg{1, 16.0, 64};
  for (double a : {-0.5, 0.0, 0.5}) {
    const auto params = ExtensionParams::from_a(a);
    const auto yg = YGrid::for_weight(a, 16.0, 256);
    const auto phi = sample_slice(sg, yg, [](const Point& x, double y) {
      return Complex(std::exp(-x[0] * x[0] - y * y), 0.0);
    });
    const auto U = semigroup_apply(phi, 0.1, params);
    const std::vector<Complex> u(U.plane(0).begin(), U.plane(0).end());
    const std::vector<Complex> V(sg.size(), 0.0);
    EXPECT_LE(boundary_residual(U, u, V, params), 1e-6) << "a=" << a;
  }
}

TEST(BoundaryResidual, DefinitionalAndZeroCases) {
  const auto g = small_grid();
  const auto params = ExtensionParams::from_s(0.6);
  const auto yg = extension_ygrid(g, params, 128);
  const auto u = sample_field(g, [](const Point& x, double t) { return Complex(2.0 + std::exp(-x[0] * x[0] - t * t), 0.0); });
  const auto U = extend(u, params, yg);
  const auto d = weighted_normal_derivative(U);
  auto V = u;
  for (std::size_t i = 0; i < V.values().size(); ++i) V.values()[i] = d.values()[i] / (params.c_wk * u.values()[i]);
  EXPECT_LE(boundary_residual(U, u, V, params), 1e-13);

  const ExtendedField zero(g, yg);
  const auto V2 = sample_field(g, [](const Point& x, double) { return Complex(std::cos(x[0]), 0.0); });
  double expected = 0.0;
  for (std::size_t i = 0; i < u.values().size(); ++i) {
    expected = std::max(expected, params.c_wk * std::abs(V2.values()[i] * u.values()[i]));
  }
  EXPECT_NEAR(boundary_residual(zero, u, V2, params), expected, 1e-13 * expected);

  const auto other = make_grid(1, 16.0, 64, 16.0, 32, -8.0);
  EXPECT_THROW(boundary_residual(U, u, GridFunction(other), params), GridMismatch);
}
