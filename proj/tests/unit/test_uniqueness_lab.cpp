#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>

#include "fracheat/errors.hpp"
#include "fracheat/uniqueness_lab.hpp"

using namespace fracheat;

namespace {

SpatialGrid line(double L, std::size_t N) { return SpatialGrid{1, L, N}; }

ExtendedSlice constant_slice(const SpatialGrid& sg, const YGrid& yg, Complex c) {
  return sample_slice(sg, yg, [c](const Point&, double) { return c; });
}

ExtendedSlice bump_slice(const SpatialGrid& sg, const YGrid& yg, double w = 1.0) {
  return sample_slice(sg, yg, [w](const Point& x, double y) {
    return Complex(std::exp(-(x[0] * x[0] + y * y) / w));
  });
}

// U(X, t) = g(t) on every node.
class TimeOnly : public ExtendedSolution {
 public:
  TimeOnly(SpatialGrid sg, YGrid yg, std::function<double(double)> g)
      : sg_(sg), yg_(std::move(yg)), g_(std::move(g)) {}
  const SpatialGrid& spatial() const override { return sg_; }
  const YGrid& ygrid() const override { return yg_; }
  ExtendedSlice at(double t) const override { return constant_slice(sg_, yg_, g_(t)); }

 private:
  SpatialGrid sg_;
  YGrid yg_;
  std::function<double(double)> g_;
};

struct Lab {
  double a;
  SpatialGrid sg = line(20.0, 128);
  YGrid yg;
  ExtensionParams params;
  MonotonicityConfig cfg;
  SemigroupOptions options{1e-6, 0.25};

  explicit Lab(double a_, double T = 1.0, double C1 = 0.0)
      : a(a_),
        yg(YGrid::for_weight(a_, 16.0, 512)),
        params(ExtensionParams::from_a(a_)),
        cfg(MonotonicityConfig::make(HalfSpacePoint{{0.3, 0.0}, 0.5}, T, C1, a_)) {}

  SemigroupEvolution bump(double scale = 1.0) const {
    auto s = bump_slice(sg, yg);
    for (auto& v : s.values()) v *= scale;
    return SemigroupEvolution(s, params, options);
  }
};

// (2t)^{-(a+1)/2} 2^{(1-a)/2} e^{-y^2/4t} / Gamma((1+a)/2): kernel between y and 0.
double kernel_to_boundary(double y, double t, double a) {
  return std::pow(2.0 * t, -0.5 * (a + 1.0)) * std::pow(2.0, 0.5 * (1.0 - a)) * std::exp(-y * y / (4.0 * t)) /
         boost::math::tgamma(0.5 * (1.0 + a));
}

}  // namespace

TEST(MonotonicityConfig, ChebyshevDefaults) {
  const auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 4.0, 1.5, 0.5);
  ASSERT_EQ(cfg.R_samples.size(), 24u);
  EXPECT_DOUBLE_EQ(cfg.R_samples.front(), 0.1);
  EXPECT_DOUBLE_EQ(cfg.R_samples.back(), 1.9);
  for (std::size_t k = 1; k < 24; ++k) EXPECT_GT(cfg.R_samples[k], cfg.R_samples[k - 1]);
  EXPECT_DOUBLE_EQ(cfg.C, 3.0);
}

TEST(MonotonicityConfig, RejectsBadSamples) {
  const HalfSpacePoint X0{{0.0, 0.0}, 1.0};
  EXPECT_THROW(MonotonicityConfig::make(X0, 1.0, 0.0, 0.0, {0.2, 0.1}), InvalidArgument);
  EXPECT_THROW(MonotonicityConfig::make(X0, 1.0, 0.0, 0.0, {0.5, 1.0}), InvalidArgument);
  EXPECT_THROW(MonotonicityConfig::make(X0, -1.0, 0.0, 0.0), InvalidArgument);
  auto cfg = MonotonicityConfig::make(X0, 1.0, 1.0, 0.0);
  cfg.C = 2.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(PoonPhi, ZeroField) {
  Lab lab(0.0);
  const auto U = constant_slice(lab.sg, lab.yg, 0.0);
  for (double R : lab.cfg.R_samples) EXPECT_EQ(poon_phi(U, lab.cfg, R), 0.0);
}

TEST(PoonPhi, UnitFieldHasUnitMass) {
  for (double a : {-0.5, 0.0, 0.5}) {
    Lab lab(a);
    const auto U = constant_slice(lab.sg, lab.yg, 1.0);
    for (double R : lab.cfg.R_samples) EXPECT_NEAR(poon_phi(U, lab.cfg, R), 1.0, 1e-8) << "a=" << a << " R=" << R;
  }
}

TEST(PoonPhi, TimeOnlyField) {
  Lab lab(0.0);
  const auto g = [](double t) { return std::cos(3.0 * t) + 0.5; };
  TimeOnly U(lab.sg, lab.yg, g);
  for (double R : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(poon_phi(U, lab.cfg, R), g(R * R) * g(R * R), 1e-8);
  }
}

TEST(PoonPhi, ScalingCovariance) {
  Lab lab(0.0);
  const auto U1 = lab.bump();
  const auto U2 = lab.bump(2.0);
  const auto m1 = monotonicity_scan(U1, MonotonicityConfig::make(lab.cfg.X0, 1.0, 0.0, 0.0, {0.3, 0.6}));
  const auto m2 = monotonicity_scan(U2, MonotonicityConfig::make(lab.cfg.X0, 1.0, 0.0, 0.0, {0.3, 0.6}));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_DOUBLE_EQ(m2.phi[k], 4.0 * m1.phi[k]);
    EXPECT_DOUBLE_EQ(m2.F[k], 4.0 * m1.F[k]);
  }
}

TEST(PoonPhi, RangeErrors) {
  Lab lab(0.0);
  const auto U = constant_slice(lab.sg, lab.yg, 1.0);
  EXPECT_THROW(poon_phi(U, lab.cfg, 1.0), InvalidArgument);
  EXPECT_THROW(poon_phi(U, lab.cfg, -0.1), InvalidArgument);
  Lab other(0.5);
  EXPECT_THROW(poon_phi(U, other.cfg, 0.5), GridMismatch);
}

TEST(PoonPhi, UnderresolvedKernelFlagged) {
  Lab lab(0.0);
  EXPECT_FALSE(kernel_underresolved(lab.sg, lab.yg, lab.cfg, 0.5));
  EXPECT_TRUE(kernel_underresolved(lab.sg, lab.yg, lab.cfg, 0.9999));
}

TEST(PhiDerivative, ConstantSolutionBothSidesZero) {
  Lab lab(0.0);
  TimeOnly U(lab.sg, lab.yg, [](double) { return 1.0; });
  const auto rep = phi_derivative_check(U, {}, lab.cfg, 0.5);
  EXPECT_LT(std::abs(rep.rhs), 1e-20);
  EXPECT_LT(std::abs(rep.phi_prime_fd), 1e-6);
  EXPECT_TRUE(rep.meaningful);
}

TEST(PhiDerivative, EvolvedBumpMatchesIdentity) {
  for (double a : {-0.5, 0.0, 0.5}) {
    Lab lab(a);
    const auto U = lab.bump();
    for (double R : {0.3, 0.6, 0.85}) {
      const auto rep = phi_derivative_check(U, {}, lab.cfg, R);
      EXPECT_LT(rep.rhs, 0.0);
      EXPECT_LT(rep.relative_mismatch, 1e-2) << "a=" << a << " R=" << R << " fd=" << rep.phi_prime_fd
                                             << " rhs=" << rep.rhs;
      EXPECT_TRUE(rep.meaningful) << rep.boundary_residual << " > " << rep.residual_bound;
      EXPECT_EQ(rep.boundary_term, 0.0);
    }
  }
}

TEST(PhiDerivative, RejectsStepOutsideRange) {
  Lab lab(0.0);
  const auto U = lab.bump();
  EXPECT_THROW(phi_derivative_check(U, {}, lab.cfg, 0.9995, 1e-3), InvalidArgument);
}

TEST(TraceBound, ZeroPotential) {
  Lab lab(0.0);
  const auto rep = trace_bound_check(lab.bump(), {}, lab.cfg, 0.5);
  EXPECT_EQ(rep.lhs, 0.0);
  EXPECT_EQ(rep.empirical_C1, 0.0);
  EXPECT_TRUE(rep.configured_suffices);
}

TEST(TraceBound, UnitFieldUnitPotential) {
  for (double a : {-0.5, 0.0, 0.5}) {
    Lab lab(a);
    TimeOnly U(lab.sg, lab.yg, [](double) { return 1.0; });
    const Potential V = [](const Point&, double) { return Complex(1.0); };
    for (double R : {0.2, 0.7}) {
      const double tau = 1.0 - R * R;
      const auto rep = trace_bound_check(U, V, lab.cfg, R);
      const double boundary_mass = kernel_to_boundary(lab.cfg.X0.y, tau, a);
      EXPECT_NEAR(rep.lhs, 4.0 * R * boundary_mass, 1e-9 * rep.lhs);
      EXPECT_LT(rep.gradient_energy, 1e-18);
      const double expected = 4.0 * std::pow(tau, 0.5 * (1.0 + a)) * boundary_mass;
      EXPECT_NEAR(rep.empirical_C1, expected, 1e-7 * expected) << "a=" << a << " R=" << R;
      EXPECT_FALSE(rep.configured_suffices);
    }
  }
}

TEST(TraceBound, Smallness) {
  auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(smallness_value(cfg), 2.0);
  cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, 4.0, 0.0);
  EXPECT_DOUBLE_EQ(smallness_value(cfg), 4.0);
  Lab lab(0.0, 1.0, 4.0);
  EXPECT_FALSE(trace_bound_check(lab.bump(), {}, lab.cfg, 0.5).smallness_holds);
}

TEST(Envelope, ZeroPhi) {
  const auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, 1.0, 0.0);
  const std::vector<double> zeros(cfg.R_samples.size(), 0.0);
  const auto rep = envelope_F(zeros, zeros, 0.0, cfg);
  for (double F : rep.F) EXPECT_EQ(F, 0.0);
  EXPECT_EQ(rep.F0, 0.0);
  EXPECT_EQ(rep.verdict, "monotone");
}

TEST(Envelope, SyntheticGaussianPhi) {
  for (double C1 : {0.0, 1.0, 3.0}) {
    const auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, C1, 0.0);
    std::vector<double> phi, dphi;
    for (double R : cfg.R_samples) {
      phi.push_back(std::exp(-R * R));
      dphi.push_back(-2.0 * R * std::exp(-R * R));
    }
    const auto rep = envelope_F(phi, dphi, 1.0, cfg);
    for (std::size_t k = 0; k < phi.size(); ++k) {
      const double R = cfg.R_samples[k];
      EXPECT_NEAR(rep.F[k], std::exp(C1 * std::sqrt(1.0 - R * R) - R * R), 1e-14);
      EXPECT_NEAR(rep.inequality_rhs[k], C1 * R / std::sqrt(1.0 - R * R) * phi[k], 1e-13);
      EXPECT_FALSE(rep.violation[k]);
    }
    EXPECT_DOUBLE_EQ(rep.F0, std::exp(C1));
    EXPECT_TRUE(rep.endpoint_chain);
    EXPECT_EQ(rep.verdict, "monotone");
  }
}

TEST(Envelope, IncreasingPhiIsFlagged) {
  const auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, 0.0, 0.0);
  std::vector<double> phi, dphi;
  for (double R : cfg.R_samples) {
    phi.push_back(std::exp(R * R));
    dphi.push_back(2.0 * R * std::exp(R * R));
  }
  const auto rep = envelope_F(phi, dphi, 1.0, cfg);
  EXPECT_EQ(rep.verdict, "violated");
  EXPECT_FALSE(rep.F_increase[0]);
  EXPECT_TRUE(rep.F_increase[5]);
  EXPECT_TRUE(rep.inequality_violation[5]);
  EXPECT_FALSE(rep.endpoint_chain);
}

TEST(Envelope, SmallnessFailureIsInconclusive) {
  const auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, 5.0, 0.0);
  const std::vector<double> zeros(cfg.R_samples.size(), 0.0);
  EXPECT_EQ(envelope_F(zeros, zeros, 0.0, cfg).verdict, "inconclusive");
}

TEST(Envelope, MisalignedInputs) {
  const auto cfg = MonotonicityConfig::make(HalfSpacePoint{{0.0, 0.0}, 1.0}, 1.0, 0.0, 0.0);
  EXPECT_THROW(envelope_F({1.0}, {0.0}, 1.0, cfg), InvalidArgument);
}

TEST(Monotonicity, EvolvedBumpIsMonotone) {
  for (double a : {-0.5, 0.0, 0.5}) {
    Lab lab(a);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = monotonicity_scan(lab.bump(), lab.cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(rep.verdict, "monotone") << "a=" << a;
    for (std::size_t k = 0; k < rep.R.size(); ++k) {
      EXPECT_FALSE(rep.violation[k]) << "a=" << a << " k=" << k;
      EXPECT_LE(rep.phi_prime_fd[k], 0.0);
      EXPECT_LE(rep.phi[k], rep.phi0 * (1.0 + 1e-12));
      if (k > 0) EXPECT_LE(rep.phi[k], rep.phi[k - 1] + 1e-3 * rep.phi[0]);
    }
    EXPECT_LT(secs, 60.0);
  }
}

TEST(Monotonicity, EndpointLimitGapShrinks) {
  Lab lab(0.0);
  const auto U = lab.bump();
  double prev = std::numeric_limits<double>::infinity();
  for (double frac : {0.9, 0.95, 0.98}) {
    const double R = frac;
    const double direct = std::norm(U.point(lab.cfg.X0, R * R));
    const double gap = std::abs(poon_phi(U, lab.cfg, R) - direct);
    EXPECT_LT(gap, prev) << "R=" << R;
    prev = gap;
  }
}

TEST(VanishingOrder, PowerProfiles) {
  const auto grid = make_grid(1, 8.0, 256, 4.0, 16, -2.0);
  const double h = grid.hx();
  const std::vector<double> radii{32 * h, 16 * h, 8 * h, 4 * h};
  for (int m : {1, 2, 3}) {
    const auto u = sample_field(grid, [m](const Point& x, double) { return Complex(std::pow(x[0] * x[0], m)); });
    const auto est = vanishing_order(u, Point{0.0, 0.0}, 0.0, radii);
    EXPECT_NEAR(est.slope, 2.0 * m, 1e-12);
    EXPECT_EQ(est.used, 4u);
    EXPECT_FALSE(est.identically_zero);
  }
  const auto ones = sample_field(grid, [](const Point&, double) { return Complex(1.0); });
  EXPECT_NEAR(vanishing_order(ones, Point{0.0, 0.0}, 0.0, radii).slope, 0.0, 1e-14);
}

TEST(VanishingOrder, ZeroNearPoint) {
  const auto grid = make_grid(1, 8.0, 256, 4.0, 16, -2.0);
  const auto u = sample_field(grid, [](const Point& x, double) { return Complex(std::abs(x[0]) > 3.0 ? 1.0 : 0.0); });
  const auto est = vanishing_order(u, Point{0.0, 0.0}, 0.0, {1.0, 0.5, 0.25});
  EXPECT_TRUE(est.identically_zero);
  EXPECT_EQ(est.status, "vanishes identically at resolution");
}

TEST(VanishingOrder, Errors) {
  const auto grid = make_grid(1, 8.0, 256, 4.0, 16, -2.0);
  const auto u = sample_field(grid, [](const Point& x, double) { return Complex(x[0] * x[0]); });
  EXPECT_THROW(vanishing_order(u, Point{0.0, 0.0}, 0.0, {0.5, 0.25}), InvalidArgument);
  EXPECT_THROW(vanishing_order(u, Point{0.0, 0.0}, 0.0, {0.25, 0.5, 1.0}), InvalidArgument);
}

TEST(Propagation, ZeroDataStaysZero) {
  Lab lab(0.0);
  PropagationScenario sc{constant_slice(lab.sg, lab.yg, 0.0), lab.params, 3,
                         {HalfSpacePoint{{0.0, 0.0}, 0.0}, HalfSpacePoint{{2.0, 0.0}, 1.0}}, lab.options};
  const auto rep = propagation_experiment(sc, lab.cfg);
  EXPECT_TRUE(rep.zero_data);
  ASSERT_EQ(rep.windows.size(), 3u);
  for (const auto& w : rep.windows) {
    EXPECT_LE(w.sup_phi, 1e-12);
    EXPECT_LE(w.probe_max, 1e-6);
  }
  EXPECT_EQ(rep.verdict, "zeros propagate forward");
}

TEST(Propagation, ControlMatchesSemigroupEndpoint) {
  Lab lab(0.0);
  PropagationScenario sc{bump_slice(lab.sg, lab.yg), lab.params, 2, {}, lab.options};
  const auto rep = propagation_experiment(sc, lab.cfg);
  EXPECT_FALSE(rep.zero_data);
  EXPECT_EQ(rep.verdict, "control: F decreasing and bounded away from zero");
  for (const auto& w : rep.windows) {
    EXPECT_TRUE(w.monotone);
    EXPECT_GT(w.endpoint_direct, 0.0);
    EXPECT_LT(w.endpoint_relative_gap, 1e-4) << "window " << w.index;
  }
  // the second window restarts from the t = T slice
  SemigroupEvolution restart(SemigroupEvolution(sc.initial, lab.params, lab.options).at(1.0), lab.params,
                             lab.options);
  EXPECT_DOUBLE_EQ(rep.windows[1].phi0, poon_phi(restart, lab.cfg, 0.0));
  EXPECT_DOUBLE_EQ(rep.windows[1].t_start, 1.0);
}

TEST(Propagation, SmallnessFailureIsInconclusive) {
  Lab lab(0.0, 1.0, 5.0);
  PropagationScenario sc{constant_slice(lab.sg, lab.yg, 0.0), lab.params, 1, {}, lab.options};
  EXPECT_EQ(propagation_experiment(sc, lab.cfg).verdict, "inconclusive");
}
