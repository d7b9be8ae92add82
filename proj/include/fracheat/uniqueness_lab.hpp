#pragma once

// Numerical laboratory for the Poon-type monotonicity argument:
//   phi(R) = int U(X, R^2)^2 G(X, X0, T - R^2) y^a dX,
//   F(R)   = exp(C (T - R^2)^{(1-a)/2}) phi(R),  C = C1 / (1 - a),
// the identity for phi', the trace estimate that controls the boundary term,
// vanishing-order estimates and the forward propagation of zeros.
//
// Throughout, the potential V enters through the absorbed boundary condition
// y^a d_y U = V U at y = 0.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fracheat/extended_field.hpp"
#include "fracheat/kernels.hpp"
#include "fracheat/spacetime.hpp"

namespace fracheat {

/// A solution of the extension equation that can be sampled at any t >= 0.
class ExtendedSolution {
 public:
  virtual ~ExtendedSolution() = default;
  virtual const SpatialGrid& spatial() const = 0;
  virtual const YGrid& ygrid() const = 0;
  virtual ExtendedSlice at(double t) const = 0;
};

/// U(t) = P^(a)_t U(0): the exact V = 0 solution family.
class SemigroupEvolution : public ExtendedSolution {
 public:
  SemigroupEvolution(ExtendedSlice initial, ExtensionParams params, SemigroupOptions options = {});

  const SpatialGrid& spatial() const override { return initial_.spatial(); }
  const YGrid& ygrid() const override { return initial_.ygrid(); }
  ExtendedSlice at(double t) const override;

  const ExtendedSlice& initial() const { return initial_; }
  const ExtensionParams& params() const { return params_; }
  Complex point(const HalfSpacePoint& X, double t) const;

 private:
  ExtendedSlice initial_;
  ExtensionParams params_;
  SemigroupOptions options_;
};

/// A stored field, interpolated trigonometrically in t.
class SampledSolution : public ExtendedSolution {
 public:
  explicit SampledSolution(ExtendedField field);

  const SpatialGrid& spatial() const override { return field_.base().spatial(); }
  const YGrid& ygrid() const override { return field_.ygrid(); }
  ExtendedSlice at(double t) const override { return field_.at_time(t); }

 private:
  ExtendedField field_;
};

/// V(x, t) on the boundary; an empty function means V = 0.
using Potential = std::function<Complex(const Point& x, double t)>;

struct MonotonicityConfig {
  HalfSpacePoint X0;
  double T = 1.0;
  std::vector<double> R_samples;
  double C1 = 0.0;
  double C = 0.0;  // C1 / (1 - a)
  double a = 0.0;

  /// Fills C from C1 and a; empty R means the default Chebyshev samples.
  static MonotonicityConfig make(HalfSpacePoint X0, double T, double C1, double a,
                                 std::vector<double> R = {});
  /// Throws InvalidArgument unless T > 0, y0 >= 0, a in (-1, 1), C1 >= 0,
  /// C = C1/(1-a) and 0 < R_k < sqrt(T) strictly increasing.
  void validate() const;
};

/// count Chebyshev-Lobatto points on [lo sqrt(T), hi sqrt(T)], increasing.
std::vector<double> chebyshev_R_samples(double T, std::size_t count = 24, double lo = 0.05,
                                        double hi = 0.95);

/// phi(R) from the slice U(., R^2). R = 0 is allowed (phi(0) uses tau = T).
double poon_phi(const ExtendedSlice& U_at_R2, const MonotonicityConfig& cfg, double R);
double poon_phi(const ExtendedSolution& U, const MonotonicityConfig& cfg, double R);

/// True when the kernel width sqrt(2 (T - R^2)) is below two grid spacings
/// in x or in y near y0.
bool kernel_underresolved(const SpatialGrid& spatial, const YGrid& ygrid,
                          const MonotonicityConfig& cfg, double R);

/// int |grad U|^2 G y^a at t = R^2: spectral d_x, three-point FD in y.
double gradient_energy(const ExtendedSlice& U_at_R2, const MonotonicityConfig& cfg, double R);
/// int_{y=0} Re V |U|^2 G dx at t = R^2.
double boundary_energy(const ExtendedSlice& U_at_R2, const Potential& V, const MonotonicityConfig& cfg,
                       double R);

/// ||y^a d_y U - V U||_inf on the boundary of one slice.
double lab_boundary_residual(const ExtendedSlice& U, const Potential& V, double t);

struct IdentityReport {
  double R = 0.0;
  double phi = 0.0;
  double phi_prime_fd = 0.0;
  double gradient_term = 0.0;  // -4R int |grad U|^2 G y^a
  double boundary_term = 0.0;  // -4R int_{y=0} V U^2 G dx
  double rhs = 0.0;
  double relative_mismatch = 0.0;
  double boundary_residual = 0.0;
  double residual_bound = 0.0;
  bool meaningful = true;  // boundary_residual <= residual_bound
};

/// Centered-difference phi'(R) against the integrated-by-parts right side.
/// dR = 0 picks 1e-3 sqrt(T). residual_tol is relative to sup |U| on the boundary.
IdentityReport phi_derivative_check(const ExtendedSolution& U, const Potential& V,
                                    const MonotonicityConfig& cfg, double R, double dR = 0.0,
                                    double residual_tol = 1e-4);

struct InequalityReport {
  double R = 0.0;
  double lhs = 0.0;  // |4R int_{y=0} V U^2 G dx|
  double phi = 0.0;
  double gradient_energy = 0.0;
  double empirical_C1 = 0.0;
  double configured_C1 = 0.0;
  bool configured_suffices = true;
  double smallness_value = 0.0;  // C1 T^{(1-a)/2}, must stay below 4
  bool smallness_holds = true;
};

InequalityReport trace_bound_check(const ExtendedSolution& U, const Potential& V,
                                   const MonotonicityConfig& cfg, double R);

double smallness_value(const MonotonicityConfig& cfg);

struct MonotonicityReport {
  std::vector<double> R;
  std::vector<double> phi;
  std::vector<double> F;
  std::vector<double> phi_prime_fd;
  std::vector<double> inequality_rhs;  // C1 R (T-R^2)^{-(1+a)/2} phi(R)
  std::vector<bool> F_increase;
  std::vector<bool> inequality_violation;
  std::vector<bool> violation;
  std::vector<bool> underresolved;
  double phi0 = 0.0;
  double F0 = 0.0;
  bool endpoint_chain = true;  // F(R_k) <= F(0) at every sample
  double smallness_value = 0.0;
  bool smallness_holds = true;
  double tolerance = 1e-3;
  std::string verdict;  // "monotone", "violated" or "inconclusive"
};

/// Builds the report from sampled phi and phi' (aligned with cfg.R_samples).
/// Increases are flagged when F(R_{k+1}) > F(R_k) + tol F(R_1).
MonotonicityReport envelope_F(const std::vector<double>& phi, const std::vector<double>& phi_prime,
                              double phi0, const MonotonicityConfig& cfg, double tol = 1e-3);

/// Samples phi, phi' (centered differences) and phi(0) from U, then envelope_F.
MonotonicityReport monotonicity_scan(const ExtendedSolution& U, const MonotonicityConfig& cfg,
                                     double tol = 1e-3);

struct OrderEstimate {
  std::vector<double> radii;
  std::vector<double> sups;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t used = 0;
  bool identically_zero = false;
  std::string status;
};

/// Least-squares slope of log cylinder_sup(u, x0, t0, r) against log r over a
/// strictly decreasing r_list. Radii with zero supremum are skipped.
OrderEstimate vanishing_order(const GridFunction& u, const Point& x0, double t0,
                              const std::vector<double>& r_list);

struct PropagationScenario {
  ExtendedSlice initial;
  ExtensionParams params;
  std::size_t windows = 2;
  std::vector<HalfSpacePoint> probes;
  SemigroupOptions semigroup{};
};

struct WindowReport {
  std::size_t index = 0;
  double t_start = 0.0;
  std::vector<double> phi;
  std::vector<double> F;
  double phi0 = 0.0;
  double sup_phi = 0.0;
  bool monotone = true;
  double endpoint_extrapolated = 0.0;  // F(sqrt(T)-) from phi at tau = T {0.08, 0.04, 0.02}
  double endpoint_direct = 0.0;        // |U(X0, t_start + T)|^2
  double endpoint_relative_gap = 0.0;
  double probe_max = 0.0;  // max |U(probe, t_start + T)|
};

struct PropagationReport {
  bool zero_data = false;
  double scale = 0.0;
  double phi_tolerance = 0.0;
  double probe_tolerance = 0.0;
  std::vector<WindowReport> windows;
  double smallness_value = 0.0;
  bool smallness_holds = true;
  std::string verdict;
};

/// Chains windows [kT, (k+1)T]: window k starts from the t = kT slice.
PropagationReport propagation_experiment(const PropagationScenario& scenario,
                                         const MonotonicityConfig& cfg);

}  // namespace fracheat
