#include "fracheat/uniqueness_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/extension.hpp"
#include "fracheat/parallel.hpp"

namespace fracheat {

namespace {

constexpr double pi = std::numbers::pi;

void require_weight(const YGrid& ygrid, double a, const char* where) {
  if (std::abs(ygrid.a() - a) > 1e-14) {
    throw GridMismatch(std::string(where) + ": YGrid weight exponent differs from the configured a");
  }
}

double tau_of(const MonotonicityConfig& cfg, double R, const char* where) {
  if (!std::isfinite(R) || R < 0.0 || R * R >= cfg.T) {
    std::ostringstream msg;
    msg << where << ": R = " << R << " outside [0, sqrt(T)) with T = " << cfg.T;
    throw InvalidArgument(msg.str());
  }
  return cfg.T - R * R;
}

// G(X, X0, tau) split into x-weights (with cell volume) and y-weights (with
// the weighted quadrature weights), so that
//   int f G y^a dX ~ sum_l gy[l] sum_j gx[j] f(l, j).
struct KernelWeights {
  std::vector<double> gx;
  std::vector<double> gy;
  double gy_boundary;  // p^(a)(y0, 0, tau), no quadrature weight
};

KernelWeights kernel_weights(const SpatialGrid& sg, const YGrid& yg, const MonotonicityConfig& cfg,
                             double tau) {
  KernelWeights K;
  K.gx.resize(sg.size());
  const double log_norm = -0.5 * sg.n * std::log(4.0 * pi * tau);
  for (std::size_t j = 0; j < sg.size(); ++j) {
    const double d = sg.periodic_distance(cfg.X0.x, sg.point(j));
    K.gx[j] = std::exp(log_norm - d * d / (4.0 * tau)) * sg.cell_volume();
  }
  K.gy.resize(yg.size());
  for (std::size_t l = 0; l < yg.size(); ++l) {
    K.gy[l] = bessel_heat_kernel(cfg.X0.y, yg.level(l), tau, cfg.a) * yg.weights()[l];
  }
  K.gy_boundary = bessel_heat_kernel(cfg.X0.y, 0.0, tau, cfg.a);
  return K;
}

template <class F>
double kernel_integral(const KernelWeights& K, std::size_t levels, F&& f) {
  std::vector<double> per_level(levels, 0.0);
  std::vector<double> row(K.gx.size());
  for (std::size_t l = 0; l < levels; ++l) {
    if (K.gy[l] == 0.0) continue;
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = K.gx[j] * f(l, j);
    per_level[l] = K.gy[l] * pairwise_sum(row);
  }
  return pairwise_sum(per_level);
}

// Three-point derivative weights at node l of a nonuniform grid.
std::array<double, 3> fd_weights(std::span<const double> y, std::size_t l) {
  if (l + 1 < y.size()) {
    const double h1 = y[l] - y[l - 1];
    const double h2 = y[l + 1] - y[l];
    return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
  }
  const double h1 = y[l] - y[l - 1];
  const double h2 = y[l - 1] - y[l - 2];
  // weights for U_{l-2}, U_{l-1}, U_l
  return {h1 / (h2 * (h1 + h2)), -(h1 + h2) / (h1 * h2), (2.0 * h1 + h2) / (h1 * (h1 + h2))};
}

// |grad U|^2 at every node of the slice, level-major.
std::vector<double> gradient_squared(const ExtendedSlice& U) {
  const SpatialGrid& sg = U.spatial();
  const YGrid& yg = U.ygrid();
  const std::size_t P = sg.size();
  std::vector<double> out(yg.size() * P, 0.0);

  parallel_for(yg.size(), [&](std::size_t l) {
    auto src = U.plane(l);
    for (int axis = 0; axis < sg.n; ++axis) {
      std::vector<Complex> d(src.begin(), src.end());
      apply_spatial_multiplier(sg, d, [axis](const Point& xi) {
        return Complex(0.0, 2.0 * pi * xi[static_cast<std::size_t>(axis)]);
      });
      for (std::size_t j = 0; j < P; ++j) out[l * P + j] += std::norm(d[j]);
    }
  });

  const auto y = yg.levels();
  parallel_for(yg.size(), [&](std::size_t l) {
    std::vector<Complex> dy(P, Complex(0.0));
    if (l == 0) {
      // y^a |d_y U|^2 vanishes at y = 0 unless a = 0; there use a one-sided stencil.
      if (yg.a() != 0.0) return;
      const double h1 = y[1] - y[0];
      const double h2 = y[2] - y[1];
      const double w0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
      const double w1 = (h1 + h2) / (h1 * h2);
      const double w2 = -h1 / (h2 * (h1 + h2));
      for (std::size_t j = 0; j < P; ++j) dy[j] = w0 * U(0, j) + w1 * U(1, j) + w2 * U(2, j);
    } else {
      const auto w = fd_weights(y, l);
      const std::size_t base = l + 1 < y.size() ? l - 1 : l - 2;
      for (std::size_t j = 0; j < P; ++j) {
        dy[j] = w[0] * U(base, j) + w[1] * U(base + 1, j) + w[2] * U(base + 2, j);
      }
    }
    for (std::size_t j = 0; j < P; ++j) out[l * P + j] += std::norm(dy[j]);
  });
  return out;
}

double boundary_sup(const ExtendedSlice& U) {
  double m = 0.0;
  for (const auto& v : U.plane(0)) m = std::max(m, std::abs(v));
  return m;
}

double relative_gap(double x, double y) {
  const double den = std::max(std::abs(x), std::abs(y));
  return den == 0.0 ? 0.0 : std::abs(x - y) / den;
}

}  // namespace

SemigroupEvolution::SemigroupEvolution(ExtendedSlice initial, ExtensionParams params,
                                       SemigroupOptions options)
    : initial_(std::move(initial)), params_(params), options_(options) {
  require_weight(initial_.ygrid(), params_.a, "SemigroupEvolution");
}

ExtendedSlice SemigroupEvolution::at(double t) const {
  if (t == 0.0) return initial_;
  if (!(t > 0.0)) throw InvalidArgument("SemigroupEvolution::at: t must be nonnegative");
  return semigroup_apply(initial_, t, params_, options_);
}

Complex SemigroupEvolution::point(const HalfSpacePoint& X, double t) const {
  return semigroup_eval_point(initial_, X, t, params_);
}

SampledSolution::SampledSolution(ExtendedField field) : field_(std::move(field)) {}

MonotonicityConfig MonotonicityConfig::make(HalfSpacePoint X0, double T, double C1, double a,
                                            std::vector<double> R) {
  if (!(a > -1.0 && a < 1.0)) throw InvalidArgument("MonotonicityConfig: a must lie in (-1, 1)");
  MonotonicityConfig cfg;
  cfg.X0 = X0;
  cfg.T = T;
  cfg.C1 = C1;
  cfg.a = a;
  cfg.C = C1 / (1.0 - a);
  cfg.R_samples = R.empty() && T > 0.0 ? chebyshev_R_samples(T) : std::move(R);
  cfg.validate();
  return cfg;
}

void MonotonicityConfig::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("MonotonicityConfig: T must be positive");
  if (!(X0.y >= 0.0)) throw InvalidArgument("MonotonicityConfig: y0 must be nonnegative");
  if (!(a > -1.0 && a < 1.0)) throw InvalidArgument("MonotonicityConfig: a must lie in (-1, 1)");
  if (!(C1 >= 0.0)) throw InvalidArgument("MonotonicityConfig: C1 must be nonnegative");
  if (std::abs(C - C1 / (1.0 - a)) > 1e-12 * std::max(1.0, std::abs(C))) {
    throw InvalidArgument("MonotonicityConfig: C must equal C1 / (1 - a)");
  }
  const double root = std::sqrt(T);
  for (std::size_t k = 0; k < R_samples.size(); ++k) {
    const double R = R_samples[k];
    if (!(R > 0.0 && R < root)) throw InvalidArgument("MonotonicityConfig: R samples must lie in (0, sqrt(T))");
    if (k > 0 && !(R > R_samples[k - 1])) {
      throw InvalidArgument("MonotonicityConfig: R samples must be strictly increasing");
    }
  }
}

std::vector<double> chebyshev_R_samples(double T, std::size_t count, double lo, double hi) {
  if (!(T > 0.0)) throw InvalidArgument("chebyshev_R_samples: T must be positive");
  if (!(0.0 < lo && lo < hi && hi < 1.0)) throw InvalidArgument("chebyshev_R_samples: need 0 < lo < hi < 1");
  const double root = std::sqrt(T);
  const double mid = 0.5 * (lo + hi) * root;
  const double half = 0.5 * (hi - lo) * root;
  std::vector<double> R(count);
  if (count == 1) {
    R[0] = mid;
    return R;
  }
  for (std::size_t k = 0; k < count; ++k) {
    R[k] = mid - half * std::cos(pi * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  R.front() = lo * root;
  R.back() = hi * root;
  return R;
}

double poon_phi(const ExtendedSlice& U, const MonotonicityConfig& cfg, double R) {
  const double tau = tau_of(cfg, R, "poon_phi");
  require_weight(U.ygrid(), cfg.a, "poon_phi");
  const auto K = kernel_weights(U.spatial(), U.ygrid(), cfg, tau);
  return kernel_integral(K, U.ygrid().size(), [&](std::size_t l, std::size_t j) { return std::norm(U(l, j)); });
}

double poon_phi(const ExtendedSolution& U, const MonotonicityConfig& cfg, double R) {
  tau_of(cfg, R, "poon_phi");
  return poon_phi(U.at(R * R), cfg, R);
}

bool kernel_underresolved(const SpatialGrid& spatial, const YGrid& ygrid, const MonotonicityConfig& cfg,
                          double R) {
  const double width = std::sqrt(2.0 * tau_of(cfg, R, "kernel_underresolved"));
  const auto y = ygrid.levels();
  const auto it = std::lower_bound(y.begin(), y.end(), cfg.X0.y);
  std::size_t l = static_cast<std::size_t>(it - y.begin());
  l = std::clamp<std::size_t>(l, 1, y.size() - 1);
  const double dy = y[l] - y[l - 1];
  return width < 2.0 * std::max(spatial.h(), dy);
}

double gradient_energy(const ExtendedSlice& U, const MonotonicityConfig& cfg, double R) {
  const double tau = tau_of(cfg, R, "gradient_energy");
  require_weight(U.ygrid(), cfg.a, "gradient_energy");
  const auto K = kernel_weights(U.spatial(), U.ygrid(), cfg, tau);
  const auto g2 = gradient_squared(U);
  const std::size_t P = U.spatial().size();
  return kernel_integral(K, U.ygrid().size(), [&](std::size_t l, std::size_t j) { return g2[l * P + j]; });
}

double boundary_energy(const ExtendedSlice& U, const Potential& V, const MonotonicityConfig& cfg, double R) {
  const double tau = tau_of(cfg, R, "boundary_energy");
  if (!V) return 0.0;
  const auto K = kernel_weights(U.spatial(), U.ygrid(), cfg, tau);
  const double t = R * R;
  std::vector<double> row(K.gx.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    row[j] = K.gx[j] * V(U.spatial().point(j), t).real() * std::norm(U(0, j));
  }
  return K.gy_boundary * pairwise_sum(row);
}

double lab_boundary_residual(const ExtendedSlice& U, const Potential& V, double t) {
  const auto dn = weighted_normal_derivative(U);
  double r = 0.0;
  for (std::size_t j = 0; j < dn.size(); ++j) {
    const Complex vu = V ? V(U.spatial().point(j), t) * U(0, j) : Complex(0.0);
    r = std::max(r, std::abs(dn[j] - vu));
  }
  return r;
}

IdentityReport phi_derivative_check(const ExtendedSolution& U, const Potential& V,
                                    const MonotonicityConfig& cfg, double R, double dR,
                                    double residual_tol) {
  cfg.validate();
  tau_of(cfg, R, "phi_derivative_check");
  const double root = std::sqrt(cfg.T);
  if (dR <= 0.0) dR = 1e-3 * root;
  if (!(R - dR > 0.0 && R + dR < root)) {
    throw InvalidArgument("phi_derivative_check: R +- dR must stay inside (0, sqrt(T))");
  }

  const std::array<double, 3> Rs{R - dR, R, R + dR};
  std::vector<std::optional<ExtendedSlice>> slices(3);
  parallel_for(3, [&](std::size_t i) { slices[i].emplace(U.at(Rs[i] * Rs[i])); });

  IdentityReport rep;
  rep.R = R;
  rep.phi = poon_phi(*slices[1], cfg, R);
  rep.phi_prime_fd = (poon_phi(*slices[2], cfg, Rs[2]) - poon_phi(*slices[0], cfg, Rs[0])) / (2.0 * dR);
  rep.gradient_term = -4.0 * R * gradient_energy(*slices[1], cfg, R);
  rep.boundary_term = -4.0 * R * boundary_energy(*slices[1], V, cfg, R);
  rep.rhs = rep.gradient_term + rep.boundary_term;
  rep.relative_mismatch = relative_gap(rep.phi_prime_fd, rep.rhs);
  rep.boundary_residual = lab_boundary_residual(*slices[1], V, R * R);
  rep.residual_bound = residual_tol * boundary_sup(*slices[1]);
  rep.meaningful = rep.boundary_residual <= rep.residual_bound;
  return rep;
}

double smallness_value(const MonotonicityConfig& cfg) {
  return cfg.C1 * std::pow(cfg.T, 0.5 * (1.0 - cfg.a));
}

InequalityReport trace_bound_check(const ExtendedSolution& U, const Potential& V,
                                   const MonotonicityConfig& cfg, double R) {
  cfg.validate();
  const double tau = tau_of(cfg, R, "trace_bound_check");
  const ExtendedSlice slice = U.at(R * R);

  InequalityReport rep;
  rep.R = R;
  rep.phi = poon_phi(slice, cfg, R);
  rep.gradient_energy = gradient_energy(slice, cfg, R);
  rep.lhs = std::abs(4.0 * R * boundary_energy(slice, V, cfg, R));
  const double factor = R * (std::pow(tau, -0.5 * (1.0 + cfg.a)) * rep.phi +
                             std::pow(tau, 0.5 * (1.0 - cfg.a)) * rep.gradient_energy);
  if (rep.lhs == 0.0) {
    rep.empirical_C1 = 0.0;
  } else {
    rep.empirical_C1 = factor > 0.0 ? rep.lhs / factor : std::numeric_limits<double>::infinity();
  }
  rep.configured_C1 = cfg.C1;
  rep.configured_suffices = rep.lhs <= cfg.C1 * factor * (1.0 + 1e-12);
  rep.smallness_value = smallness_value(cfg);
  rep.smallness_holds = rep.smallness_value < 4.0;
  return rep;
}

MonotonicityReport envelope_F(const std::vector<double>& phi, const std::vector<double>& phi_prime,
                              double phi0, const MonotonicityConfig& cfg, double tol) {
  cfg.validate();
  const std::size_t m = cfg.R_samples.size();
  if (phi.size() != m || phi_prime.size() != m) {
    throw InvalidArgument("envelope_F: phi and phi' must be aligned with R_samples");
  }
  MonotonicityReport rep;
  rep.tolerance = tol;
  rep.R = cfg.R_samples;
  rep.phi = phi;
  rep.phi_prime_fd = phi_prime;
  rep.F.resize(m);
  rep.inequality_rhs.resize(m);
  rep.F_increase.assign(m, false);
  rep.inequality_violation.assign(m, false);
  rep.violation.assign(m, false);
  rep.underresolved.assign(m, false);

  const double ex = 0.5 * (1.0 - cfg.a);
  for (std::size_t k = 0; k < m; ++k) {
    const double R = cfg.R_samples[k];
    const double tau = cfg.T - R * R;
    rep.F[k] = std::exp(cfg.C * std::pow(tau, ex)) * phi[k];
    rep.inequality_rhs[k] = cfg.C1 * R * std::pow(tau, -0.5 * (1.0 + cfg.a)) * phi[k];
  }
  rep.phi0 = phi0;
  rep.F0 = std::exp(cfg.C * std::pow(cfg.T, ex)) * phi0;

  const double F_ref = m > 0 ? rep.F[0] : 0.0;
  const double slope_scale = m > 0 ? phi[0] / std::sqrt(cfg.T) : 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0) rep.F_increase[k] = rep.F[k] > rep.F[k - 1] + tol * F_ref;
    const double slack =
        tol * std::max({std::abs(phi_prime[k]), std::abs(rep.inequality_rhs[k]), slope_scale});
    rep.inequality_violation[k] = phi_prime[k] > rep.inequality_rhs[k] + slack;
    rep.violation[k] = rep.F_increase[k] || rep.inequality_violation[k];
    if (rep.F[k] > rep.F0 + tol * std::max(rep.F0, F_ref)) rep.endpoint_chain = false;
  }

  rep.smallness_value = smallness_value(cfg);
  rep.smallness_holds = rep.smallness_value < 4.0;
  const bool any = std::find(rep.violation.begin(), rep.violation.end(), true) != rep.violation.end();
  if (!rep.smallness_holds) {
    rep.verdict = "inconclusive";
  } else if (any || !rep.endpoint_chain) {
    rep.verdict = "violated";
  } else {
    rep.verdict = "monotone";
  }
  return rep;
}

MonotonicityReport monotonicity_scan(const ExtendedSolution& U, const MonotonicityConfig& cfg, double tol) {
  cfg.validate();
  const std::size_t m = cfg.R_samples.size();
  const double root = std::sqrt(cfg.T);

  // task 3k + {0, 1, 2}: R - d, R, R + d; task 3m: R = 0
  std::vector<double> Rs(3 * m + 1, 0.0);
  std::vector<double> deltas(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double R = cfg.R_samples[k];
    deltas[k] = std::min({1e-3 * root, 0.5 * R, 0.5 * (root - R)});
    Rs[3 * k] = R - deltas[k];
    Rs[3 * k + 1] = R;
    Rs[3 * k + 2] = R + deltas[k];
  }
  std::vector<double> values(Rs.size());
  parallel_for(Rs.size(), [&](std::size_t i) { values[i] = poon_phi(U, cfg, Rs[i]); });

  std::vector<double> phi(m), phi_prime(m);
  for (std::size_t k = 0; k < m; ++k) {
    phi[k] = values[3 * k + 1];
    phi_prime[k] = (values[3 * k + 2] - values[3 * k]) / (2.0 * deltas[k]);
  }
  auto rep = envelope_F(phi, phi_prime, values[3 * m], cfg, tol);
  for (std::size_t k = 0; k < m; ++k) {
    rep.underresolved[k] = kernel_underresolved(U.spatial(), U.ygrid(), cfg, cfg.R_samples[k]);
  }
  return rep;
}

OrderEstimate vanishing_order(const GridFunction& u, const Point& x0, double t0,
                              const std::vector<double>& r_list) {
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (!(r_list[i] > 0.0)) throw InvalidArgument("vanishing_order: radii must be positive");
    if (i > 0 && !(r_list[i] < r_list[i - 1])) {
      throw InvalidArgument("vanishing_order: radii must be strictly decreasing");
    }
  }
  OrderEstimate est;
  std::vector<double> lx, ly;
  for (double r : r_list) {
    double s;
    try {
      s = cylinder_sup(u, x0, t0, r);
    } catch (const InvalidArgument&) {
      continue;
    }
    est.radii.push_back(r);
    est.sups.push_back(s);
    if (s > 0.0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(s));
    }
  }
  if (!est.radii.empty() && lx.empty()) {
    est.identically_zero = true;
    est.slope = std::numeric_limits<double>::infinity();
    est.status = "vanishes identically at resolution";
    return est;
  }
  if (lx.size() < 3) throw InvalidArgument("vanishing_order: fewer than 3 usable radii");

  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  est.used = lx.size();
  est.status = "estimated";
  return est;
}

PropagationReport propagation_experiment(const PropagationScenario& scenario, const MonotonicityConfig& cfg) {
  cfg.validate();
  require_weight(scenario.initial.ygrid(), scenario.params.a, "propagation_experiment");
  if (std::abs(scenario.params.a - cfg.a) > 1e-14) {
    throw InvalidArgument("propagation_experiment: scenario and config disagree on a");
  }
  if (scenario.windows == 0) throw InvalidArgument("propagation_experiment: need at least one window");

  PropagationReport rep;
  for (const auto& v : scenario.initial.values()) rep.scale = std::max(rep.scale, std::abs(v));
  rep.zero_data = rep.scale == 0.0;
  rep.phi_tolerance = 1e-12 * std::max(1.0, rep.scale * rep.scale);
  rep.probe_tolerance = 1e-6 * std::max(1.0, rep.scale);
  rep.smallness_value = smallness_value(cfg);
  rep.smallness_holds = rep.smallness_value < 4.0;

  std::vector<HalfSpacePoint> probes = scenario.probes;
  if (probes.empty()) probes.push_back(cfg.X0);

  const std::array<double, 3> taus{0.08 * cfg.T, 0.04 * cfg.T, 0.02 * cfg.T};
  const std::size_t m = cfg.R_samples.size();

  ExtendedSlice start = scenario.initial;
  for (std::size_t w = 0; w < scenario.windows; ++w) {
    SemigroupEvolution ev(start, scenario.params, scenario.semigroup);
    WindowReport win;
    win.index = w;
    win.t_start = static_cast<double>(w) * cfg.T;

    // tasks: m samples, phi(0), three near-endpoint values
    std::vector<double> Rs(m + 4, 0.0);
    for (std::size_t k = 0; k < m; ++k) Rs[k] = cfg.R_samples[k];
    for (std::size_t i = 0; i < 3; ++i) Rs[m + 1 + i] = std::sqrt(cfg.T - taus[i]);
    std::vector<double> values(Rs.size());
    parallel_for(Rs.size(), [&](std::size_t i) { values[i] = poon_phi(ev, cfg, Rs[i]); });

    win.phi.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
    win.phi0 = values[m];
    const auto env = envelope_F(win.phi, std::vector<double>(m, 0.0), win.phi0, cfg);
    win.F = env.F;
    win.monotone = env.endpoint_chain &&
                   std::find(env.F_increase.begin(), env.F_increase.end(), true) == env.F_increase.end();
    win.sup_phi = std::max(win.phi0, m > 0 ? *std::max_element(win.phi.begin(), win.phi.end()) : 0.0);

    double ext = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      double l = 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != i) l *= (0.0 - taus[j]) / (taus[i] - taus[j]);
      }
      ext += l * values[m + 1 + i];
    }
    win.endpoint_extrapolated = ext;
    win.endpoint_direct = std::norm(ev.point(cfg.X0, cfg.T));
    win.endpoint_relative_gap = relative_gap(win.endpoint_extrapolated, win.endpoint_direct);
    for (const auto& p : probes) win.probe_max = std::max(win.probe_max, std::abs(ev.point(p, cfg.T)));

    rep.windows.push_back(std::move(win));
    if (w + 1 < scenario.windows) start = ev.at(cfg.T);
  }

  if (!rep.smallness_holds) {
    rep.verdict = "inconclusive";
  } else if (rep.zero_data) {
    bool ok = true;
    for (const auto& win : rep.windows) {
      ok = ok && win.sup_phi <= rep.phi_tolerance && win.probe_max <= rep.probe_tolerance &&
           win.endpoint_direct <= rep.phi_tolerance;
    }
    rep.verdict = ok ? "zeros propagate forward" : "zeros did not propagate";
  } else {
    bool ok = true;
    for (const auto& win : rep.windows) ok = ok && win.monotone && win.endpoint_extrapolated > rep.phi_tolerance;
    rep.verdict = ok ? "control: F decreasing and bounded away from zero" : "control: unexpected behaviour";
  }
  return rep;
}

}  // namespace fracheat
