#include "fracheat/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/parallel.hpp"
#include "fracheat/special.hpp"

namespace fracheat {
namespace {

using std::numbers::pi;

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidArgument(std::string(who) + ": time must be positive");
  }
}

void require_weight(double a) {
  if (!(a > -1.0 && a < 1.0)) throw InvalidArgument("weight exponent a must lie in (-1, 1)");
}

// M_ij = p^(a)(y_i, y_j, t) w_j
std::vector<double> kernel_matrix(const YGrid& yg, double t) {
  const std::size_t L = yg.size();
  std::vector<double> M(L * L);
  parallel_for(L, [&](std::size_t i) {
    for (std::size_t j = 0; j < L; ++j) {
      M[i * L + j] = bessel_heat_kernel(yg.level(i), yg.level(j), t, yg.a()) * yg.weights()[j];
    }
  });
  return M;
}

double max_inner_mass_error(const YGrid& yg, const std::vector<double>& M, double inner_fraction) {
  const std::size_t L = yg.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    if (yg.level(i) > inner_fraction * yg.Y_max()) break;
    double row = 0.0;
    for (std::size_t j = 0; j < L; ++j) row += M[i * L + j];
    worst = std::max(worst, std::abs(row - 1.0));
  }
  return worst;
}

}  // namespace

ExtensionParams ExtensionParams::from_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("ExtensionParams: s must lie in (0, 1)");
  const double a = 1.0 - 2.0 * s;
  const double g_minus = std::tgamma(0.5 * (1.0 - a));
  const double g_plus = std::tgamma(0.5 * (1.0 + a));
  return ExtensionParams{s, a, std::pow(2.0, -a) * g_minus / g_plus,
                         std::pow(2.0, a) * g_plus / g_minus};
}

ExtensionParams ExtensionParams::from_a(double a) {
  require_weight(a);
  return from_s(0.5 * (1.0 - a));
}

double gauss_weierstrass(const Point& x1, const Point& x, double t, int n) {
  require_positive_time(t, "gauss_weierstrass");
  if (n != 1 && n != 2) throw InvalidArgument("gauss_weierstrass: n must be 1 or 2");
  double d2 = (x1[0] - x[0]) * (x1[0] - x[0]);
  if (n == 2) d2 += (x1[1] - x[1]) * (x1[1] - x[1]);
  return std::exp(-0.5 * n * std::log(4.0 * pi * t) - d2 / (4.0 * t));
}

double log_bessel_heat_kernel(double y1, double y, double t, double a) {
  require_positive_time(t, "bessel_heat_kernel");
  require_weight(a);
  if (!(y1 >= 0.0) || !(y >= 0.0)) throw InvalidArgument("bessel_heat_kernel: y, y1 must be >= 0");
  const double nu = 0.5 * (a - 1.0);
  const double z = y1 * y / (2.0 * t);
  const double diff = y1 - y;
  return -0.5 * (a + 1.0) * std::log(2.0 * t) + std::log(bessel_i_normalized(nu, z)) -
         diff * diff / (4.0 * t);
}

double bessel_heat_kernel(double y1, double y, double t, double a) {
  return std::exp(log_bessel_heat_kernel(y1, y, t, a));
}

double product_kernel(const KernelQuery& q) {
  return gauss_weierstrass(q.source.x, q.target.x, q.t, q.n) *
         bessel_heat_kernel(q.source.y, q.target.y, q.t, q.params.a);
}

double kernel_mass_error(const YGrid& ygrid, double t, double inner_fraction) {
  require_positive_time(t, "kernel_mass_error");
  return max_inner_mass_error(ygrid, kernel_matrix(ygrid, t), inner_fraction);
}

ExtendedSlice semigroup_apply(const ExtendedSlice& phi, double t, const ExtensionParams& params,
                              const SemigroupOptions& options) {
  require_positive_time(t, "semigroup_apply");
  const YGrid& yg = phi.ygrid();
  if (std::abs(yg.a() - params.a) > 1e-14) {
    throw GridMismatch("semigroup_apply: YGrid weight exponent differs from params.a");
  }
  const auto M = kernel_matrix(yg, t);
  const double defect = max_inner_mass_error(yg, M, options.inner_fraction);
  if (defect > options.mass_tol) {
    std::ostringstream msg;
    msg << "semigroup_apply: y-quadrature mass defect " << defect << " exceeds " << options.mass_tol
        << " at t = " << t << " (refine J or enlarge Y_max)";
    throw QuadratureError(msg.str(), defect);
  }

  const SpatialGrid& sg = phi.spatial();
  ExtendedSlice smoothed = phi;
  const double four_pi2_t = 4.0 * pi * pi * t;
  parallel_for(yg.size(), [&](std::size_t l) {
    apply_spatial_multiplier(sg, smoothed.plane(l), [&](const Point& xi) {
      double xi2 = xi[0] * xi[0] + (sg.n == 2 ? xi[1] * xi[1] : 0.0);
      return Complex(std::exp(-four_pi2_t * xi2), 0.0);
    });
  });

  const std::size_t L = yg.size();
  const std::size_t S = sg.size();
  ExtendedSlice out(sg, yg);
  parallel_for(L, [&](std::size_t i) {
    auto dst = out.plane(i);
    for (std::size_t l = 0; l < L; ++l) {
      const double m = M[i * L + l];
      if (m == 0.0) continue;
      auto src = smoothed.plane(l);
      for (std::size_t j = 0; j < S; ++j) dst[j] += m * src[j];
    }
  });
  return out;
}

Complex semigroup_eval_point(const ExtendedSlice& phi, const HalfSpacePoint& X1, double t,
                             const ExtensionParams& params) {
  require_positive_time(t, "semigroup_eval_point");
  const YGrid& yg = phi.ygrid();
  if (std::abs(yg.a() - params.a) > 1e-14) {
    throw GridMismatch("semigroup_eval_point: YGrid weight exponent differs from params.a");
  }
  const SpatialGrid& sg = phi.spatial();
  std::vector<double> gx(sg.size());
  for (std::size_t j = 0; j < sg.size(); ++j) {
    const double d = sg.periodic_distance(X1.x, sg.point(j));
    gx[j] = std::exp(-0.5 * sg.n * std::log(4.0 * pi * t) - d * d / (4.0 * t)) * sg.cell_volume();
  }
  Complex total = 0.0;
  for (std::size_t l = 0; l < yg.size(); ++l) {
    const double wy = bessel_heat_kernel(X1.y, yg.level(l), t, params.a) * yg.weights()[l];
    if (wy == 0.0) continue;
    Complex row = 0.0;
    auto plane = phi.plane(l);
    for (std::size_t j = 0; j < sg.size(); ++j) row += gx[j] * plane[j];
    total += wy * row;
  }
  return total;
}

}  // namespace fracheat
