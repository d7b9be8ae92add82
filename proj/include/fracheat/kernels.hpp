#pragma once

// Heat kernels of the extension problem: the Gauss-Weierstrass kernel in x,
// the Neumann heat kernel of the Bessel operator d_yy + (a/y) d_y on
// (R^+, y^a dy), their product G, and the semigroup P^(a)_t it generates.

#include "fracheat/extended_field.hpp"
#include "fracheat/spacetime.hpp"

namespace fracheat {

/// The fractional order s and the extension weight exponent a = 1 - 2s,
/// together with the two Gamma-ratio constants tying the weighted normal
/// derivative to H^s:
///   c_np = 2^{-a} Gamma((1-a)/2) / Gamma((1+a)/2)   (c_np d_y^a U = -H^s u)
///   c_wk = 2^{a}  Gamma((1+a)/2) / Gamma((1-a)/2)   (d_y^a U = c_wk V u)
struct ExtensionParams {
  double s;
  double a;
  double c_np;
  double c_wk;

  static ExtensionParams from_s(double s);
  static ExtensionParams from_a(double a);
};

struct HalfSpacePoint {
  Point x{0.0, 0.0};
  double y = 0.0;
};

struct KernelQuery {
  HalfSpacePoint source;  // X1
  HalfSpacePoint target;  // X
  double t;
  ExtensionParams params;
  int n = 1;
};

/// (4 pi t)^{-n/2} exp(-|x1 - x|^2 / 4t).
double gauss_weierstrass(const Point& x1, const Point& x, double t, int n);

/// p^(a)(y1, y, t), evaluated as (2t)^{-(a+1)/2} [z^{-nu} e^{-z} I_nu(z)] e^{-(y1-y)^2/4t}
/// with nu = (a-1)/2 and z = y1 y / 2t, so the exponentials never overflow.
/// At y1 y = 0 this is (2t)^{-(a+1)/2} 2^{(1-a)/2} e^{-(y1^2+y^2)/4t} / Gamma((1+a)/2).
double bessel_heat_kernel(double y1, double y, double t, double a);

/// log p^(a)(y1, y, t); finite wherever the kernel underflows.
double log_bessel_heat_kernel(double y1, double y, double t, double a);

/// G(X1, X, t) = p(x1, x, t) p^(a)(y1, y, t).
double product_kernel(const KernelQuery& q);

/// Row sums of the discrete y-kernel: max over levels y_i <= inner_fraction * Y_max
/// of |sum_j p^(a)(y_i, y_j, t) w_j - 1|.
double kernel_mass_error(const YGrid& ygrid, double t, double inner_fraction = 0.5);

struct SemigroupOptions {
  double mass_tol = 1e-6;       // allowed discrete mass defect on inner levels
  double inner_fraction = 0.5;  // levels checked: y <= inner_fraction * Y_max
};

/// P^(a)_t phi on the slice's own nodes: Gaussian convolution in x (spectral,
/// periodic) and the weighted y-quadrature against p^(a). Throws
/// QuadratureError (carrying the mass defect) when the discrete kernel does
/// not conserve mass to options.mass_tol on the inner levels.
ExtendedSlice semigroup_apply(const ExtendedSlice& phi, double t, const ExtensionParams& params,
                              const SemigroupOptions& options = {});

/// P^(a)_t phi at an arbitrary point X1 by direct tensor quadrature.
Complex semigroup_eval_point(const ExtendedSlice& phi, const HalfSpacePoint& X1, double t,
                             const ExtensionParams& params);

}  // namespace fracheat
