#pragma once

// The fractional heat operator H^s = (d_t - Delta)^s on periodic space-time
// grids, computed two independent ways: by its Fourier symbol
// (4 pi^2 |xi|^2 + 2 pi i sigma)^s (principal branch) and by the
// Balakrishnan integral over the evolutive semigroup P^H_tau.

#include <string>
#include <vector>

#include "fracheat/spacetime.hpp"

namespace fracheat {

/// lambda^s on the principal branch; 0 at lambda = 0.
Complex hs_symbol(Complex lambda, double s);

/// H^s f by the Fourier symbol. Accepts 0 < s <= 1 (s = 1 is d_t - Delta).
GridFunction apply_hs_spectral(const GridFunction& f, double s);

/// ||f||^2 + ||H^s f||^2 in the weighted l2 norms of the grid.
double sobolev2s_norm_squared(const GridFunction& f, double s);
/// Square root of sobolev2s_norm_squared; never smaller than l2_norm(f).
double sobolev2s_norm(const GridFunction& f, double s);

/// P^H_tau f(x, t) = int G(x - y, tau) f(y, t - tau) dy, applied spectrally as
/// multiplication by exp(-(4 pi^2 |xi|^2 + 2 pi i sigma) tau).
GridFunction evolutive_semigroup(const GridFunction& f, double tau);

/// Knobs of the Balakrishnan quadrature (see balakrishnan_integral).
struct BalakrishnanQuadrature {
  double tau_split = 0.0;    // upper bound for the series/panel split; <= 0 means h_t
  std::size_t panels = 4096; // panel budget per mode
  double panel_growth = 2.0; // geometric ratio of consecutive panels
  double tail_eps = 1e-16;   // drop the tail once exp(-Re(lambda) tau) < tail_eps
  double tolerance = 1e-8;   // relative error estimate that must be certified per mode
};

struct BalakrishnanResult {
  GridFunction value;
  double error_estimate;  // weighted-l2 error bound relative to ||value||
};

/// int_0^inf tau^{-1-s} (exp(-lambda tau) - 1) dtau for Re lambda >= 0.
///
/// (0, tau0]: the integrand's Taylor series integrated term by term, with
/// tau0 = min(tau_split, 1/|lambda|). [tau0, tau_end]: Gauss-Legendre panels
/// growing geometrically, capped at two radians of exp(-lambda tau).
/// Beyond tau_end the remainder is either below tail_eps or summed from its
/// integration-by-parts expansion (|lambda| tau_end >= 40).
/// `error` receives an absolute error estimate.
Complex balakrishnan_integral(Complex lambda, double s, const BalakrishnanQuadrature& quad,
                              double tau_split, double* error = nullptr);

/// H^s f = -(s / Gamma(1-s)) int_0^inf tau^{-1-s} (P^H_tau f - f) dtau, 0 < s < 1.
/// Throws QuadratureError when a mode cannot be certified to quad.tolerance.
BalakrishnanResult apply_hs_balakrishnan(const GridFunction& f, double s,
                                         const BalakrishnanQuadrature& quad = {});

struct ResidualNorms {
  double sup;
  double l2;
};

/// ||H^s u - V u|| in sup and weighted-l2 norms.
ResidualNorms residual_norm(const GridFunction& u, const GridFunction& V, double s);

struct NormCheck {
  std::string name;
  double value;
  bool checked;  // whether this norm is compared against K
  bool pass;
};

struct ValidationReport {
  double s;
  double K;
  std::vector<NormCheck> norms;
  bool pass;
  int stencil_width;
  std::string note;
};

/// Sup norms of V and its centered finite-difference derivatives: the C^1 norm
/// for s >= 1/2; the C^2 norm and sup |<grad_x V, x>| for s < 1/2.
ValidationReport validate_potential(const GridFunction& V, double s, double K);

}  // namespace fracheat
