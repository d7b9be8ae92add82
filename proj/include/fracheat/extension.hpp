#pragma once

// The degenerate extension problem
//   d_t(y^a U) - div(y^a grad U) = 0 in R^{n+1} x (0, inf),  U(., 0) = u,
// solved mode by mode: for lambda = 4 pi^2 |xi|^2 + 2 pi i sigma the profile
// solves (y^a U')' = lambda y^a U with U(0) = u_hat and decay as y -> inf.
// Also the weighted normal derivative lim y^a d_y U and the Dirichlet-to-Neumann
// check against H^s.

#include <string>
#include <vector>

#include "fracheat/extended_field.hpp"
#include "fracheat/kernels.hpp"
#include "fracheat/spacetime.hpp"
#include "fracheat/ygrid.hpp"

namespace fracheat {

enum class ProfileBackend {
  finite_difference,  // conservative FD on the YGrid, U(Y_max) = 0
  bessel_k,           // closed form (2^{1-s}/Gamma(s)) z^s K_s(z), z = sqrt(lambda) y
};

struct ExtendOptions {
  ProfileBackend backend = ProfileBackend::finite_difference;
  /// Richardson steps over the nested grids J, J/2, J/4, ...: each one cancels
  /// the next even power of 1/J. Stops early once J/2 would drop below 32.
  int richardson_levels = 2;
};

/// Smallest nonzero Re sqrt(lambda) over the grid's modes.
double min_decay_rate(const SpaceTimeGrid& grid);
/// Y_max = 8 / min_decay_rate: every nonzero mode has decayed by e^-8 at the top.
double required_y_max(const SpaceTimeGrid& grid);
/// YGrid with Y_max = required_y_max and grading 2/(1+a).
YGrid extension_ygrid(const SpaceTimeGrid& grid, const ExtensionParams& params, std::size_t J = 256);

/// Profile of one mode with unit boundary value at the YGrid levels.
std::vector<Complex> mode_profile(Complex lambda, const ExtensionParams& params, const YGrid& ygrid,
                                  const ExtendOptions& opts = {});

/// Solves the extension problem for boundary datum u. Throws InvalidArgument if
/// the YGrid is shorter than required_y_max or its weight does not match params.
ExtendedField extend(const GridFunction& u, const ExtensionParams& params, const YGrid& ygrid,
                     const ExtendOptions& opts = {});

/// lim_{y->0} y^a d_y U for one column U(y_j), by fitting
/// U(y) - U(0) = c y^{1-a}/(1-a) + d y^2 + e y^{3-a} on three near-boundary levels.
Complex normal_derivative_column(const YGrid& ygrid, const std::function<Complex(std::size_t)>& column);

GridFunction weighted_normal_derivative(const ExtendedField& U);
std::vector<Complex> weighted_normal_derivative(const ExtendedSlice& U);

struct DtNReport {
  double s;
  double discrepancy;   // ||c_np d_y^a U + H^s u|| / ||H^s u||
  double lhs_norm;
  double rhs_norm;
  std::size_t worst_mode;
  Complex worst_lambda;
  double worst_mode_error;  // |mode error| / max_mode |H^s u mode|
  GridFunction lhs;         // c_np d_y^a U
  GridFunction rhs;         // -H^s u
};

/// Compares c_np d_y^a U with -H^s u for U = extend(u).
DtNReport dtn_verify(const GridFunction& u, double s, const YGrid& ygrid, const ExtendOptions& opts = {});

/// ||d_y^a U - c_wk V u||_inf on the boundary.
double boundary_residual(const ExtendedField& U, const GridFunction& u, const GridFunction& V,
                         const ExtensionParams& params);
double boundary_residual(const ExtendedSlice& U, std::span<const Complex> u, std::span<const Complex> V,
                         const ExtensionParams& params);

}  // namespace fracheat
