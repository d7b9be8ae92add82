#pragma once

#include <complex>

namespace fracheat {

/// Gamma function for x > 0. Throws InvalidArgument otherwise.
double gamma_fn(double x);

/// e^{-z} I_nu(z) for nu in (-1, 20] and real z >= 0.
///
/// Power series for z <= 20, Hankel large-argument expansion beyond. At z = 0
/// the value is 1 (nu = 0), 0 (nu > 0) or +inf (nu < 0, where I_nu ~ z^nu).
double bessel_i_scaled(double nu, double z);

/// z^{-nu} e^{-z} I_nu(z); finite at z = 0 where it equals 2^{-nu} / Gamma(1 + nu).
double bessel_i_normalized(double nu, double z);

/// e^{z} K_nu(z) for nu in (0, 1) and Re z > 0.
std::complex<double> bessel_k_scaled(double nu, std::complex<double> z);

namespace detail {
// Exposed so the two I_nu branches can be overlap-tested.
double bessel_i_normalized_series(double nu, double z);
double bessel_i_scaled_asymptotic(double nu, double z);
inline constexpr double bessel_i_crossover = 20.0;
}  // namespace detail

}  // namespace fracheat
