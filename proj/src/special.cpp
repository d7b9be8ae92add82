#include "fracheat/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracheat/errors.hpp"

namespace fracheat {
namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

void check_i_order(double nu) {
  if (!(nu > -1.0 && nu <= 20.0)) {
    std::ostringstream msg;
    msg << "bessel_i: order " << nu << " outside supported range (-1, 20]";
    throw InvalidArgument(msg.str());
  }
}

// Hankel coefficient ratio: a_k / a_{k-1} = (4 nu^2 - (2k-1)^2) / (8k).
double hankel_ratio(double nu, int k) {
  const double odd = 2.0 * k - 1.0;
  return (4.0 * nu * nu - odd * odd) / (8.0 * k);
}

// I_mu(z) e^{z} for complex z by the power series (principal branch of (z/2)^mu).
cplx bessel_i_series_complex_scaled(double mu, cplx z) {
  const cplx half = 0.5 * z;
  const cplx quarter_sq = half * half;
  cplx term = std::exp(mu * std::log(half) - std::lgamma(1.0 + mu) + z);
  // lgamma loses the sign of Gamma for negative arguments in (-1, 0).
  if (1.0 + mu < 0.0) term = -term;
  cplx sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= quarter_sq / (static_cast<double>(k) * (k + mu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw InvalidArgument("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

namespace detail {

double bessel_i_normalized_series(double nu, double z) {
  // sum_k 2^{-nu} (z/2)^{2k} / (k! Gamma(k+1+nu)) times e^{-z}; every term is
  // positive for nu > -1, so the sum has no cancellation.
  double term = std::exp(-nu * std::log(2.0) - std::lgamma(1.0 + nu) - z);
  double sum = term;
  const double q = 0.25 * z * z;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double bessel_i_scaled_asymptotic(double nu, double z) {
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    term *= -hankel_ratio(nu, k) / z;
    const double mag = std::abs(term);
    if (mag >= prev) break;  // asymptotic series started to diverge
    sum += term;
    prev = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * pi * z);
}

}  // namespace detail

double bessel_i_scaled(double nu, double z) {
  check_i_order(nu);
  if (!(z >= 0.0) || !std::isfinite(z)) throw InvalidArgument("bessel_i_scaled: z must be >= 0");
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (z <= detail::bessel_i_crossover) {
    return std::exp(nu * std::log(z)) * detail::bessel_i_normalized_series(nu, z);
  }
  return detail::bessel_i_scaled_asymptotic(nu, z);
}

double bessel_i_normalized(double nu, double z) {
  check_i_order(nu);
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw InvalidArgument("bessel_i_normalized: z must be >= 0");
  }
  if (z <= detail::bessel_i_crossover) return detail::bessel_i_normalized_series(nu, z);
  return std::exp(-nu * std::log(z)) * detail::bessel_i_scaled_asymptotic(nu, z);
}

std::complex<double> bessel_k_scaled(double nu, std::complex<double> z) {
  if (!(nu > 0.0 && nu < 1.0)) throw InvalidArgument("bessel_k_scaled: order must lie in (0, 1)");
  if (!(z.real() > 0.0)) throw InvalidArgument("bessel_k_scaled: requires Re z > 0");
  const double r = std::abs(z);

  if (r >= 25.0) {
    // e^z K_nu(z) ~ sqrt(pi / 2z) sum a_k(nu) z^{-k}
    cplx term = 1.0;
    cplx sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
      term *= hankel_ratio(nu, k) / z;
      const double mag = std::abs(term);
      if (mag >= prev) break;
      sum += term;
      prev = mag;
      if (mag < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(pi / (2.0 * z)) * sum;
  }

  if (r <= 2.0) {
    // K_nu = pi / (2 sin(nu pi)) (I_{-nu} - I_nu)
    const cplx diff = bessel_i_series_complex_scaled(-nu, z) - bessel_i_series_complex_scaled(nu, z);
    return pi / (2.0 * std::sin(nu * pi)) * diff;
  }

  // e^z K_nu(z) = int_0^inf exp(-z (cosh s - 1)) cosh(nu s) ds, trapezoid rule;
  // the integrand decays double exponentially so the rule converges geometrically.
  const double re = z.real();
  const double s_max = std::acosh(1.0 + 46.0 / re);
  const double h = std::min(0.05, 0.3 / (std::abs(z) * std::sinh(s_max) + 1.0));
  const auto steps = static_cast<long>(std::ceil(s_max / h));
  if (steps > 20'000'000) throw QuadratureError("bessel_k_scaled: argument too close to the imaginary axis", 0.0);
  cplx sum = 0.5;  // s = 0 node
  for (long i = 1; i <= steps; ++i) {
    const double s = static_cast<double>(i) * h;
    sum += std::exp(-z * (std::cosh(s) - 1.0)) * std::cosh(nu * s);
  }
  return h * sum;
}

}  // namespace fracheat
