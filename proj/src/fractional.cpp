#include "fracheat/fractional.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/parallel.hpp"

namespace fracheat {
namespace {

using std::numbers::pi;

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* who) {
  if (!(a.grid() == b.grid())) throw GridMismatch(std::string(who) + ": fields live on different grids");
}

template <unsigned N>
Complex gauss_panel(double lo, double hi, const std::function<Complex(double)>& f) {
  using rule = boost::math::quadrature::gauss<double, N>;
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      sum += w[i] * f(c);
    } else {
      sum += w[i] * (f(c + h * x[i]) + f(c - h * x[i]));
    }
  }
  return h * sum;
}

}  // namespace

Complex hs_symbol(Complex lambda, double s) {
  if (lambda == Complex(0.0, 0.0)) return 0.0;
  if (s == 1.0) return lambda;
  return std::pow(lambda, s);
}

GridFunction apply_hs_spectral(const GridFunction& f, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("apply_hs_spectral: s must lie in (0, 1]");
  const FrequencyGrid freq(f.grid());
  return apply_multiplier(f, [&](std::size_t i) { return hs_symbol(freq.heat_symbol(i), s); });
}

double sobolev2s_norm_squared(const GridFunction& f, double s) {
  const double base = l2_norm(f);
  const double top = l2_norm(apply_hs_spectral(f, s));
  return base * base + top * top;
}

double sobolev2s_norm(const GridFunction& f, double s) { return std::sqrt(sobolev2s_norm_squared(f, s)); }

GridFunction evolutive_semigroup(const GridFunction& f, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("evolutive_semigroup: tau must be >= 0");
  if (tau == 0.0) return f;
  const FrequencyGrid freq(f.grid());
  return apply_multiplier(f, [&](std::size_t i) { return std::exp(-freq.heat_symbol(i) * tau); });
}

Complex balakrishnan_integral(Complex lambda, double s, const BalakrishnanQuadrature& quad,
                              double tau_split, double* error) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("balakrishnan_integral: s must lie in (0, 1)");
  if (error) *error = 0.0;
  const double mag = std::abs(lambda);
  if (mag == 0.0) return 0.0;
  if (lambda.real() < 0.0) throw InvalidArgument("balakrishnan_integral: requires Re lambda >= 0");

  // (0, tau0]: sum_k (-lambda)^k tau0^{k-s} / (k! (k-s)).
  const double tau0 = std::min(tau_split, 1.0 / mag);
  const double tau0_pow = std::pow(tau0, -s);
  Complex power = 1.0;
  Complex head = 0.0;
  double head_err = 0.0;
  for (int k = 1; k < 60; ++k) {
    power *= -lambda * tau0 / static_cast<double>(k);
    const Complex term = power * tau0_pow / (k - s);
    head += term;
    head_err = std::abs(term);
    if (head_err < 1e-18 * std::abs(head)) break;
  }

  // [tau0, tau_end]: int tau^{-1-s} exp(-lambda tau); the -1 part is exact.
  auto integrand = [&](double tau) { return std::exp(-lambda * tau - (1.0 + s) * std::log(tau)); };
  Complex body = 0.0;
  double body_err = 0.0;
  const double cap = 2.0 / mag;
  const double growth = std::max(quad.panel_growth, 1.0 + 1e-3);
  double lo = tau0;
  std::size_t used = 0;
  bool decayed = false;
  while (true) {
    if (lambda.real() * lo > -std::log(quad.tail_eps)) {
      decayed = true;
      break;
    }
    if (mag * lo >= 40.0) break;
    if (++used > quad.panels) {
      std::ostringstream msg;
      msg << "balakrishnan_integral: panel budget " << quad.panels << " exhausted at lambda = " << lambda;
      throw QuadratureError(msg.str(), std::numeric_limits<double>::infinity());
    }
    const double hi = lo + std::min(lo * (growth - 1.0), cap);
    const Complex fine = gauss_panel<16>(lo, hi, integrand);
    const Complex coarse = gauss_panel<8>(lo, hi, integrand);
    body += fine;
    body_err += std::abs(fine - coarse);
    lo = hi;
  }

  // Tail beyond lo.
  Complex tail = 0.0;
  double tail_err = 0.0;
  if (decayed) {
    tail_err = std::exp(-lambda.real() * lo) * std::pow(lo, -s) / s;
  } else {
    // int_b^inf tau^{-mu} e^{-lambda tau} = e^{-lambda b} b^{-mu} / lambda sum_k (-1)^k (mu)_k / (lambda b)^k
    const double mu = 1.0 + s;
    const Complex lb = lambda * lo;
    Complex term = 1.0;
    Complex sum = 1.0;
    double prev = 1.0;
    for (int k = 0; k < 100; ++k) {
      term *= -(mu + k) / lb;
      const double m = std::abs(term);
      if (m >= prev) break;
      sum += term;
      prev = m;
      tail_err = m;
      if (m < 1e-18) break;
    }
    const Complex prefactor = std::exp(-lb - mu * std::log(lo)) / lambda;
    tail = prefactor * sum;
    tail_err *= std::abs(prefactor);
  }

  const Complex minus_one_part = -std::pow(tau0, -s) / s;
  if (error) *error = head_err + body_err + tail_err;
  return head + body + tail + minus_one_part;
}

BalakrishnanResult apply_hs_balakrishnan(const GridFunction& f, double s,
                                         const BalakrishnanQuadrature& quad) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("apply_hs_balakrishnan: s must lie in (0, 1)");
  const SpaceTimeGrid& g = f.grid();
  const double tau_split = quad.tau_split > 0.0 ? quad.tau_split : g.ht();
  const double prefactor = -s / std::tgamma(1.0 - s);
  const FrequencyGrid freq(g);

  Spectrum F = dft_forward(f);
  auto coeffs = F.values();
  std::vector<double> abs_err(coeffs.size(), 0.0);
  std::vector<double> rel_err(coeffs.size(), 0.0);
  parallel_for(coeffs.size(), [&](std::size_t i) {
    double err = 0.0;
    const Complex integral = balakrishnan_integral(freq.heat_symbol(i), s, quad, tau_split, &err);
    const double denom = std::abs(integral);
    rel_err[i] = denom > 0.0 ? err / denom : 0.0;
    abs_err[i] = std::abs(prefactor) * err * std::abs(coeffs[i]);
    coeffs[i] *= prefactor * integral;
  });

  double worst = 0.0;
  std::size_t worst_index = 0;
  double err_sq = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (rel_err[i] > worst) {
      worst = rel_err[i];
      worst_index = i;
    }
    err_sq += abs_err[i] * abs_err[i];
  }
  if (worst > quad.tolerance) {
    std::ostringstream msg;
    msg << "apply_hs_balakrishnan: quadrature-tolerance-not-met, relative error estimate " << worst
        << " at lambda = " << freq.heat_symbol(worst_index) << " (tolerance " << quad.tolerance << ")";
    throw QuadratureError(msg.str(), worst);
  }
  GridFunction value = dft_inverse(F);
  const double volume = std::pow(g.L_x(), g.dim()) * g.L_t();
  const double norm = l2_norm(value);
  const double estimate = norm > 0.0 ? std::sqrt(err_sq / volume) / norm : 0.0;
  return BalakrishnanResult{std::move(value), estimate};
}

ResidualNorms residual_norm(const GridFunction& u, const GridFunction& V, double s) {
  require_same_grid(u, V, "residual_norm");
  GridFunction r = apply_hs_spectral(u, s);
  auto rv = r.values();
  for (std::size_t i = 0; i < rv.size(); ++i) rv[i] -= V.values()[i] * u.values()[i];
  return ResidualNorms{sup_norm(r), l2_norm(r)};
}

namespace {

// Periodic neighbour offsets of a flat index along an axis (0 = t, 1.. = x axes).
struct Stencil {
  const SpaceTimeGrid& g;

  std::size_t shift(std::size_t flat, int axis, int step) const {
    const std::size_t S = g.spatial_size();
    std::size_t k = flat / S;
    std::size_t sp = flat % S;
    auto wrap = [](std::size_t i, int d, std::size_t N) {
      return static_cast<std::size_t>((static_cast<long>(i) + d + static_cast<long>(N)) % static_cast<long>(N));
    };
    if (axis == 0) return wrap(k, step, g.N_t()) * S + sp;
    const std::size_t N = g.N_x();
    if (g.dim() == 1) return k * S + wrap(sp, step, N);
    std::size_t j0 = sp / N;
    std::size_t j1 = sp % N;
    if (axis == 1) j0 = wrap(j0, step, N);
    else j1 = wrap(j1, step, N);
    return k * S + j0 * N + j1;
  }
  double spacing(int axis) const { return axis == 0 ? g.ht() : g.hx(); }
};

}  // namespace

ValidationReport validate_potential(const GridFunction& V, double s, double K) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("validate_potential: s must lie in (0, 1)");
  const SpaceTimeGrid& g = V.grid();
  const Stencil st{g};
  const int axes = g.dim() + 1;
  auto vals = V.values();
  const std::size_t N = vals.size();

  double sup_v = 0.0;
  for (const Complex& v : vals) sup_v = std::max(sup_v, std::abs(v));

  double first_sum = 0.0;
  std::vector<std::vector<Complex>> grad(static_cast<std::size_t>(axes), std::vector<Complex>(N));
  for (int ax = 0; ax < axes; ++ax) {
    double m = 0.0;
    const double h = st.spacing(ax);
    for (std::size_t i = 0; i < N; ++i) {
      const Complex d = (vals[st.shift(i, ax, 1)] - vals[st.shift(i, ax, -1)]) / (2.0 * h);
      grad[static_cast<std::size_t>(ax)][i] = d;
      m = std::max(m, std::abs(d));
    }
    first_sum += m;
  }
  const double c1 = sup_v + first_sum;

  ValidationReport report{s, K, {}, true, 3,
                          "norms are certified on the sampled box only; whole-space bounds are not checked"};
  report.norms.push_back({"sup|V|", sup_v, false, true});

  if (s >= 0.5) {
    report.norms.push_back({"C1", c1, true, c1 <= K});
  } else {
    double second_sum = 0.0;
    for (int a1 = 0; a1 < axes; ++a1) {
      for (int a2 = a1; a2 < axes; ++a2) {
        double m = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          Complex d;
          if (a1 == a2) {
            const double h = st.spacing(a1);
            d = (vals[st.shift(i, a1, 1)] - 2.0 * vals[i] + vals[st.shift(i, a1, -1)]) / (h * h);
          } else {
            const std::size_t pp = st.shift(st.shift(i, a1, 1), a2, 1);
            const std::size_t pm = st.shift(st.shift(i, a1, 1), a2, -1);
            const std::size_t mp = st.shift(st.shift(i, a1, -1), a2, 1);
            const std::size_t mm = st.shift(st.shift(i, a1, -1), a2, -1);
            d = (vals[pp] - vals[pm] - vals[mp] + vals[mm]) / (4.0 * st.spacing(a1) * st.spacing(a2));
          }
          m = std::max(m, std::abs(d));
        }
        second_sum += m;
      }
    }
    const double c2 = c1 + second_sum;
    double radial = 0.0;
    const std::size_t S = g.spatial_size();
    for (std::size_t i = 0; i < N; ++i) {
      const Point x = g.spatial().point(i % S);
      Complex r = grad[1][i] * x[0];
      if (g.dim() == 2) r += grad[2][i] * x[1];
      radial = std::max(radial, std::abs(r));
    }
    report.norms.push_back({"C1", c1, false, true});
    report.norms.push_back({"C2", c2, true, c2 <= K});
    report.norms.push_back({"sup|<grad_x V, x>|", radial, true, radial <= K});
  }
  for (const auto& n : report.norms) report.pass = report.pass && n.pass;
  return report;
}

}  // namespace fracheat
