#include "fracheat/extension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/fractional.hpp"
#include "fracheat/parallel.hpp"
#include "fracheat/special.hpp"

namespace fracheat {
namespace {

// Conservative three-point operator for (y^a U')' - lambda y^a U on a YGrid.
// Flux between y_j and y_{j+1} is (U_{j+1} - U_j) / int y^{-a}, exact whenever
// y^a U' is constant on the cell; node j owns [m_{j-1}, m_j] between midpoints.
struct FluxStencil {
  std::vector<double> conductance;  // 1 / int_{y_j}^{y_{j+1}} y^{-a} dy, j = 0..J-1
  std::vector<double> mass;         // int over the control volume of node j of y^a dy

  explicit FluxStencil(const YGrid& yg) {
    const double a = yg.a();
    const std::size_t J = yg.J();
    conductance.resize(J);
    mass.assign(J + 1, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
      const double lo = yg.level(j);
      const double hi = yg.level(j + 1);
      conductance[j] = (1.0 - a) / (std::pow(hi, 1.0 - a) - std::pow(lo, 1.0 - a));
    }
    auto cumulative = [&](double y) { return std::pow(y, 1.0 + a) / (1.0 + a); };
    for (std::size_t j = 1; j < J; ++j) {
      const double left = 0.5 * (yg.level(j - 1) + yg.level(j));
      const double right = 0.5 * (yg.level(j) + yg.level(j + 1));
      mass[j] = cumulative(right) - cumulative(left);
    }
  }
};

std::vector<Complex> fd_profile(Complex lambda, const YGrid& yg, const FluxStencil& st) {
  const std::size_t J = yg.J();
  std::vector<Complex> U(J + 1, 0.0);
  U[0] = 1.0;
  if (lambda == Complex(0.0, 0.0)) {
    std::fill(U.begin(), U.end(), Complex(1.0, 0.0));
    return U;
  }
  // Thomas elimination on nodes 1..J-1 with U_0 = 1, U_J = 0.
  std::vector<Complex> c_prime(J, 0.0);
  std::vector<Complex> d_prime(J, 0.0);
  for (std::size_t j = 1; j < J; ++j) {
    const double lower = st.conductance[j - 1];
    const double upper = st.conductance[j];
    const Complex diag = -(lower + upper) - lambda * st.mass[j];
    const Complex rhs = j == 1 ? Complex(-lower, 0.0) : Complex(0.0, 0.0);
    const Complex pivot = j == 1 ? diag : diag - lower * c_prime[j - 1];
    if (!(std::isfinite(pivot.real()) && std::isfinite(pivot.imag())) || std::abs(pivot) == 0.0) {
      std::ostringstream msg;
      msg << "extend: profile solve broke down at level " << j << " for lambda = " << lambda;
      throw Error(msg.str());
    }
    c_prime[j] = upper / pivot;
    d_prime[j] = j == 1 ? rhs / pivot : (rhs - lower * d_prime[j - 1]) / pivot;
  }
  for (std::size_t j = J - 1; j >= 1; --j) {
    U[j] = d_prime[j] - c_prime[j] * U[j + 1];
  }
  return U;
}

std::vector<Complex> bessel_profile(Complex lambda, double s, const YGrid& yg) {
  std::vector<Complex> U(yg.size(), 1.0);
  if (lambda == Complex(0.0, 0.0)) return U;
  const Complex root = std::sqrt(lambda);
  const double scale = std::pow(2.0, 1.0 - s) / gamma_fn(s);
  for (std::size_t j = 1; j < yg.size(); ++j) {
    const Complex z = root * yg.level(j);
    const Complex log_part = s * std::log(z) - z;
    if (log_part.real() < -745.0) {
      U[j] = 0.0;
      continue;
    }
    U[j] = scale * std::exp(log_part) * bessel_k_scaled(s, z);
  }
  return U;
}

// Cubic Lagrange interpolation at fine index j from values on the lattice 0, m, 2m, ..., J.
Complex lattice_interpolate(const std::vector<Complex>& coarse, std::size_t m, std::size_t j) {
  const std::size_t nodes = coarse.size();
  if (j % m == 0) return coarse[j / m];
  long first = static_cast<long>(j / m) - 1;
  first = std::clamp(first, 0L, static_cast<long>(nodes) - 4);
  const double x = static_cast<double>(j) / static_cast<double>(m);
  Complex sum = 0.0;
  for (long q = first; q < first + 4; ++q) {
    double w = 1.0;
    for (long r = first; r < first + 4; ++r) {
      if (r != q) w *= (x - static_cast<double>(r)) / static_cast<double>(q - r);
    }
    sum += w * coarse[static_cast<std::size_t>(q)];
  }
  return sum;
}

// Profile solver shared across the modes of one extend() call.
class ProfileSolver {
 public:
  ProfileSolver(const ExtensionParams& params, const YGrid& yg, const ExtendOptions& opts)
      : params_(params), yg_(yg), opts_(opts) {
    stencils_.emplace_back(yg);
    if (opts.backend != ProfileBackend::finite_difference) return;
    std::size_t J = yg.J();
    for (int r = 0; r < opts.richardson_levels && J % 2 == 0 && J / 2 >= 32; ++r) {
      J /= 2;
      grids_.emplace_back(yg.Y_max(), J, yg.gamma(), yg.a());
    }
    for (const auto& g : grids_) stencils_.emplace_back(g);
  }

  std::vector<Complex> operator()(Complex lambda) const {
    if (opts_.backend == ProfileBackend::bessel_k) return bessel_profile(lambda, params_.s, yg_);
    std::vector<Complex> U = fd_profile(lambda, yg_, stencils_[0]);
    if (grids_.empty() || lambda == Complex(0.0, 0.0)) return U;

    // Richardson table in h^2, h^4, ... on the levels shared by all grids.
    const std::size_t depth = grids_.size();
    const std::size_t stride = std::size_t{1} << depth;
    const std::size_t shared = yg_.J() / stride + 1;
    std::vector<std::vector<Complex>> table(depth + 1, std::vector<Complex>(shared));
    for (std::size_t r = 0; r <= depth; ++r) {
      const std::vector<Complex> Ur = r == 0 ? U : fd_profile(lambda, grids_[r - 1], stencils_[r]);
      const std::size_t step = stride >> r;
      for (std::size_t i = 0; i < shared; ++i) table[r][i] = Ur[i * step];
    }
    for (std::size_t order = 1; order <= depth; ++order) {
      const double factor = std::pow(4.0, static_cast<double>(order)) - 1.0;
      for (std::size_t r = 0; r + order <= depth; ++r) {
        for (std::size_t i = 0; i < shared; ++i) {
          table[r][i] += (table[r][i] - table[r + 1][i]) / factor;
        }
      }
    }
    std::vector<Complex> delta(shared);
    for (std::size_t i = 0; i < shared; ++i) delta[i] = table[0][i] - U[i * stride];
    for (std::size_t j = 0; j < U.size(); ++j) U[j] += lattice_interpolate(delta, stride, j);
    return U;
  }

 private:
  ExtensionParams params_;
  const YGrid& yg_;
  ExtendOptions opts_;
  std::vector<YGrid> grids_;
  std::vector<FluxStencil> stencils_;
};

void check_weight(const ExtensionParams& params, const YGrid& yg, const char* who) {
  if (std::abs(params.a - yg.a()) > 1e-12) {
    std::ostringstream msg;
    msg << who << ": YGrid weight a = " << yg.a() << " does not match params a = " << params.a;
    throw GridMismatch(msg.str());
  }
}

}  // namespace

double min_decay_rate(const SpaceTimeGrid& grid) {
  const FrequencyGrid freq(grid);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex lambda = freq.heat_symbol(i);
    if (lambda == Complex(0.0, 0.0)) continue;
    best = std::min(best, std::sqrt(lambda).real());
  }
  return best;
}

double required_y_max(const SpaceTimeGrid& grid) { return 8.0 / min_decay_rate(grid); }

YGrid extension_ygrid(const SpaceTimeGrid& grid, const ExtensionParams& params, std::size_t J) {
  return YGrid::for_weight(params.a, required_y_max(grid), J);
}

std::vector<Complex> mode_profile(Complex lambda, const ExtensionParams& params, const YGrid& ygrid,
                                  const ExtendOptions& opts) {
  check_weight(params, ygrid, "mode_profile");
  if (lambda.real() < 0.0) throw InvalidArgument("mode_profile: requires Re lambda >= 0");
  return ProfileSolver(params, ygrid, opts)(lambda);
}

ExtendedField extend(const GridFunction& u, const ExtensionParams& params, const YGrid& ygrid,
                     const ExtendOptions& opts) {
  check_weight(params, ygrid, "extend");
  const SpaceTimeGrid& g = u.grid();
  if (opts.backend == ProfileBackend::finite_difference) {
    const double need = required_y_max(g);
    if (ygrid.Y_max() < need * (1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "extend: Y_max = " << ygrid.Y_max() << " is below 8 / min Re sqrt(lambda) = " << need;
      throw InvalidArgument(msg.str());
    }
  }
  const Spectrum F = dft_forward(u);
  const FrequencyGrid freq(g);
  const ProfileSolver solver(params, ygrid, opts);
  const std::size_t M = g.size();
  const std::size_t L = ygrid.size();

  std::vector<Complex> spectra(L * M, 0.0);
  parallel_for(M, [&](std::size_t i) {
    const Complex coeff = F.values()[i];
    if (coeff == Complex(0.0, 0.0)) return;
    const std::vector<Complex> profile = solver(freq.heat_symbol(i));
    for (std::size_t l = 0; l < L; ++l) spectra[l * M + i] = coeff * profile[l];
  });

  std::vector<Complex> values(L * M);
  parallel_for(L, [&](std::size_t l) {
    std::vector<Complex> level(spectra.begin() + static_cast<std::ptrdiff_t>(l * M),
                               spectra.begin() + static_cast<std::ptrdiff_t>((l + 1) * M));
    const GridFunction plane = dft_inverse(Spectrum(g, std::move(level)));
    std::copy(plane.values().begin(), plane.values().end(), values.begin() + static_cast<std::ptrdiff_t>(l * M));
  });
  // The boundary plane is the datum itself, not its round trip.
  std::copy(u.values().begin(), u.values().end(), values.begin());
  return ExtendedField(g, ygrid, std::move(values));
}

Complex normal_derivative_column(const YGrid& yg, const std::function<Complex(std::size_t)>& column) {
  constexpr int K = 5;
  const double a = yg.a();
  const double p = 1.0 - a;
  // Levels j0, 2 j0, ..., K j0 with y^{1-a} clear of roundoff in U(y) - U(0).
  // Prefer j0 a multiple of 4, so the levels sit on the coarsest nested grid of
  // extend(), as long as the fit stays within 2% of Y_max; else finer strides.
  const double floor = 1e-8 * std::pow(yg.Y_max(), p);
  auto first_above_floor = [&](std::size_t stride) {
    std::size_t j = stride;
    while (j < yg.size() && std::pow(yg.level(j), p) < floor) j += stride;
    return j;
  };
  std::size_t j0 = 0;
  for (std::size_t stride : {4u, 2u, 1u}) {
    const std::size_t j = first_above_floor(stride);
    if (K * j < yg.size() && yg.level(K * j) <= 0.02 * yg.Y_max()) {
      j0 = j;
      break;
    }
  }
  if (j0 == 0) {
    const std::size_t j = first_above_floor(1);
    if (K * j >= yg.size() || yg.level(3 * j) > 0.1 * yg.Y_max()) {
      throw InvalidArgument("weighted_normal_derivative: fewer than three usable levels below 0.1 Y_max");
    }
    j0 = j;
  }
  // Solve [y^p/p, y^2, y^{2+p}, y^4, y^{4+p}] x = U(y) - U(0) on the K levels.
  const double exponents[K] = {p, 2.0, 2.0 + p, 4.0, 4.0 + p};
  double m[K][K];
  Complex r[K];
  const Complex u0 = column(0);
  for (int k = 0; k < K; ++k) {
    const std::size_t level = static_cast<std::size_t>(k + 1) * j0;
    const double y = yg.level(level);
    for (int c = 0; c < K; ++c) m[k][c] = std::pow(y, exponents[c]);
    m[k][0] /= p;
    r[k] = column(level) - u0;
  }
  // Columns scaled to unit size at the outermost level for conditioning.
  double scale[K];
  for (int c = 0; c < K; ++c) {
    scale[c] = m[K - 1][c];
    for (int k = 0; k < K; ++k) m[k][c] /= scale[c];
  }
  for (int c = 0; c < K; ++c) {
    int piv = c;
    for (int k = c + 1; k < K; ++k) {
      if (std::abs(m[k][c]) > std::abs(m[piv][c])) piv = k;
    }
    std::swap(m[c], m[piv]);
    std::swap(r[c], r[piv]);
    for (int k = c + 1; k < K; ++k) {
      const double f = m[k][c] / m[c][c];
      for (int q = c; q < K; ++q) m[k][q] -= f * m[c][q];
      r[k] -= f * r[c];
    }
  }
  Complex x[K];
  for (int c = K - 1; c >= 0; --c) {
    Complex acc = r[c];
    for (int q = c + 1; q < K; ++q) acc -= m[c][q] * x[q];
    x[c] = acc / m[c][c];
  }
  return x[0] / scale[0];
}

GridFunction weighted_normal_derivative(const ExtendedField& U) {
  const SpaceTimeGrid& g = U.base();
  std::vector<Complex> out(g.size());
  parallel_for(g.size(), [&](std::size_t i) {
    out[i] = normal_derivative_column(U.ygrid(), [&](std::size_t l) { return U(l, i); });
  });
  return GridFunction(g, std::move(out));
}

std::vector<Complex> weighted_normal_derivative(const ExtendedSlice& U) {
  std::vector<Complex> out(U.spatial().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = normal_derivative_column(U.ygrid(), [&](std::size_t l) { return U(l, i); });
  }
  return out;
}

DtNReport dtn_verify(const GridFunction& u, double s, const YGrid& ygrid, const ExtendOptions& opts) {
  const auto params = ExtensionParams::from_s(s);
  const ExtendedField U = extend(u, params, ygrid, opts);
  GridFunction lhs = weighted_normal_derivative(U);
  for (auto& v : lhs.values()) v *= params.c_np;
  GridFunction rhs = apply_hs_spectral(u, s);
  for (auto& v : rhs.values()) v = -v;

  DtNReport report{s, 0.0, l2_norm(lhs), l2_norm(rhs), 0, 0.0, 0.0, lhs, rhs};
  std::vector<Complex> diff(lhs.values().begin(), lhs.values().end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= rhs.values()[i];
  const GridFunction d(u.grid(), std::move(diff));
  report.discrepancy = report.rhs_norm > 0.0 ? l2_norm(d) / report.rhs_norm : l2_norm(d);

  const Spectrum D = dft_forward(d);
  const Spectrum R = dft_forward(rhs);
  double peak = 0.0;
  for (const auto& v : R.values()) peak = std::max(peak, std::abs(v));
  const FrequencyGrid freq(u.grid());
  for (std::size_t i = 0; i < D.values().size(); ++i) {
    const double e = std::abs(D.values()[i]) / (peak > 0.0 ? peak : 1.0);
    if (e > report.worst_mode_error) {
      report.worst_mode_error = e;
      report.worst_mode = i;
      report.worst_lambda = freq.heat_symbol(i);
    }
  }
  return report;
}

double boundary_residual(const ExtendedField& U, const GridFunction& u, const GridFunction& V,
                         const ExtensionParams& params) {
  if (!(U.base() == u.grid()) || !(u.grid() == V.grid())) {
    throw GridMismatch("boundary_residual: U, u and V must share a grid");
  }
  check_weight(params, U.ygrid(), "boundary_residual");
  const GridFunction d = weighted_normal_derivative(U);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.values().size(); ++i) {
    worst = std::max(worst, std::abs(d.values()[i] - params.c_wk * V.values()[i] * u.values()[i]));
  }
  return worst;
}

double boundary_residual(const ExtendedSlice& U, std::span<const Complex> u, std::span<const Complex> V,
                         const ExtensionParams& params) {
  if (u.size() != U.spatial().size() || V.size() != U.spatial().size()) {
    throw GridMismatch("boundary_residual: u and V must match the slice's spatial grid");
  }
  check_weight(params, U.ygrid(), "boundary_residual");
  const std::vector<Complex> d = weighted_normal_derivative(U);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] - params.c_wk * V[i] * u[i]));
  }
  return worst;
}

}  // namespace fracheat
