#include "fracheat/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "fracheat/errors.hpp"

namespace fracheat {
namespace {

using std::numbers::pi;

std::vector<int> spacetime_dims(const SpaceTimeGrid& g) {
  std::vector<int> dims{static_cast<int>(g.N_t())};
  for (int d = 0; d < g.dim(); ++d) dims.push_back(static_cast<int>(g.N_x()));
  return dims;
}

std::vector<int> spatial_dims(const SpatialGrid& g) {
  return std::vector<int>(static_cast<std::size_t>(g.n), static_cast<int>(g.N_x));
}

// Phase exp(-2 pi i <xi, x_0>) with x_0 = (-L/2, ...) is (-1)^{sum k}.
double corner_phase(const SpatialGrid& g, std::size_t spatial) {
  long parity = 0;
  if (g.n == 1) {
    parity = signed_frequency(spatial, g.N_x);
  } else {
    parity = signed_frequency(spatial / g.N_x, g.N_x) + signed_frequency(spatial % g.N_x, g.N_x);
  }
  return (parity % 2 == 0) ? 1.0 : -1.0;
}

void check_finite(std::span<const Complex> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      std::ostringstream msg;
      msg << what << ": non-finite value at flat index " << i;
      throw NonFiniteValue(msg.str());
    }
  }
}

}  // namespace

Point SpatialGrid::point(std::size_t spatial) const {
  if (n == 1) return {coordinate(spatial), 0.0};
  return {coordinate(spatial / N_x), coordinate(spatial % N_x)};
}

Point SpatialGrid::frequency(std::size_t spatial) const {
  if (n == 1) return {static_cast<double>(signed_frequency(spatial, N_x)) / L_x, 0.0};
  return {static_cast<double>(signed_frequency(spatial / N_x, N_x)) / L_x,
          static_cast<double>(signed_frequency(spatial % N_x, N_x)) / L_x};
}

double SpatialGrid::periodic_distance(const Point& x, const Point& y) const {
  double sum = 0.0;
  for (int d = 0; d < n; ++d) {
    double diff = x[static_cast<std::size_t>(d)] - y[static_cast<std::size_t>(d)];
    diff -= L_x * std::round(diff / L_x);
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

SpaceTimeGrid::SpaceTimeGrid(int n, double L_x, std::size_t N_x, double L_t, std::size_t N_t,
                             double t_origin)
    : spatial_{n, L_x, N_x}, L_t_(L_t), N_t_(N_t), t_origin_(t_origin) {
  if (n != 1 && n != 2) throw InvalidArgument("invalid-dimension: n must be 1 or 2");
  if (N_x < 4 || N_x % 2 != 0) throw InvalidArgument("N_x must be even and at least 4");
  if (N_t < 4 || N_t % 2 != 0) throw InvalidArgument("N_t must be even and at least 4");
  if (!(L_x > 0.0) || !(L_t > 0.0) || !std::isfinite(L_x) || !std::isfinite(L_t)) {
    throw InvalidArgument("periods must be positive and finite");
  }
  if (!std::isfinite(t_origin)) throw InvalidArgument("t_origin must be finite");
}

SpaceTimeGrid make_grid(int n, double L_x, std::size_t N_x, double L_t, std::size_t N_t,
                        double t_origin) {
  return SpaceTimeGrid(n, L_x, N_x, L_t, N_t, t_origin);
}

GridFunction::GridFunction(SpaceTimeGrid grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(SpaceTimeGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridMismatch("value count does not match grid");
  check_finite(values_, "GridFunction");
}

Spectrum::Spectrum(SpaceTimeGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridMismatch("coefficient count does not match grid");
}

Complex heat_symbol(const Point& xi, int n, double sigma) {
  double xi2 = xi[0] * xi[0];
  if (n == 2) xi2 += xi[1] * xi[1];
  return {4.0 * pi * pi * xi2, 2.0 * pi * sigma};
}

Complex FrequencyGrid::heat_symbol(std::size_t flat) const {
  const std::size_t S = grid_.spatial_size();
  return fracheat::heat_symbol(xi(flat % S), grid_.dim(), sigma(flat / S));
}

GridFunction sample_field(const SpaceTimeGrid& grid, const FieldRule& rule) {
  std::vector<Complex> values(grid.size());
  const std::size_t S = grid.spatial_size();
  for (std::size_t k = 0; k < grid.N_t(); ++k) {
    const double t = grid.t(k);
    for (std::size_t j = 0; j < S; ++j) {
      const Point x = grid.spatial().point(j);
      const Complex v = rule(x, t);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "sample_field: non-finite sample at node (time index " << k << ", spatial index "
            << j << ") x = (" << x[0];
        if (grid.dim() == 2) msg << ", " << x[1];
        msg << "), t = " << t;
        throw NonFiniteValue(msg.str());
      }
      values[grid.index(k, j)] = v;
    }
  }
  return GridFunction(grid, std::move(values));
}

Spectrum dft_forward(const GridFunction& f) {
  const SpaceTimeGrid& g = f.grid();
  std::vector<Complex> data(f.values().begin(), f.values().end());
  detail::fft_inplace(data, spacetime_dims(g), detail::FftDirection::forward);
  const FrequencyGrid freq(g);
  const std::size_t S = g.spatial_size();
  const double weight = g.cell_volume();
  for (std::size_t m = 0; m < g.N_t(); ++m) {
    const Complex time_phase = std::polar(1.0, -2.0 * pi * freq.sigma(m) * g.t_origin());
    for (std::size_t j = 0; j < S; ++j) {
      data[g.index(m, j)] *= weight * corner_phase(g.spatial(), j) * time_phase;
    }
  }
  return Spectrum(g, std::move(data));
}

GridFunction dft_inverse(const Spectrum& F) {
  const SpaceTimeGrid& g = F.grid();
  std::vector<Complex> data(F.values().begin(), F.values().end());
  const FrequencyGrid freq(g);
  const std::size_t S = g.spatial_size();
  const double volume = std::pow(g.L_x(), g.dim()) * g.L_t();
  for (std::size_t m = 0; m < g.N_t(); ++m) {
    const Complex time_phase = std::polar(1.0, 2.0 * pi * freq.sigma(m) * g.t_origin());
    for (std::size_t j = 0; j < S; ++j) {
      data[g.index(m, j)] *= corner_phase(g.spatial(), j) * time_phase / volume;
    }
  }
  detail::fft_inplace(data, spacetime_dims(g), detail::FftDirection::backward);
  return GridFunction(g, std::move(data));
}

GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<Complex(std::size_t)>& symbol) {
  const SpaceTimeGrid& g = f.grid();
  std::vector<Complex> data(f.values().begin(), f.values().end());
  const auto dims = spacetime_dims(g);
  detail::fft_inplace(data, dims, detail::FftDirection::forward);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= symbol(i) * scale;
  detail::fft_inplace(data, dims, detail::FftDirection::backward);
  return GridFunction(g, std::move(data));
}

void apply_spatial_multiplier(const SpatialGrid& grid, std::span<Complex> plane,
                              const std::function<Complex(const Point&)>& symbol) {
  if (plane.size() != grid.size()) throw GridMismatch("plane size does not match spatial grid");
  const auto dims = spatial_dims(grid);
  detail::fft_inplace(plane, dims, detail::FftDirection::forward);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t j = 0; j < plane.size(); ++j) plane[j] *= symbol(grid.frequency(j)) * scale;
  detail::fft_inplace(plane, dims, detail::FftDirection::backward);
}

std::vector<Complex> interpolate_in_time(const GridFunction& f, double t) {
  const SpaceTimeGrid& g = f.grid();
  const std::size_t S = g.spatial_size();
  const std::size_t Nt = g.N_t();
  std::vector<Complex> column(Nt);
  std::vector<Complex> out(S);
  // Basis phases exp(2 pi i m (t - t0)/L_t) for the signed frequencies.
  std::vector<Complex> phase(Nt);
  const double theta = 2.0 * pi * (t - g.t_origin()) / g.L_t();
  for (std::size_t m = 0; m < Nt; ++m) {
    const long k = signed_frequency(m, Nt);
    if (m == Nt / 2) {
      phase[m] = std::cos(theta * static_cast<double>(Nt / 2));
    } else {
      phase[m] = std::polar(1.0, theta * static_cast<double>(k));
    }
  }
  for (std::size_t j = 0; j < S; ++j) {
    for (std::size_t k = 0; k < Nt; ++k) column[k] = f(k, j);
    detail::fft_inplace(column, {static_cast<int>(Nt)}, detail::FftDirection::forward);
    Complex acc = 0.0;
    for (std::size_t m = 0; m < Nt; ++m) acc += column[m] * phase[m];
    out[j] = acc / static_cast<double>(Nt);
  }
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double pairwise_norm_squared(std::span<const Complex> v) {
  if (v.size() <= 32) {
    double sum = 0.0;
    for (const Complex& z : v) sum += std::norm(z);
    return sum;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_norm_squared(v.first(half)) + pairwise_norm_squared(v.subspan(half));
}

double l2_norm(const GridFunction& f) {
  const double sum = pairwise_norm_squared(f.values());
  return std::sqrt(sum * f.grid().cell_volume());
}

double l2_norm(const Spectrum& F) {
  const double sum = pairwise_norm_squared(F.values());
  const auto& g = F.grid();
  return std::sqrt(sum / (std::pow(g.L_x(), g.dim()) * g.L_t()));
}

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (const Complex& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double outer_region_fraction(const GridFunction& f) {
  const SpaceTimeGrid& g = f.grid();
  const double peak = sup_norm(f);
  if (peak == 0.0) return 0.0;
  const double t_mid = g.t_origin() + 0.5 * g.L_t();
  double outer = 0.0;
  for (std::size_t k = 0; k < g.N_t(); ++k) {
    const bool t_outer = std::abs(g.t(k) - t_mid) > 0.25 * g.L_t();
    for (std::size_t j = 0; j < g.spatial_size(); ++j) {
      const Point x = g.spatial().point(j);
      bool outside = t_outer || std::abs(x[0]) > 0.25 * g.L_x();
      if (g.dim() == 2) outside = outside || std::abs(x[1]) > 0.25 * g.L_x();
      if (outside) outer = std::max(outer, std::abs(f(k, j)));
    }
  }
  return outer / peak;
}

void require_decay(const GridFunction& f, double tol) {
  const double frac = outer_region_fraction(f);
  if (frac > tol) {
    std::ostringstream msg;
    msg << "field does not decay within the inner half of the box: outer/peak = " << frac
        << " > " << tol;
    throw InvalidArgument(msg.str());
  }
}

double cylinder_sup(const GridFunction& u, const Point& x0, double t0, double r) {
  if (!(r > 0.0)) throw InvalidArgument("cylinder_sup: radius must be positive");
  const SpaceTimeGrid& g = u.grid();
  const double slack = 1e-12 * std::max(r, g.hx());
  const double t_slack = 1e-12 * std::max(r * r, g.ht());
  bool hit = false;
  double best = 0.0;
  for (std::size_t k = 0; k < g.N_t(); ++k) {
    const double t = g.t(k);
    if (!(t > t0 - r * r - t_slack && t <= t0 + t_slack)) continue;
    for (std::size_t j = 0; j < g.spatial_size(); ++j) {
      const Point x = g.spatial().point(j);
      double d2 = (x[0] - x0[0]) * (x[0] - x0[0]);
      if (g.dim() == 2) d2 += (x[1] - x0[1]) * (x[1] - x0[1]);
      if (std::sqrt(d2) > r + slack) continue;
      hit = true;
      best = std::max(best, std::abs(u(k, j)));
    }
  }
  if (!hit) throw InvalidArgument("cylinder_sup: cylinder contains no grid node");
  return best;
}

}  // namespace fracheat
