#pragma once

// Periodic space-time grids on R^n_x x R_t (n = 1 or 2), complex fields on
// them, and the discrete Fourier transform in the 2*pi-in-the-exponent
// convention  f^(xi, sigma) = int e^{-2 pi i (<xi,x> + sigma t)} f dx dt.
//
// Storage is time-major: flat index = k * N_x^n + spatial, where for n = 2
// spatial = j0 * N_x + j1. Spectra use the same layout in FFT order: array
// index i along an axis carries the signed integer frequency i for
// i < N/2 and i - N otherwise.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracheat {

using Complex = std::complex<double>;
using Point = std::array<double, 2>;  // spatial point; only the first n entries are used

/// Signed integer frequency carried by FFT-ordered array index i on an axis of N points.
inline long signed_frequency(std::size_t i, std::size_t N) {
  return i < N / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(N);
}

/// Spatial part of a space-time grid: N_x points per axis on [-L_x/2, L_x/2).
struct SpatialGrid {
  int n = 1;
  double L_x = 1.0;
  std::size_t N_x = 4;

  std::size_t size() const { return n == 1 ? N_x : N_x * N_x; }
  double h() const { return L_x / static_cast<double>(N_x); }
  double cell_volume() const { return n == 1 ? h() : h() * h(); }
  double coordinate(std::size_t j) const { return -0.5 * L_x + static_cast<double>(j) * h(); }
  Point point(std::size_t spatial) const;
  /// Frequency vector (k/L_x per axis) of FFT-ordered spatial index.
  Point frequency(std::size_t spatial) const;
  /// |x - y| using the nearest periodic image.
  double periodic_distance(const Point& x, const Point& y) const;

  bool operator==(const SpatialGrid&) const = default;
};

class SpaceTimeGrid {
 public:
  SpaceTimeGrid(int n, double L_x, std::size_t N_x, double L_t, std::size_t N_t, double t_origin);

  int dim() const { return spatial_.n; }
  double L_x() const { return spatial_.L_x; }
  std::size_t N_x() const { return spatial_.N_x; }
  double L_t() const { return L_t_; }
  std::size_t N_t() const { return N_t_; }
  double t_origin() const { return t_origin_; }

  double hx() const { return spatial_.h(); }
  double ht() const { return L_t_ / static_cast<double>(N_t_); }
  /// Quadrature weight of one node, h_x^n * h_t.
  double cell_volume() const { return spatial_.cell_volume() * ht(); }

  const SpatialGrid& spatial() const { return spatial_; }
  std::size_t spatial_size() const { return spatial_.size(); }
  std::size_t size() const { return spatial_size() * N_t_; }

  double x(std::size_t j) const { return spatial_.coordinate(j); }
  double t(std::size_t k) const { return t_origin_ + static_cast<double>(k) * ht(); }
  std::size_t index(std::size_t k, std::size_t spatial) const { return k * spatial_size() + spatial; }

  bool operator==(const SpaceTimeGrid&) const = default;

 private:
  SpatialGrid spatial_;
  double L_t_;
  std::size_t N_t_;
  double t_origin_;
};

/// Validating factory; throws InvalidArgument for n outside {1,2}, odd or
/// too small point counts, and nonpositive periods.
SpaceTimeGrid make_grid(int n, double L_x, std::size_t N_x, double L_t, std::size_t N_t,
                        double t_origin);

/// Complex values on every node of a space-time grid. Always finite.
class GridFunction {
 public:
  explicit GridFunction(SpaceTimeGrid grid);  // zero field
  GridFunction(SpaceTimeGrid grid, std::vector<Complex> values);

  const SpaceTimeGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator()(std::size_t k, std::size_t spatial) const {
    return values_[grid_.index(k, spatial)];
  }

 private:
  SpaceTimeGrid grid_;
  std::vector<Complex> values_;
};

/// Frequencies (xi, sigma) dual to a grid, in the FFT order described above.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(const SpaceTimeGrid& grid) : grid_(grid) {}

  Point xi(std::size_t spatial) const { return grid_.spatial().frequency(spatial); }
  double sigma(std::size_t m) const {
    return static_cast<double>(signed_frequency(m, grid_.N_t())) / grid_.L_t();
  }
  /// Heat symbol 4 pi^2 |xi|^2 + 2 pi i sigma at a flat spectral index.
  Complex heat_symbol(std::size_t flat) const;
  std::size_t size() const { return grid_.size(); }

 private:
  SpaceTimeGrid grid_;
};

/// Heat symbol at a given (xi, sigma).
Complex heat_symbol(const Point& xi, int n, double sigma);

/// Spectral coefficients of a GridFunction (see dft_forward).
class Spectrum {
 public:
  Spectrum(SpaceTimeGrid grid, std::vector<Complex> values);

  const SpaceTimeGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

 private:
  SpaceTimeGrid grid_;
  std::vector<Complex> values_;
};

using FieldRule = std::function<Complex(const Point& x, double t)>;

/// values[k, j] = rule(x_j, t_k). Throws NonFiniteValue naming the first bad node.
GridFunction sample_field(const SpaceTimeGrid& grid, const FieldRule& rule);

/// Riemann-sum transform with weights h_x^n h_t: an on-grid plane wave maps
/// to a single coefficient of height L_x^n L_t.
Spectrum dft_forward(const GridFunction& f);

/// Exact inverse of dft_forward.
GridFunction dft_inverse(const Spectrum& F);

/// Multiplies the spectrum of f by symbol(flat spectral index) and transforms back.
GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<Complex(std::size_t)>& symbol);

/// Applies a Fourier multiplier m(xi) to one spatial plane in place.
void apply_spatial_multiplier(const SpatialGrid& grid, std::span<Complex> plane,
                              const std::function<Complex(const Point&)>& symbol);

/// Trigonometric interpolation in t of every spatial node, evaluated at time t.
/// The Nyquist mode is split symmetrically so real data interpolate to real values.
std::vector<Complex> interpolate_in_time(const GridFunction& f, double t);

/// sqrt(sum h_x^n h_t |f|^2).
/// Sum in a fixed pairwise order, so results do not depend on thread count.
double pairwise_sum(std::span<const double> v);
/// Pairwise sum of |v_i|^2.
double pairwise_norm_squared(std::span<const Complex> v);

double l2_norm(const GridFunction& f);
/// sqrt((L_x^n L_t)^{-1} sum |F|^2); equals l2_norm of the inverse transform.
double l2_norm(const Spectrum& F);
double sup_norm(const GridFunction& f);

/// Largest |f| outside the inner half of the box (|x_i| > L_x/4 or t outside
/// the middle half of the time period), relative to sup |f|. Zero for f = 0.
double outer_region_fraction(const GridFunction& f);

/// Throws InvalidArgument unless outer_region_fraction(f) <= tol.
void require_decay(const GridFunction& f, double tol = 1e-10);

/// max |u| over nodes of the backward cylinder B_r(x0) x (t0 - r^2, t0].
/// Throws InvalidArgument for r <= 0 or an empty intersection.
double cylinder_sup(const GridFunction& u, const Point& x0, double t0, double r);

}  // namespace fracheat
