#pragma once

// Shared helpers for the test suites: seeded generators and field builders.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fracheat/spacetime.hpp"

namespace fracheat::test {

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline GridFunction random_field(const SpaceTimeGrid& g, unsigned seed) {
  auto gen = rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<Complex> v(g.size());
  for (auto& z : v) z = {N(gen), N(gen)};
  return GridFunction(g, std::move(v));
}

/// exp(2 pi i (k x / L_x + m t / L_t)) for integer (k, m); n = 1 grids.
inline GridFunction plane_wave(const SpaceTimeGrid& g, long k, long m, long k2 = 0) {
  return sample_field(g, [&](const Point& x, double t) {
    double phase = static_cast<double>(k) * x[0] / g.L_x() + static_cast<double>(m) * t / g.L_t();
    if (g.dim() == 2) phase += static_cast<double>(k2) * x[1] / g.L_x();
    return std::polar(1.0, 2.0 * std::numbers::pi * phase);
  });
}

/// exp(-(x^2 + (t - t_c)^2)) centred in the time period.
inline GridFunction gaussian_bump(const SpaceTimeGrid& g, double width = 1.0) {
  const double tc = g.t_origin() + 0.5 * g.L_t();
  return sample_field(g, [&](const Point& x, double t) {
    double r2 = x[0] * x[0];
    if (g.dim() == 2) r2 += x[1] * x[1];
    return Complex(std::exp(-(r2 + (t - tc) * (t - tc)) / (width * width)), 0.0);
  });
}

inline double relative_l2(const GridFunction& a, const GridFunction& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    num += std::norm(a.values()[i] - b.values()[i]);
    den += std::norm(b.values()[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace fracheat::test
