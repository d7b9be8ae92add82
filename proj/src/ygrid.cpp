#include "fracheat/ygrid.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "fracheat/errors.hpp"

namespace fracheat {

YGrid::YGrid(double Y_max, std::size_t J, double gamma, double a)
    : Y_max_(Y_max), J_(J), gamma_(gamma), a_(a) {
  if (!(Y_max > 0.0) || !std::isfinite(Y_max)) throw InvalidArgument("YGrid: Y_max must be positive");
  if (J < 32) throw InvalidArgument("YGrid: J must be at least 32");
  if (!(gamma >= 1.0)) throw InvalidArgument("YGrid: grading exponent must be >= 1");
  if (!(a > -1.0 && a < 1.0)) throw InvalidArgument("YGrid: weight exponent must lie in (-1, 1)");
  const double beta = gamma * (1.0 + a) - 1.0;
  if (!(beta > 0.0)) throw InvalidArgument("YGrid: gamma (1 + a) must exceed 1");

  levels_.resize(J + 1);
  weights_.resize(J + 1);
  const double h = 1.0 / static_cast<double>(J);
  const double scale = std::pow(Y_max, 1.0 + a) * gamma;
  for (std::size_t j = 0; j <= J; ++j) {
    const double u = static_cast<double>(j) * h;
    levels_[j] = Y_max * std::pow(u, gamma);
    weights_[j] = h * scale * std::pow(u, beta);
  }
  levels_[0] = 0.0;
  levels_[J] = Y_max;
  weights_[J] *= 0.5;
  weights_[0] = -boost::math::zeta(-beta) * std::pow(h, beta + 1.0) * scale;
}

YGrid YGrid::for_weight(double a, double Y_max, std::size_t J) {
  return YGrid(Y_max, J, 2.0 / (1.0 + a), a);
}

double YGrid::integrate(std::span<const double> f) const {
  if (f.size() != size()) throw GridMismatch("YGrid::integrate: sample count mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += weights_[j] * f[j];
  return sum;
}

}  // namespace fracheat
