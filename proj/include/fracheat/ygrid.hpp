#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracheat {

/// Graded levels y_j = Y_max (j/J)^gamma, j = 0..J, on the extension axis,
/// together with quadrature weights for int_0^{Y_max} f(y) y^a dy.
///
/// The weights are the trapezoid rule in u = (y/Y_max)^{1/gamma}, where the
/// weighted measure becomes Y_max^{1+a} gamma u^beta du with
/// beta = gamma (1+a) - 1, plus the generalized Euler-Maclaurin correction
/// -zeta(-beta) h^{beta+1} for the u^beta endpoint behaviour at 0. With the
/// default gamma = 2/(1+a) the measure is linear in u and the rule is exact
/// to O(h^4) for integrands smooth in y^2.
class YGrid {
 public:
  YGrid(double Y_max, std::size_t J, double gamma, double a);

  /// Grading exponent 2/(1+a).
  static YGrid for_weight(double a, double Y_max, std::size_t J = 256);

  double Y_max() const { return Y_max_; }
  std::size_t J() const { return J_; }
  double gamma() const { return gamma_; }
  double a() const { return a_; }
  std::size_t size() const { return J_ + 1; }

  double level(std::size_t j) const { return levels_[j]; }
  std::span<const double> levels() const { return levels_; }
  std::span<const double> weights() const { return weights_; }

  /// sum_j w_j f_j, approximating int_0^{Y_max} f(y) y^a dy.
  double integrate(std::span<const double> f) const;

  bool operator==(const YGrid& o) const {
    return Y_max_ == o.Y_max_ && J_ == o.J_ && gamma_ == o.gamma_ && a_ == o.a_;
  }

 private:
  double Y_max_;
  std::size_t J_;
  double gamma_;
  double a_;
  std::vector<double> levels_;
  std::vector<double> weights_;
};

}  // namespace fracheat
