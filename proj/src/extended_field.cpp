#include "fracheat/extended_field.hpp"

#include <cmath>

#include "fracheat/errors.hpp"

namespace fracheat {
namespace {

void check_values(std::span<const Complex> values, std::size_t expected, const char* what) {
  if (values.size() != expected) throw GridMismatch(std::string(what) + ": value count mismatch");
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFiniteValue(std::string(what) + ": non-finite value");
    }
  }
}

}  // namespace

ExtendedSlice::ExtendedSlice(SpatialGrid spatial, YGrid ygrid)
    : spatial_(spatial), ygrid_(std::move(ygrid)), values_(spatial_.size() * ygrid_.size()) {}

ExtendedSlice::ExtendedSlice(SpatialGrid spatial, YGrid ygrid, std::vector<Complex> values)
    : spatial_(spatial), ygrid_(std::move(ygrid)), values_(std::move(values)) {
  check_values(values_, spatial_.size() * ygrid_.size(), "ExtendedSlice");
}

ExtendedSlice sample_slice(const SpatialGrid& spatial, const YGrid& ygrid,
                           const std::function<Complex(const Point& x, double y)>& rule) {
  ExtendedSlice out(spatial, ygrid);
  for (std::size_t l = 0; l < ygrid.size(); ++l) {
    for (std::size_t j = 0; j < spatial.size(); ++j) {
      out(l, j) = rule(spatial.point(j), ygrid.level(l));
    }
  }
  check_values(out.values(), out.values().size(), "sample_slice");
  return out;
}

ExtendedField::ExtendedField(SpaceTimeGrid base, YGrid ygrid)
    : base_(base), ygrid_(std::move(ygrid)), values_(base_.size() * ygrid_.size()) {}

ExtendedField::ExtendedField(SpaceTimeGrid base, YGrid ygrid, std::vector<Complex> values)
    : base_(base), ygrid_(std::move(ygrid)), values_(std::move(values)) {
  check_values(values_, base_.size() * ygrid_.size(), "ExtendedField");
}

GridFunction ExtendedField::level(std::size_t j) const {
  auto plane = level_plane(j);
  return GridFunction(base_, std::vector<Complex>(plane.begin(), plane.end()));
}

ExtendedSlice ExtendedField::time_slice(std::size_t k) const {
  ExtendedSlice out(base_.spatial(), ygrid_);
  const std::size_t S = base_.spatial_size();
  for (std::size_t l = 0; l < ygrid_.size(); ++l) {
    for (std::size_t j = 0; j < S; ++j) out(l, j) = (*this)(l, base_.index(k, j));
  }
  return out;
}

ExtendedSlice ExtendedField::at_time(double t) const {
  ExtendedSlice out(base_.spatial(), ygrid_);
  for (std::size_t l = 0; l < ygrid_.size(); ++l) {
    const auto interp = interpolate_in_time(level(l), t);
    std::copy(interp.begin(), interp.end(), out.plane(l).begin());
  }
  return out;
}

}  // namespace fracheat
