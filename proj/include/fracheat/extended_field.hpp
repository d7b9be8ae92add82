#pragma once

// Fields on the thick half-space: a spatial (or space-time) grid crossed with
// the graded extension levels of a YGrid. Values are stored level-major: one
// plane per y-level, each plane laid out like the underlying grid.

#include <span>
#include <vector>

#include "fracheat/spacetime.hpp"
#include "fracheat/ygrid.hpp"

namespace fracheat {

/// U(x, y) at one instant: spatial grid x YGrid.
class ExtendedSlice {
 public:
  ExtendedSlice(SpatialGrid spatial, YGrid ygrid);  // zero field
  ExtendedSlice(SpatialGrid spatial, YGrid ygrid, std::vector<Complex> values);

  const SpatialGrid& spatial() const { return spatial_; }
  const YGrid& ygrid() const { return ygrid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  std::span<const Complex> plane(std::size_t level) const {
    return std::span<const Complex>(values_).subspan(level * spatial_.size(), spatial_.size());
  }
  std::span<Complex> plane(std::size_t level) {
    return std::span<Complex>(values_).subspan(level * spatial_.size(), spatial_.size());
  }
  Complex operator()(std::size_t level, std::size_t spatial) const {
    return values_[level * spatial_.size() + spatial];
  }
  Complex& operator()(std::size_t level, std::size_t spatial) {
    return values_[level * spatial_.size() + spatial];
  }

 private:
  SpatialGrid spatial_;
  YGrid ygrid_;
  std::vector<Complex> values_;
};

/// Samples rule(x, y) on spatial grid x YGrid.
ExtendedSlice sample_slice(const SpatialGrid& spatial, const YGrid& ygrid,
                           const std::function<Complex(const Point& x, double y)>& rule);

/// U((x, t), y) on a space-time grid x YGrid (the extension of a boundary datum).
class ExtendedField {
 public:
  ExtendedField(SpaceTimeGrid base, YGrid ygrid);  // zero field
  ExtendedField(SpaceTimeGrid base, YGrid ygrid, std::vector<Complex> values);

  const SpaceTimeGrid& base() const { return base_; }
  const YGrid& ygrid() const { return ygrid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  std::span<const Complex> level_plane(std::size_t level) const {
    return std::span<const Complex>(values_).subspan(level * base_.size(), base_.size());
  }
  std::span<Complex> level_plane(std::size_t level) {
    return std::span<Complex>(values_).subspan(level * base_.size(), base_.size());
  }
  Complex operator()(std::size_t level, std::size_t flat) const {
    return values_[level * base_.size() + flat];
  }

  /// The y = 0 plane as a GridFunction.
  GridFunction boundary() const { return level(0); }
  GridFunction level(std::size_t j) const;

  /// Spatial slice at time index k.
  ExtendedSlice time_slice(std::size_t k) const;
  /// Spatial slice at arbitrary t by trigonometric interpolation in time.
  ExtendedSlice at_time(double t) const;

 private:
  SpaceTimeGrid base_;
  YGrid ygrid_;
  std::vector<Complex> values_;
};

}  // namespace fracheat
