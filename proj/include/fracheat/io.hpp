#pragma once

// Binary field files and CSV exports.
//
// FHL1 (GridFunction), all little-endian:
//   "FHL1" | n u32 | L_x f64 | N_x u32 | L_t f64 | N_t u32 | t_origin f64 |
//   values as interleaved (re, im) f64 pairs, time-major.
// FHX1 (ExtendedField): the FHL1 header under magic "FHX1", then
//   Y_max f64 | J f64 | gamma f64 | a f64 | one FHL1-ordered plane per level.

#include <filesystem>
#include <string>
#include <vector>

#include "fracheat/extended_field.hpp"
#include "fracheat/spacetime.hpp"

namespace fracheat {

void write_grid_function(const std::filesystem::path& path, const GridFunction& f);
GridFunction read_grid_function(const std::filesystem::path& path);

void write_extended_field(const std::filesystem::path& path, const ExtendedField& U);
ExtendedField read_extended_field(const std::filesystem::path& path);

/// One row per spatial node at time index k: x (or x1,x2), t, re, im.
void write_time_slice_csv(const std::filesystem::path& path, const GridFunction& f, std::size_t k);

struct KernelSample {
  double y1;
  double y;
  double t;
  double a;
  double value;
};

/// Columns y1, y, t, a, value.
void write_kernel_table_csv(const std::filesystem::path& path, const std::vector<KernelSample>& rows);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace fracheat
