#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "fracheat/errors.hpp"
#include "fracheat/extension.hpp"
#include "fracheat/io.hpp"

using namespace fracheat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "fracheat_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<unsigned char> bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

GridFunction sample() {
  const auto grid = make_grid(1, 4.0, 8, 2.0, 4, -1.0);
  return sample_field(grid, [](const Point& x, double t) { return Complex(x[0] + 0.1, t * t - 0.3); });
}

}  // namespace

TEST(Io, GridFunctionRoundTripIsBitExact) {
  const auto f = sample();
  const auto p = scratch("f.fhl");
  write_grid_function(p, f);
  const auto g = read_grid_function(p);
  EXPECT_EQ(g.grid(), f.grid());
  for (std::size_t i = 0; i < f.values().size(); ++i) EXPECT_EQ(g.values()[i], f.values()[i]);
}

TEST(Io, GridFunctionLayout) {
  const auto f = sample();
  const auto p = scratch("layout.fhl");
  write_grid_function(p, f);
  const auto b = bytes_of(p);
  ASSERT_EQ(b.size(), 40u + 16u * f.values().size());
  EXPECT_EQ(std::string(b.begin(), b.begin() + 4), "FHL1");
  EXPECT_EQ(b[4], 1);  // n, little-endian
  EXPECT_EQ(b[5] | b[6] | b[7], 0);
  double L_x;
  std::memcpy(&L_x, b.data() + 8, 8);
  EXPECT_EQ(L_x, 4.0);
  EXPECT_EQ(b[16], 8);  // N_x
  double first_re;
  std::memcpy(&first_re, b.data() + 40, 8);
  EXPECT_EQ(first_re, f.values()[0].real());
}

TEST(Io, ExtendedFieldRoundTrip) {
  const auto grid = make_grid(1, 16.0, 16, 16.0, 16, -8.0);
  const auto u = sample_field(grid, [](const Point& x, double t) { return Complex(std::exp(-x[0] * x[0] - t * t)); });
  const auto params = ExtensionParams::from_s(0.5);
  const auto U = extend(u, params, extension_ygrid(grid, params, 32));
  const auto p = scratch("U.fhx");
  write_extended_field(p, U);
  const auto V = read_extended_field(p);
  EXPECT_EQ(V.base(), U.base());
  EXPECT_EQ(V.ygrid(), U.ygrid());
  for (std::size_t i = 0; i < U.values().size(); ++i) EXPECT_EQ(V.values()[i], U.values()[i]);
  const auto b = bytes_of(p);
  EXPECT_EQ(std::string(b.begin(), b.begin() + 4), "FHX1");
  EXPECT_EQ(b.size(), 40u + 32u + 16u * U.values().size());
}

TEST(Io, RejectsCorruptFiles) {
  const auto f = sample();
  const auto p = scratch("bad.fhl");
  write_grid_function(p, f);
  EXPECT_THROW(read_extended_field(p), IoError);
  auto b = bytes_of(p);
  b.pop_back();
  {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  }
  EXPECT_THROW(read_grid_function(p), IoError);
  EXPECT_THROW(read_grid_function(scratch("missing.fhl")), IoError);
  EXPECT_THROW(write_grid_function(scratch("no_such_dir") / "x.fhl", f), IoError);
}

TEST(Io, TimeSliceCsv) {
  const auto f = sample();
  const auto p = scratch("slice.csv");
  write_time_slice_csv(p, f, 2);
  const auto lines = lines_of(p);
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], "x,t,re,im");
  EXPECT_EQ(lines[1], "-2,0,-1.8999999999999999,-0.29999999999999999");
  EXPECT_THROW(write_time_slice_csv(p, f, 4), InvalidArgument);
}

TEST(Io, KernelTableCsv) {
  const auto p = scratch("kernel.csv");
  write_kernel_table_csv(p, {{0.5, 1.0, 0.25, 0.0, 0.125}});
  const auto lines = lines_of(p);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "y1,y,t,a,value");
  EXPECT_EQ(lines[1], "0.5,1,0.25,0,0.125");
}

TEST(Io, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.0), "-2");
}
