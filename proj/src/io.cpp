#include "fracheat/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "fracheat/errors.hpp"

namespace fracheat {

namespace {

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
  }
  void f64(double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
  }
  void raw(const char* s, std::size_t n) { bytes_.insert(bytes_.end(), s, s + n); }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(bytes_.data(), static_cast<std::streamsize>(bytes_.size()));
    if (!out) throw IoError("write failed: " + path.string());
  }

 private:
  std::vector<char> bytes_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path_);
    bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * i);
    return std::bit_cast<double>(v);
  }
  std::string magic() {
    need(4);
    std::string m(bytes_.data() + pos_, 4);
    pos_ += 4;
    return m;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  const std::string& path() const { return path_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw IoError("truncated file: " + path_);
  }
  std::string path_;
  std::vector<char> bytes_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, const char* magic, const SpaceTimeGrid& g) {
  w.raw(magic, 4);
  w.u32(static_cast<std::uint32_t>(g.dim()));
  w.f64(g.L_x());
  w.u32(static_cast<std::uint32_t>(g.N_x()));
  w.f64(g.L_t());
  w.u32(static_cast<std::uint32_t>(g.N_t()));
  w.f64(g.t_origin());
}

SpaceTimeGrid read_header(Reader& r, const char* magic) {
  if (r.magic() != magic) throw IoError(r.path() + ": missing magic " + std::string(magic));
  const auto n = r.u32();
  const double L_x = r.f64();
  const auto N_x = r.u32();
  const double L_t = r.f64();
  const auto N_t = r.u32();
  const double t0 = r.f64();
  try {
    return make_grid(static_cast<int>(n), L_x, N_x, L_t, N_t, t0);
  } catch (const InvalidArgument& e) {
    throw IoError(r.path() + ": invalid grid header (" + e.what() + ")");
  }
}

void write_values(Writer& w, std::span<const Complex> values) {
  for (const auto& v : values) {
    w.f64(v.real());
    w.f64(v.imag());
  }
}

std::vector<Complex> read_values(Reader& r, std::size_t count) {
  if (r.remaining() != 16 * count) throw IoError(r.path() + ": payload size does not match header");
  std::vector<Complex> values(count);
  for (auto& v : values) {
    const double re = r.f64();
    const double im = r.f64();
    v = Complex(re, im);
  }
  return values;
}

std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

void write_grid_function(const std::filesystem::path& path, const GridFunction& f) {
  Writer w;
  write_header(w, "FHL1", f.grid());
  write_values(w, f.values());
  w.save(path);
}

GridFunction read_grid_function(const std::filesystem::path& path) {
  Reader r(path);
  auto grid = read_header(r, "FHL1");
  auto values = read_values(r, grid.size());
  return GridFunction(std::move(grid), std::move(values));
}

void write_extended_field(const std::filesystem::path& path, const ExtendedField& U) {
  Writer w;
  write_header(w, "FHX1", U.base());
  const YGrid& yg = U.ygrid();
  w.f64(yg.Y_max());
  w.f64(static_cast<double>(yg.J()));
  w.f64(yg.gamma());
  w.f64(yg.a());
  write_values(w, U.values());
  w.save(path);
}

ExtendedField read_extended_field(const std::filesystem::path& path) {
  Reader r(path);
  auto grid = read_header(r, "FHX1");
  const double Y_max = r.f64();
  const double J = r.f64();
  const double gamma = r.f64();
  const double a = r.f64();
  if (!(J >= 1.0) || J != std::floor(J)) throw IoError(r.path() + ": invalid level count");
  YGrid yg(Y_max, static_cast<std::size_t>(J), gamma, a);
  auto values = read_values(r, grid.size() * yg.size());
  return ExtendedField(std::move(grid), std::move(yg), std::move(values));
}

void write_time_slice_csv(const std::filesystem::path& path, const GridFunction& f, std::size_t k) {
  const auto& g = f.grid();
  if (k >= g.N_t()) throw InvalidArgument("write_time_slice_csv: time index out of range");
  auto out = open_text(path);
  out << (g.dim() == 1 ? "x,t,re,im\n" : "x1,x2,t,re,im\n");
  for (std::size_t j = 0; j < g.spatial_size(); ++j) {
    const Point x = g.spatial().point(j);
    out << format_double(x[0]) << ',';
    if (g.dim() == 2) out << format_double(x[1]) << ',';
    const Complex v = f(k, j);
    out << format_double(g.t(k)) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_kernel_table_csv(const std::filesystem::path& path, const std::vector<KernelSample>& rows) {
  auto out = open_text(path);
  out << "y1,y,t,a,value\n";
  for (const auto& r : rows) {
    out << format_double(r.y1) << ',' << format_double(r.y) << ',' << format_double(r.t) << ','
        << format_double(r.a) << ',' << format_double(r.value) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace fracheat
