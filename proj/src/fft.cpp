#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace fracheat::detail {
namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex plan_mutex;

struct PlanCache {
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;
  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

fftw_plan get_plan(const std::vector<int>& dims, int sign) {
  static PlanCache cache;
  std::lock_guard lock(plan_mutex);
  auto key = std::make_pair(dims, sign);
  if (auto it = cache.plans.find(key); it != cache.plans.end()) return it->second;
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<std::complex<double>> scratch(total);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("fftw planning failed");
  cache.plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, const std::vector<int>& dims,
                 FftDirection direction) {
  const int sign = direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = get_plan(dims, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace fracheat::detail
