#pragma once

#include <cstddef>
#include <functional>

namespace fracheat {

/// Worker count: hardware concurrency, capped by FRACHEAT_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once and
/// body must only write to state owned by that index, so results do not
/// depend on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracheat
