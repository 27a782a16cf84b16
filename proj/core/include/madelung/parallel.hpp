#pragma once

#include <cstddef>
#include <functional>

namespace madelung {

// Worker threads used by parallel_for: MADELUNG_THREADS if set to a positive
// integer, otherwise std::thread::hardware_concurrency().
[[nodiscard]] int worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads. Indices
// are handed out in contiguous blocks, so callers writing result[i] get
// output independent of scheduling. If any call throws, the exception of the
// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace madelung
