#pragma once

#include <cstddef>
#include <functional>

namespace entaudit {

// Worker cap: ENTAUDIT_THREADS if set, else hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);  // 0 restores the environment default

// Runs fn(i) for i in [0, n). Work is split by index block, so results keyed
// by i land deterministically regardless of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace entaudit
