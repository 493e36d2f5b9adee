#pragma once

#include <functional>

namespace lapblend {

/// Worker threads used by row-parallel kernels. 0 selects the hardware
/// concurrency. Results never depend on this value: each row is computed
/// by exactly one worker with a fixed operation order.
void set_thread_count(int threads);
int thread_count() noexcept;

/// Invokes `body(row)` for every row in [0, rows).
void parallel_for_rows(int rows, const std::function<void(int)>& body);

}  // namespace lapblend
