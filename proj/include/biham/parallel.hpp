#pragma once

#include <cstddef>
#include <functional>

namespace biham {

// Worker count: BIHAM_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_budget();

// Splits [0, n) into contiguous chunks, one per worker; body(begin, end).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace biham
