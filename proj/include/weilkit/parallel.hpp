#pragma once

#include <cstddef>
#include <functional>

namespace weil {

/// Worker count: WEILKIT_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

/// Calls body(i) for i in [begin, end), split into contiguous chunks over
/// up to thread_count() threads. Exceptions are rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace weil
