#pragma once

#include <cstddef>
#include <functional>

namespace hyperheat {

/**
 * Splits [0, count) into at most `threads` contiguous chunks and runs
 * body(begin, end) on each. threads <= 1 runs inline.
 */
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace hyperheat
