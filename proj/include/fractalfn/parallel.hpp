#pragma once

#include <cstddef>
#include <functional>

namespace fractalfn {

/// Worker count: FRACTALFN_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned thread_count();

/// Splits [0, count) into contiguous chunks and runs body(begin, end) on each.
/// Chunks touch disjoint output ranges, so results do not depend on the number
/// of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 4096);

}  // namespace fractalfn
