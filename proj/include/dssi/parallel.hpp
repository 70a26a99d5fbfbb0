#pragma once

#include <cstddef>
#include <functional>

namespace dssi {

/// Caps worker threads used by library kernels. 0 restores the default
/// (hardware concurrency). Results never depend on this value: every
/// parallel kernel partitions independent work items with no cross-item
/// reductions.
void set_max_threads(std::size_t n);
std::size_t max_threads();

/// Calls body(begin, end) over disjoint contiguous ranges covering [0, count).
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dssi
