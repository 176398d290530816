#pragma once

#include <cstddef>
#include <functional>

namespace fedgo {

/// Runs body(0), ..., body(count-1), splitting the indices over up to
/// `threads` worker threads. Each index is handled exactly once; bodies must
/// be independent (they typically write into a preallocated slot per index),
/// so results do not depend on the thread count.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

} // namespace fedgo
