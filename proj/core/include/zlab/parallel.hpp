#pragma once

#include <functional>

namespace zlab {

// Global worker count for data-parallel loops. Each output element is always
// reduced in a fixed sequential order, so results are identical for any
// thread count.
void set_threads(int n);
int threads();

// Runs fn(i) for i in [0, n). Static chunking over the configured threads.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace zlab
