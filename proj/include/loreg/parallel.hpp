#pragma once

#include <functional>

namespace loreg {

/// Runs fn(0..n-1) on up to `width` threads (width <= 0 means hardware
/// concurrency). Tasks must write only to their own output slots; the first
/// exception thrown by any task is rethrown after all threads join.
void parallel_for(int n, int width, const std::function<void(int)>& fn);

int default_parallelism();

}  // namespace loreg
