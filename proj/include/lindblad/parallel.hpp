#pragma once

#include <functional>

namespace lindblad {

// Thread cap: LINDBLAD_THREADS if set (clamped to >= 1), else hardware
// concurrency. Results of parallel loops must not depend on the cap.
int max_threads();

// Runs fn(0..n-1) on up to max_threads() workers. Blocks until done.
// Exceptions from workers are rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace lindblad
