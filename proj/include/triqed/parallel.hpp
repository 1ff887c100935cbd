#pragma once

#include <functional>

namespace triqed {

// Worker count for internal loops. TRIQED_THREADS caps it when set (a value of
// 1 forces serial execution); otherwise hardware concurrency is used.
int worker_count();

// Runs fn(i) for i in [0, n). Chunked across workers; fn must be safe to call
// concurrently for distinct i. Falls back to a serial loop for small n.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace triqed
