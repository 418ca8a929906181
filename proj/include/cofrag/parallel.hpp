#pragma once

#include <functional>

namespace cofrag {

// Number of workers used by parallel_for. Controlled by the environment
// variable COFRAG_THREADS (0 or unset means hardware concurrency).
int worker_count();

// Runs body(i) for i in [begin, end). Falls back to a serial loop when only
// one worker is configured or the range is small. Callers must ensure
// distinct indices write to disjoint data.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace cofrag
