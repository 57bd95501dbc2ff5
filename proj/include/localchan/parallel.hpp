#pragma once

#include <functional>

namespace localchan {

/// Number of worker threads: LOCALCHAN_THREADS if set and positive,
/// otherwise (or when 0) the hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; callers that
/// need deterministic output write into preallocated slot i and reduce
/// sequentially afterwards.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace localchan
