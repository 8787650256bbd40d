#pragma once
#include <cstdint>
#include <functional>

namespace axcond {

// Runs task(0..count-1) across `workers` threads. Tasks must write results
// into slots owned by their index; callers reduce in index order afterwards,
// so outputs are identical for any worker count. The first exception thrown
// by a task is rethrown on the calling thread.
void run_indexed(std::int64_t count, int workers,
                 const std::function<void(std::int64_t)>& task);

}  // namespace axcond
