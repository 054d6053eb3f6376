#pragma once

#include <cstddef>
#include <functional>

namespace nbz {

/// Runs fn(0) .. fn(count-1) on up to `threads` workers. The first exception
/// thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace nbz
