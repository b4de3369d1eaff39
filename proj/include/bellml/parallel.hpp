#pragma once

#include <cstddef>
#include <functional>

namespace bellml {

// Runs fn(i) for i in [0, n) on a small thread pool. Each index must write
// only its own output slot; results are then identical for any worker count.
// Thread count: BELLML_THREADS if set, else std::thread::hardware_concurrency.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bellml
