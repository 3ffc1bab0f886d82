#ifndef CONJOPT_PARALLEL_HPP
#define CONJOPT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace conjopt {

// Runs body(i) for i in [0, count) on up to `threads` workers over contiguous
// chunks. Callers write results into preallocated per-index slots and reduce
// serially afterwards, so the outcome is identical for any thread count.
// threads <= 1 runs inline; threads == 0 uses hardware concurrency.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

int default_thread_count();

} // namespace conjopt

#endif
