#pragma once

#include <cstddef>
#include <functional>

namespace mmspectra {

// Worker count from MM_SPECTRA_THREADS, else hardware concurrency (>= 1).
std::size_t default_threads();

// Splits [0, n) into contiguous chunks, one per worker, and calls
// body(begin, end) for each. threads == 0 means default_threads(). The first
// exception thrown by any chunk is rethrown after all workers join.
void parallel_chunks(std::size_t n, std::size_t threads,
                     const std::function<void(std::size_t, std::size_t)>& body);

// Calls body(i) for every i in [0, n), distributing chunks over workers.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace mmspectra
