#pragma once

// Static-partition parallel loops. Work is cut into a fixed number of chunks
// that depends only on the problem size, never on the thread count, so any
// reduction performed in chunk order is reproducible for every thread count.

#include <cstddef>
#include <functional>

namespace ringgeom::parallel {

/// Process-wide worker count; 0 restores the hardware default.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Number of chunks used for a range of `count` items.
std::size_t chunk_count(std::size_t count, std::size_t min_chunk = 1);

/// Calls fn(chunk, begin, end) for every chunk of [0, count). Chunk
/// boundaries are a pure function of (count, min_chunk).
void for_chunks(std::size_t count, std::size_t min_chunk,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace ringgeom::parallel
