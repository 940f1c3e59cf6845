#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>

namespace fzdr {

/// Number of hardware threads, never less than 1.
std::size_t default_thread_count();

/// Calls `body(begin, end)` on contiguous chunks covering [0, count).
/// With threads <= 1 the whole range runs on the calling thread. Callers
/// must only write to state owned by their chunk.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed and a path of
/// integer coordinates (grid cell, fold, tree index, ...).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

}  // namespace fzdr
