// SPDX-License-Identifier: Apache-2.0
//! \file threading.hpp
//! Deterministic fork-join parallelism.
//!
//! Work is always split into a FIXED number of chunks (independent of the
//! thread count); each chunk writes into its own output slot and the caller
//! combines the slots in chunk order. Floating-point results are therefore
//! byte-identical for any --threads value, which the determinism scenario
//! asserts.
#pragma once

#include <cstddef>
#include <functional>

namespace kinetica {

/// Number of fixed work chunks used by chunked reductions.
inline constexpr int kReductionChunks = 64;

/// Set/get the global worker-thread cap (default: hardware concurrency,
/// overridable by --threads or the KINETICA_THREADS environment variable).
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, n) across up to max_threads() workers.
/// fn must only write to per-i slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Runs fn(chunk, begin, end) for `kReductionChunks` fixed ranges covering
/// [0, n). Chunks are claimed dynamically by workers, so use the chunk index
/// (not the thread) to address output slots.
void parallel_for_chunked(std::size_t n,
                          const std::function<void(int, std::size_t, std::size_t)>& fn);

}  // namespace kinetica
