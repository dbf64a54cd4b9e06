// Copyright 2026 The ltrine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace ltrine {

/// Worker count for the parallel helpers. LTRINE_THREADS overrides the default.
[[nodiscard]] inline unsigned default_thread_count() {
    if (const char *env = std::getenv("LTRINE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Threads {
    unsigned count = default_thread_count();
};

/// Calls body(i) for every i in [0, n). Indices are split into contiguous
/// chunks, one per worker; body must only touch state owned by index i.
template <class Body>
void parallel_for(std::size_t n, Body &&body, Threads threads = {}) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads.count), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

/// Order-preserving map; out[i] = fn(i) regardless of scheduling.
template <class Fn>
[[nodiscard]] auto parallel_map(std::size_t n, Fn &&fn, Threads threads = {}) {
    using T = std::decay_t<decltype(fn(std::size_t{}))>;
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); }, threads);
    return out;
}

/// Best value and its index. Ties resolve to the lower index, so the reduction
/// is independent of how the range was chunked.
struct ArgMax {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t index = static_cast<std::size_t>(-1);

    void offer(double v, std::size_t i) {
        if (v > value || (v == value && i < index)) {
            value = v;
            index = i;
        }
    }
    void merge(const ArgMax &other) { offer(other.value, other.index); }
    [[nodiscard]] bool found() const { return index != static_cast<std::size_t>(-1); }
};

/// Parallel argmax of score(i) over [0, n). score returns an optional-like
/// pair (feasible, value); infeasible cells are skipped.
template <class Score>
[[nodiscard]] ArgMax parallel_argmax(std::size_t n, Score &&score, Threads threads = {}) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads.count), std::max<std::size_t>(n, 1));
    std::vector<ArgMax> partial(workers);
    parallel_for(
        workers,
        [&](std::size_t w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            for (std::size_t i = begin; i < end; ++i) {
                const auto [ok, v] = score(i);
                if (ok) partial[w].offer(v, i);
            }
        },
        Threads{static_cast<unsigned>(workers)});
    ArgMax best;
    for (const auto &p : partial) best.merge(p);
    return best;
}

} // namespace ltrine
