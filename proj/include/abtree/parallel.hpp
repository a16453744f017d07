/*
 * Copyright 2026 The abtree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace abtree {

/**
 * Runs fn(worker) for worker in [0, workers) on workers-1 spawned threads
 * plus the calling thread as worker 0, then joins them all (so returning
 * from run_parallel is a barrier). The first exception thrown by any worker
 * is rethrown in the caller after the join. Parallel phases are built as a
 * sequence of these fork-joins over disjoint node sets; no worker ever
 * writes a node another worker touches within the same phase.
 */
inline void run_parallel(int workers, const std::function<void(int)>& fn) {
    if (workers <= 1) {
        fn(0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    std::exception_ptr err;
    std::mutex err_mu;
    auto guarded = [&](int w) {
        try {
            fn(w);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(err_mu);
            if (!err) {
                err = std::current_exception();
            }
        }
    };
    for (int w = 1; w < workers; ++w) {
        threads.emplace_back(guarded, w);
    }
    guarded(0);
    for (std::thread& t : threads) {
        t.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

// Contiguous share [first, second) of n items for one of `workers` workers;
// shares differ in size by at most one.
inline std::pair<std::uint64_t, std::uint64_t> split_range(std::uint64_t n,
                                                           int workers,
                                                           int worker) {
    const std::uint64_t w = static_cast<std::uint64_t>(worker);
    const std::uint64_t chunk = n / workers;
    const std::uint64_t rem = n % workers;
    const std::uint64_t begin = w * chunk + std::min<std::uint64_t>(w, rem);
    const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    return {begin, end};
}

}  // namespace abtree
