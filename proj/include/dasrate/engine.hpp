// SPDX-License-Identifier: Apache-2.0
//
// dasrate: downlink rate analysis for co-located and distributed antenna layouts
// Copyright (C) 2026 The dasrate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DASRATE_ENGINE_HPP
#define DASRATE_ENGINE_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/types.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dasrate
{

// Runs fn(i) for i in [0, n) on `workers` threads and returns the results in index order.
// The first exception thrown by any task is rethrown after all threads have joined.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn &&fn)
{
    std::vector<T> out(n);
    if (workers <= 1 || n <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                out[i] = fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(n);
            }
        }
    };

    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

// Scenario for antenna realization a and user realization u of a nested average. Antennas depend
// on (seed, a) only; users on (seed, a, u) and keep min_separation from the antennas.
ScenarioLayout scenario_for_realization(std::uint64_t seed, std::size_t a, std::size_t u, std::size_t L,
                                        std::size_t K, Layout layout, double alpha, double snr_budget);

// Mean and standard error over outer groups of a nested sample. values[a][u] holds the per-scenario
// means. With a single outer group the inner values are used instead.
struct NestedSummary
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

NestedSummary summarize_nested(const std::vector<std::vector<double>> &values);

} // namespace dasrate

#endif
