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

#include "dasrate/engine.hpp"
#include "dasrate/errors.hpp"

namespace dasrate
{

ScenarioLayout scenario_for_realization(std::uint64_t seed, std::size_t a, std::size_t u, std::size_t L,
                                        std::size_t K, Layout layout, double alpha, double snr_budget)
{
    if (L == 0 || K == 0)
        throw EmptyInputError("scenario_for_realization: L and K must be at least 1");
    ScenarioLayout s;
    s.layout = layout;
    s.alpha = alpha;
    s.snr_budget = snr_budget;
    if (layout == Layout::CA)
        s.antennas.assign(L, CellPoint{});
    else
    {
        auto antenna_rng = RandomStream::derive(seed, StreamPurpose::antennas, {a});
        s.antennas = sample_uniform_disk(L, antenna_rng);
    }
    auto user_rng = RandomStream::derive(seed, StreamPurpose::users, {a, u});
    s.users = sample_users_for(s.antennas, layout, K, user_rng);
    s.validate();
    return s;
}

NestedSummary summarize_nested(const std::vector<std::vector<double>> &values)
{
    std::vector<double> samples;
    if (values.size() > 1)
    {
        for (const auto &group : values)
        {
            if (group.empty())
                throw EmptyInputError("summarize_nested: empty group");
            double m = 0.0;
            for (double v : group)
                m += v;
            samples.push_back(m / static_cast<double>(group.size()));
        }
    }
    else if (values.size() == 1)
        samples = values.front();
    if (samples.empty())
        throw EmptyInputError("summarize_nested: no samples");

    NestedSummary s;
    s.n = samples.size();
    for (double v : samples)
        s.mean += v;
    s.mean /= static_cast<double>(s.n);
    if (s.n > 1)
    {
        double ss = 0.0;
        for (double v : samples)
            ss += (v - s.mean) * (v - s.mean);
        s.std_error = std::sqrt(ss / static_cast<double>(s.n - 1) / static_cast<double>(s.n));
    }
    return s;
}

} // namespace dasrate
