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

#ifndef DASRATE_MONTECARLO_HPP
#define DASRATE_MONTECARLO_HPP

#include "dasrate/channel.hpp"
#include "dasrate/geometry.hpp"
#include "dasrate/mrt.hpp"
#include "dasrate/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dasrate
{

// Fading draws are generated in fixed-size chunks, each from its own substream, so that any
// split of the chunks over workers reproduces the same numbers.
inline constexpr std::size_t fading_chunk = 50;

struct ScenarioRates
{
    std::vector<double> mean;      // per-user ergodic rate
    std::vector<double> std_error; // per-user standard error over draws
    std::size_t draws = 0;
    std::size_t rejected_draws = 0;

    double user_average() const;
};

struct EmpiricalOptions
{
    std::size_t draws = 2000;
    std::uint64_t seed = 1;
    std::uint64_t realization_a = 0; // substream key of the scenario
    std::uint64_t realization_u = 0;
    InterferenceModel interference = InterferenceModel::instantaneous;
    unsigned workers = 1;
};

// Ergodic rate of every user of one scenario. MRT uses per-draw precoders; the averaged model
// replaces the interference by its mean under the interference weights. ZFBF resamples draws whose
// channel is rank deficient and counts them.
ScenarioRates scenario_rates_empirical(const ScenarioLayout &scenario, Scheme scheme, const EmpiricalOptions &opt);

RateEstimate ergodic_rate_empirical(const ScenarioLayout &scenario, Scheme scheme, std::size_t k,
                                    const SimulationPlan &plan);

// Fading inside, user positions next, antenna positions outermost (DA only; CA uses one
// antenna realization). The standard error comes from the outermost level.
RateEstimate average_user_rate(const SimulationPlan &plan, std::size_t L, std::size_t K, Layout layout,
                               Scheme scheme, double alpha, double snr_budget);

// Per-scenario user-averaged rates from the same nested loop, values[a][u]
std::vector<std::vector<double>> scenario_average_rates(const SimulationPlan &plan, std::size_t L, std::size_t K,
                                                        Layout layout, Scheme scheme, double alpha,
                                                        double snr_budget);

// Mean intra-cell interference at user k from the weights: P sum_{j != k} sum_l a(j,l) gamma(k,l)^2
double interference_power_model(const LargeScaleProfile &profile, const InterferenceWeights &weights,
                                 std::size_t k, double snr_budget);

struct InterferenceSample
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t draws = 0;
};

// Empirical mean of P sum_{j != k} |g_k w_j|^2 under MRT
InterferenceSample interference_power_empirical(const ScenarioLayout &scenario, std::size_t k, std::size_t draws,
                                                std::uint64_t seed);

} // namespace dasrate

#endif
