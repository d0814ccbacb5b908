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

#ifndef DASRATE_TYPES_HPP
#define DASRATE_TYPES_HPP

#include "dasrate/special.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

namespace dasrate
{

enum class RateMethod
{
    closed_form,
    bound_upper,
    bound_lower,
    monte_carlo,
    asymptotic,
};

enum class Scheme
{
    MRT,
    ZFBF,
};

// How the MRT empirical estimator treats interference: per fading draw, or replaced by its mean
enum class InterferenceModel
{
    instantaneous,
    averaged,
};

std::string to_string(RateMethod m);
std::string to_string(Scheme s);

// Rate in bits/s/Hz. std_error and n_samples are meaningful for Monte Carlo estimates only.
struct RateEstimate
{
    double value = 0.0;
    RateMethod method = RateMethod::closed_form;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::size_t rejected_draws = 0; // rank-deficient ZFBF draws that were resampled

    std::pair<double, double> ci95() const { return {value - 1.959963984540054 * std_error, value + 1.959963984540054 * std_error}; }
};

struct SimulationPlan
{
    std::size_t fading_draws = 2000;
    std::size_t user_realizations = 500;
    std::size_t antenna_realizations = 50;
    std::uint64_t master_seed = 1;
    QuadratureSpec quadrature{};
    Scheme scheme = Scheme::MRT;
    InterferenceModel interference = InterferenceModel::instantaneous;
    unsigned workers = 1;

    void validate() const;
};

} // namespace dasrate

#endif
