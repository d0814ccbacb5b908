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

#include "dasrate/types.hpp"

#include <stdexcept>

namespace dasrate
{

std::string to_string(RateMethod m)
{
    switch (m)
    {
    case RateMethod::closed_form:
        return "closed_form";
    case RateMethod::bound_upper:
        return "bound_upper";
    case RateMethod::bound_lower:
        return "bound_lower";
    case RateMethod::monte_carlo:
        return "monte_carlo";
    case RateMethod::asymptotic:
        return "asymptotic";
    }
    return "unknown";
}

std::string to_string(Scheme s) { return s == Scheme::MRT ? "mrt" : "zfbf"; }

void SimulationPlan::validate() const
{
    if (fading_draws < 1 || user_realizations < 1 || antenna_realizations < 1)
        throw std::invalid_argument("SimulationPlan: realization counts must be at least 1");
    if (workers < 1)
        throw std::invalid_argument("SimulationPlan: workers must be at least 1");
    quadrature.validate();
}

} // namespace dasrate
