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

#ifndef DASRATE_MRT_HPP
#define DASRATE_MRT_HPP

#include "dasrate/channel.hpp"
#include "dasrate/geometry.hpp"
#include "dasrate/special.hpp"
#include "dasrate/types.hpp"

#include <armadillo>

#include <cstddef>
#include <optional>
#include <vector>

namespace dasrate
{

// w = g^H / ||g||
arma::cx_vec mrt_precoder(const arma::cx_rowvec &g);

enum class WeightMethod
{
    closed_form, // partial-fraction formula, L <= 64 and well conditioned
    integral,    // one-dimensional Laplace-transform integral, any weights
    monte_carlo, // sampled from the definition
};

// a(j, l) = E[|g_tilde_{j,l}|^2 / ||g_tilde_j||^2]
struct InterferenceWeights
{
    arma::mat a;                      // K x L
    std::vector<WeightMethod> method; // per row
};

struct WeightOptions
{
    std::size_t closed_form_max_L = 64;
    bool monte_carlo_fallback = false; // sample instead of integrating when the closed form is refused
    std::size_t monte_carlo_draws = 100000;
    std::uint64_t seed = 1;
};

// One row. Closed form throws IllConditionedError for near-equal weights or when the partial
// fraction coefficients exceed 1e5 in absolute sum (weights would lose more than ~1e-9).
std::vector<double> interference_weights_closed_form(const std::vector<double> &beta_sq);

// a_l = int_0^inf w_l / (1 + s w_l)^2 prod_{i != l} 1 / (1 + s w_i) ds, evaluated on a log grid
std::vector<double> interference_weights_integral(const std::vector<double> &beta_sq);

std::vector<double> interference_weights_monte_carlo(const std::vector<double> &beta_sq, std::size_t draws,
                                                     RandomStream &rng);

// Every user's row; closed form where allowed, fallback otherwise
InterferenceWeights interference_weights(const LargeScaleProfile &profile, const WeightOptions &opt = {});

// L / (K - 1)
double sinr_mrt_ca(std::size_t L, std::size_t K);

RateEstimate rate_mrt_ca(std::size_t L, std::size_t K, const QuadratureSpec &spec = {});

// 1 / sum_{j != k} sum_l a(j,l) beta(k,l)^2. With snr_budget set, the noise term
// K / (snr ||gamma_k||^2) is kept in the denominator.
double sinr_mrt_da(const LargeScaleProfile &profile, const InterferenceWeights &weights, std::size_t k,
                   std::optional<double> snr_budget = std::nullopt);

// Hypoexponential mixture of exp_e1 terms. Throws IllConditionedError like hypoexponential().
RateEstimate rate_mrt_da(const std::vector<double> &beta_sq, double mu);

// E[log2(1 + mu X)] = log2(e) int_0^inf e^-s (1 - E[e^(-s mu X)]) / s ds; stable for any weights
RateEstimate rate_mrt_da_integral(const std::vector<double> &beta_sq, double mu);

// 1 / m_k if m_k > 0, else (d_user / d_antenna)^alpha
double sinr_ub_mrt_da(const NeighborStats &stats, double alpha, std::size_t k);

// Position average of exp_e1(1 / mu_ub) log2(e) over DA scenarios
RateEstimate avg_rate_ub_mrt_da(const SimulationPlan &plan, std::size_t L, std::size_t K, double alpha);

struct AsymptoticParams
{
    double upsilon = 2.0; // L / K
    double alpha = 4.0;

    void validate() const;
};

// log2(1 + upsilon)
double asym_rate_mrt_ca(const AsymptoticParams &params);

// Poisson(1/upsilon) weight at n
double poisson_weight(std::size_t n, double upsilon);

double asym_rate_ub_mrt_da(const AsymptoticParams &params, const QuadratureSpec &spec = {});

// Approximate SINR obtained by keeping only each interferer's dominant antenna l_j* and replacing
// gamma(k, l_j*) by the user-user path gain. Reported next to the exact value, never asserted.
double sinr_mrt_da_approx(const ScenarioLayout &scenario, const NeighborStats &stats, std::size_t k);

} // namespace dasrate

#endif
