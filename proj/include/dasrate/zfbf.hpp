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

#ifndef DASRATE_ZFBF_HPP
#define DASRATE_ZFBF_HPP

#include "dasrate/mrt.hpp"
#include "dasrate/special.hpp"
#include "dasrate/types.hpp"

#include <armadillo>

#include <cstddef>

namespace dasrate
{

struct ZfPrecoder
{
    arma::cx_mat pseudo_inverse; // L x K, F = G^H (G G^H)^-1
    arma::cx_mat w;              // unit-norm columns f_k / ||f_k||
    arma::vec effective_gain;    // 1 / ||f_k||^2
};

// Largest accepted condition estimate ||R||_F ||R^-1||_F of the triangular factor
inline constexpr double zf_condition_limit = 1e12;

// Via G^H = Q R: F = Q R^-H, ||f_k||^2 = ||row k of R^-1||^2.
// Throws InfeasibleError for L < K and SingularChannelError beyond zf_condition_limit.
ZfPrecoder zf_precoder(const arma::cx_mat &G_tilde);

// Effective gains only (no precoder matrix), for the simulation inner loop
arma::vec zf_effective_gains(const arma::cx_mat &G_tilde);

// E[log2(1 + c X)], X ~ Gamma(L-K+1, 1/L), c = snr L rho^-alpha / K
RateEstimate rate_zfbf_ca(std::size_t L, std::size_t K, double snr_budget, double rho, double alpha,
                          const QuadratureSpec &spec = {});

// Successive approximations of rate_zfbf_ca:
//   step 1: log2(1 + snr (L-K+1) rho^-alpha / K)
//   step 2: log2(1 + snr (L/K - 1) rho^-alpha)
//   step 3: log2(snr (L/K - 1) rho^-alpha)
double rate_zfbf_ca_approx(std::size_t L, std::size_t K, double snr_budget, double rho, double alpha, int step = 3);

// exp_e1((K / snr) d^alpha) log2(e)
RateEstimate rate_lb_zfbf_da(double trimmed_d_min, std::size_t K, double snr_budget, double alpha);

// log2(snr (L/K - 1)) + (alpha/2) log2(e)
RateEstimate avg_rate_zfbf_ca(std::size_t L, std::size_t K, double snr_budget, double alpha);

// rate_zfbf_ca averaged over rho with density 2 rho, no high-SNR approximation
RateEstimate avg_rate_zfbf_ca_exact(std::size_t L, std::size_t K, double snr_budget, double alpha,
                                    const QuadratureSpec &spec = {});

// log2(snr (upsilon - 1)) + (alpha/2) log2(e), upsilon > 1
double asym_rate_zfbf_ca(const AsymptoticParams &params, double snr_budget);

// 2 (L-K+1) log2(e) int_0^1 y int exp_e1((K/snr) x^alpha) (1 - F)^(L-K) f dx dy.
// The inner integral runs over v = 1 - (1 - F)^(L-K+1), the cdf of the minimum distance.
RateEstimate avg_rate_lb_zfbf_da(std::size_t L, std::size_t K, double snr_budget, double alpha,
                                 const QuadratureSpec &spec = {});

// Integrand in t of the E[d^alpha] approximation:
// (L-K+1) / (L-K)^(1+alpha/2) * (Gamma(1+alpha/2) - Gamma(1+alpha/2, (L-K)(1-t)^2))
double asym_divergence_integrand(std::size_t L, std::size_t K, double alpha, double t);

// The same averaged over t with density 2t
double asym_divergence_diagnostic(std::size_t L, std::size_t K, double alpha, const QuadratureSpec &spec = {});

} // namespace dasrate

#endif
