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

#include "dasrate/channel.hpp"
#include "dasrate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dasrate
{

std::vector<double> LargeScaleProfile::beta_sq(std::size_t k) const
{
    std::vector<double> w(L());
    for (std::size_t l = 0; l < L(); ++l)
        w[l] = beta(k, l) * beta(k, l);
    return w;
}

arma::cx_mat FadingRealization::g(const LargeScaleProfile &p) const { return h % p.gamma; }

arma::cx_mat FadingRealization::g_tilde(const LargeScaleProfile &p) const { return h % p.beta; }

double path_gain(double d, double alpha)
{
    if (!(d > 0.0))
        throw SingularGeometryError("path_gain: zero user-antenna distance");
    return std::pow(d, -0.5 * alpha);
}

LargeScaleProfile large_scale_profile(const ScenarioLayout &scenario)
{
    scenario.validate();
    const std::size_t K = scenario.K(), L = scenario.L();
    LargeScaleProfile p;
    p.gamma.set_size(K, L);
    p.beta.set_size(K, L);
    p.gamma_norm_sq.set_size(K);

    for (std::size_t k = 0; k < K; ++k)
    {
        if (scenario.layout == Layout::CA)
        {
            const double g = path_gain(scenario.users[k].rho, scenario.alpha);
            p.gamma.row(k).fill(g);
            p.gamma_norm_sq(k) = static_cast<double>(L) * g * g;
            p.beta.row(k).fill(1.0 / std::sqrt(static_cast<double>(L)));
            continue;
        }
        double norm_sq = 0.0;
        for (std::size_t l = 0; l < L; ++l)
        {
            const double g = path_gain(distance(scenario.users[k], scenario.antennas[l]), scenario.alpha);
            p.gamma(k, l) = g;
            norm_sq += g * g;
        }
        p.gamma_norm_sq(k) = norm_sq;
        p.beta.row(k) = p.gamma.row(k) / std::sqrt(norm_sq);
    }
    return p;
}

FadingRealization sample_fading(std::size_t K, std::size_t L, RandomStream &rng)
{
    if (K == 0 || L == 0)
        throw EmptyInputError("sample_fading: K and L must be at least 1");
    FadingRealization f;
    f.h.set_size(K, L);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < L; ++l)
            f.h(k, l) = rng.complex_normal();
    return f;
}

namespace detail
{

void check_weights(const std::vector<double> &beta_sq)
{
    if (beta_sq.empty())
        throw EmptyInputError("weight vector is empty");
    double sum = 0.0;
    for (double w : beta_sq)
    {
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("weights must be positive and finite");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("weights must sum to one, got " + std::to_string(sum));
}

std::vector<double> log_scale_nodes(double w_min, double w_max, double step)
{
    const double lo = -std::log(w_max) - 45.0;
    const double hi = -std::log(w_min) + 45.0;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    std::vector<double> u(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        u[i] = lo + step * static_cast<double>(i);
    return u;
}

} // namespace detail

Hypoexponential hypoexponential(const std::vector<double> &beta_sq)
{
    detail::check_weights(beta_sq);
    const std::size_t L = beta_sq.size();
    Hypoexponential h;
    h.rates.resize(L);
    for (std::size_t l = 0; l < L; ++l)
        h.rates[l] = 1.0 / beta_sq[l];

    std::vector<double> sorted = h.rates;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < L; ++i)
        if ((sorted[i] - sorted[i - 1]) / sorted[i] < 1e-4)
            throw IllConditionedError("hypoexponential: rates closer than the 1e-4 relative gap");

    h.coef.resize(L);
    double abs_sum = 0.0;
    for (std::size_t l = 0; l < L; ++l)
    {
        double log_mag = 0.0;
        int sign = 1;
        for (std::size_t i = 0; i < L; ++i)
        {
            if (i == l)
                continue;
            const double diff = h.rates[i] - h.rates[l];
            log_mag += std::log(h.rates[i]) - std::log(std::abs(diff));
            if (diff < 0.0)
                sign = -sign;
        }
        if (std::abs(log_mag) > 250.0)
            throw IllConditionedError("hypoexponential: coefficient magnitude beyond e^250");
        h.coef[l] = sign * std::exp(log_mag);
        abs_sum += std::abs(h.coef[l]);
    }
    // The coefficients sum to one; a large absolute sum means the mixture cancels catastrophically
    if (abs_sum > 1e6)
        throw IllConditionedError("hypoexponential: coefficients cancel by more than 1e6");
    h.coef_abs_sum = abs_sum;
    return h;
}

double Hypoexponential::pdf(double x) const
{
    if (!(x >= 0.0))
        throw DomainError("hypoexponential pdf: x must be nonnegative");
    double sum = 0.0;
    for (std::size_t l = 0; l < rates.size(); ++l)
        sum += coef[l] * rates[l] * std::exp(-rates[l] * x);
    return std::max(sum, 0.0);
}

double hypoexp_pdf(const std::vector<double> &beta_sq, double x) { return hypoexponential(beta_sq).pdf(x); }

double hypoexp_log_laplace(const std::vector<double> &beta_sq, double s)
{
    double acc = 0.0;
    for (double w : beta_sq)
        acc -= std::log1p(s * w);
    return acc;
}

} // namespace dasrate
