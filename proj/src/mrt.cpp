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

#include "dasrate/mrt.hpp"
#include "dasrate/engine.hpp"
#include "dasrate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dasrate
{

namespace
{
constexpr double log2e = std::numbers::log2e;
constexpr double weight_step = 0.2;
constexpr double rate_step = 0.1;
constexpr double max_weight_coef_sum = 1e5;

std::pair<double, double> weight_range(const std::vector<double> &w)
{
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    return {*lo, *hi};
}
} // namespace

arma::cx_vec mrt_precoder(const arma::cx_rowvec &g)
{
    const double n = arma::norm(g);
    if (!(n > 0.0))
        throw DegenerateChannelError("mrt_precoder: zero channel vector");
    return g.t() / n;
}

std::vector<double> interference_weights_closed_form(const std::vector<double> &beta_sq)
{
    const Hypoexponential h = hypoexponential(beta_sq);
    const std::size_t L = beta_sq.size();
    if (L == 1)
        return {1.0};
    if (h.coef_abs_sum > max_weight_coef_sum)
        throw IllConditionedError("interference_weights_closed_form: coefficients cancel by more than 1e5");

    const auto &lam = h.rates;
    std::vector<double> a(L, 0.0);
    for (std::size_t l = 0; l < L; ++l)
    {
        double sum = 0.0;
        for (std::size_t m = 0; m < L; ++m)
        {
            if (m == l)
                continue;
            // prod_{t != m, l} lam_t / (lam_t - lam_m) = c_m (lam_l - lam_m) / lam_l
            const double r = lam[l] / lam[m];
            const double phi = lam[m] * (std::log(r) - 1.0 + 1.0 / r) / (lam[l] - lam[m]);
            sum += h.coef[m] * phi;
        }
        a[l] = sum;
    }
    return a;
}

std::vector<double> interference_weights_integral(const std::vector<double> &beta_sq)
{
    detail::check_weights(beta_sq);
    const std::size_t L = beta_sq.size();
    if (L == 1)
        return {1.0};
    const auto [w_min, w_max] = weight_range(beta_sq);
    const std::vector<double> nodes = detail::log_scale_nodes(w_min, w_max, weight_step);

    std::vector<double> a(L, 0.0);
    for (double u : nodes)
    {
        const double s = std::exp(u);
        const double base = weight_step * s * std::exp(hypoexp_log_laplace(beta_sq, s));
        if (base == 0.0)
            continue;
        for (std::size_t l = 0; l < L; ++l)
            a[l] += base * beta_sq[l] / (1.0 + s * beta_sq[l]);
    }
    return a;
}

std::vector<double> interference_weights_monte_carlo(const std::vector<double> &beta_sq, std::size_t draws,
                                                     RandomStream &rng)
{
    detail::check_weights(beta_sq);
    if (draws == 0)
        throw EmptyInputError("interference_weights_monte_carlo: draws must be at least 1");
    const std::size_t L = beta_sq.size();
    std::vector<double> a(L, 0.0), x(L);
    for (std::size_t d = 0; d < draws; ++d)
    {
        double total = 0.0;
        for (std::size_t l = 0; l < L; ++l)
        {
            x[l] = beta_sq[l] * std::norm(rng.complex_normal());
            total += x[l];
        }
        for (std::size_t l = 0; l < L; ++l)
            a[l] += x[l] / total;
    }
    for (double &v : a)
        v /= static_cast<double>(draws);
    return a;
}

InterferenceWeights interference_weights(const LargeScaleProfile &profile, const WeightOptions &opt)
{
    const std::size_t K = profile.K(), L = profile.L();
    InterferenceWeights out;
    out.a.set_size(K, L);
    out.method.resize(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        const std::vector<double> w = profile.beta_sq(k);
        std::vector<double> row;
        WeightMethod method = WeightMethod::closed_form;
        bool done = false;
        if (L <= opt.closed_form_max_L)
        {
            try
            {
                row = interference_weights_closed_form(w);
                done = true;
            }
            catch (const IllConditionedError &)
            {
            }
        }
        if (!done)
        {
            if (opt.monte_carlo_fallback)
            {
                auto rng = RandomStream::derive(opt.seed, StreamPurpose::weights, {k});
                row = interference_weights_monte_carlo(w, opt.monte_carlo_draws, rng);
                method = WeightMethod::monte_carlo;
            }
            else
            {
                row = interference_weights_integral(w);
                method = WeightMethod::integral;
            }
        }
        for (std::size_t l = 0; l < L; ++l)
            out.a(k, l) = row[l];
        out.method[k] = method;
    }
    return out;
}

double sinr_mrt_ca(std::size_t L, std::size_t K)
{
    if (K < 2)
        throw DomainError("sinr_mrt_ca: needs K >= 2 (no interference otherwise)");
    if (L < 1)
        throw DomainError("sinr_mrt_ca: needs L >= 1");
    return static_cast<double>(L) / static_cast<double>(K - 1);
}

RateEstimate rate_mrt_ca(std::size_t L, std::size_t K, const QuadratureSpec &spec)
{
    // ||h||^2 ~ Gamma(L, 1), SINR = mu ||h||^2 / L
    const double scale = sinr_mrt_ca(L, K) / static_cast<double>(L);
    const QuadratureResult r =
        expect_gamma(static_cast<double>(L), 1.0, [scale](double x) { return std::log1p(x * scale) * log2e; }, spec);
    return {r.value, RateMethod::closed_form};
}

double sinr_mrt_da(const LargeScaleProfile &profile, const InterferenceWeights &weights, std::size_t k,
                   std::optional<double> snr_budget)
{
    const std::size_t K = profile.K(), L = profile.L();
    if (K < 2)
        throw DomainError("sinr_mrt_da: needs K >= 2");
    if (k >= K)
        throw std::out_of_range("sinr_mrt_da: user index out of range");
    if (weights.a.n_rows != K || weights.a.n_cols != L)
        throw std::invalid_argument("sinr_mrt_da: weight matrix does not match the profile");

    double denom = 0.0;
    for (std::size_t j = 0; j < K; ++j)
    {
        if (j == k)
            continue;
        for (std::size_t l = 0; l < L; ++l)
            denom += weights.a(j, l) * profile.beta(k, l) * profile.beta(k, l);
    }
    if (snr_budget)
    {
        if (!(*snr_budget > 0.0))
            throw std::invalid_argument("sinr_mrt_da: snr budget must be positive");
        denom += static_cast<double>(K) / (*snr_budget * profile.gamma_norm_sq(k));
    }
    return 1.0 / denom;
}

RateEstimate rate_mrt_da(const std::vector<double> &beta_sq, double mu)
{
    if (!(mu > 0.0))
        throw DomainError("rate_mrt_da: mu must be positive");
    const Hypoexponential h = hypoexponential(beta_sq);
    double sum = 0.0;
    for (std::size_t l = 0; l < h.rates.size(); ++l)
        sum += h.coef[l] * exp_e1(h.rates[l] / mu);
    return {sum * log2e, RateMethod::closed_form};
}

RateEstimate rate_mrt_da_integral(const std::vector<double> &beta_sq, double mu)
{
    detail::check_weights(beta_sq);
    if (!(mu > 0.0))
        throw DomainError("rate_mrt_da_integral: mu must be positive");
    const auto w_max = *std::max_element(beta_sq.begin(), beta_sq.end());
    // (1 - E e^{-s mu X}) ~ s mu w below lo, e^{-s} negligible above hi
    const double lo = -std::log(mu * w_max) - 46.0;
    const double hi = std::log(45.0);
    double sum = 0.0;
    for (double u = lo; u <= hi; u += rate_step)
    {
        const double s = std::exp(u);
        sum += std::exp(-s) * -std::expm1(hypoexp_log_laplace(beta_sq, s * mu));
    }
    return {sum * rate_step * log2e, RateMethod::closed_form};
}

double sinr_ub_mrt_da(const NeighborStats &stats, double alpha, std::size_t k)
{
    if (k >= stats.cocluster_count.size())
        throw std::out_of_range("sinr_ub_mrt_da: user index out of range");
    const std::size_t m = stats.cocluster_count[k];
    if (m > 0)
        return 1.0 / static_cast<double>(m);
    return std::pow(stats.d_min_user[k] / stats.d_min_antenna[k], alpha);
}

RateEstimate avg_rate_ub_mrt_da(const SimulationPlan &plan, std::size_t L, std::size_t K, double alpha)
{
    plan.validate();
    const std::size_t n_a = plan.antenna_realizations, n_u = plan.user_realizations;
    auto per_antenna = parallel_map<std::vector<double>>(n_a, plan.workers, [&](std::size_t a) {
        std::vector<double> out(n_u);
        for (std::size_t u = 0; u < n_u; ++u)
        {
            const ScenarioLayout s = scenario_for_realization(plan.master_seed, a, u, L, K, Layout::DA, alpha, 1.0);
            const NeighborStats st = nearest_antenna_stats(s);
            double sum = 0.0;
            for (std::size_t k = 0; k < K; ++k)
                sum += exp_e1(1.0 / sinr_ub_mrt_da(st, alpha, k)) * log2e;
            out[u] = sum / static_cast<double>(K);
        }
        return out;
    });
    const NestedSummary s = summarize_nested(per_antenna);
    RateEstimate r{s.mean, RateMethod::bound_upper, s.std_error, n_a * n_u * K};
    return r;
}

void AsymptoticParams::validate() const
{
    if (!(upsilon > 0.0) || !std::isfinite(upsilon))
        throw DomainError("upsilon must be positive");
    if (!(alpha > 2.0))
        throw DomainError("alpha must exceed 2");
}

double asym_rate_mrt_ca(const AsymptoticParams &params)
{
    params.validate();
    return std::log2(1.0 + params.upsilon);
}

double poisson_weight(std::size_t n, double upsilon)
{
    if (!(upsilon > 0.0))
        throw DomainError("poisson_weight: upsilon must be positive");
    const double nd = static_cast<double>(n);
    return std::exp(-1.0 / upsilon - nd * std::log(upsilon) - std::lgamma(nd + 1.0));
}

double asym_rate_ub_mrt_da(const AsymptoticParams &params, const QuadratureSpec &spec)
{
    params.validate();
    const double v = params.upsilon, alpha = params.alpha;

    // Shared antenna: m ~ Poisson(1/v), SINR bound 1/m
    double series = 0.0;
    double mass = poisson_weight(0, v);
    for (std::size_t n = 1; mass < 1.0 - 1e-12 && n < 100000; ++n)
    {
        const double p = poisson_weight(n, v);
        series += exp_e1(static_cast<double>(n)) * p;
        mass += p;
    }

    // Own antenna: SINR bound Y^alpha with Y the user/antenna distance ratio
    auto density = [v](double y) { return 2.0 * v * y / ((v + y * y) * (v + y * y)); };
    auto head = [&](double y) { return exp_e1(std::exp(-alpha * std::log(y))) * density(y); };
    // y = 1/u beyond y = 10
    auto tail = [&](double u) { return exp_e1(std::exp(alpha * std::log(u))) * 2.0 * v * u / ((v * u * u + 1.0) * (v * u * u + 1.0)); };
    const double integral = integrate_adaptive(head, 0.0, 1.0, spec).value + integrate_adaptive(head, 1.0, 10.0, spec).value +
                            integrate_adaptive(tail, 0.0, 0.1, spec).value;

    return (series + std::exp(-1.0 / v) * integral) * log2e;
}

double sinr_mrt_da_approx(const ScenarioLayout &scenario, const NeighborStats &stats, std::size_t k)
{
    const std::size_t K = scenario.K();
    if (k >= K)
        throw std::out_of_range("sinr_mrt_da_approx: user index out of range");
    double denom = static_cast<double>(stats.cocluster_count[k]);
    const std::size_t own = stats.nearest_antenna[k];
    for (std::size_t j = 0; j < K; ++j)
    {
        if (j == k || stats.nearest_antenna[j] == own)
            continue;
        denom += std::pow(stats.d_min_antenna[k] / distance(scenario.users[k], scenario.users[j]), scenario.alpha);
    }
    return 1.0 / denom;
}

} // namespace dasrate
