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

#include "dasrate/montecarlo.hpp"
#include "dasrate/engine.hpp"
#include "dasrate/errors.hpp"
#include "dasrate/zfbf.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dasrate
{

namespace
{
constexpr double log2e = std::numbers::log2e;
constexpr std::size_t max_redraws = 1000;

struct ChunkSums
{
    std::vector<double> sum, sum_sq;
    std::size_t draws = 0;
    std::size_t rejected = 0;
};

struct NestedRun
{
    std::vector<std::vector<double>> values;
    std::size_t rejected = 0;
};

NestedRun run_nested(const SimulationPlan &plan, std::size_t L, std::size_t K, Layout layout, Scheme scheme,
                     double alpha, double snr_budget)
{
    plan.validate();
    const std::size_t n_a = layout == Layout::CA ? 1 : plan.antenna_realizations;
    const std::size_t n_u = plan.user_realizations;

    struct Cell
    {
        double value = 0.0;
        std::size_t rejected = 0;
    };
    auto cells = parallel_map<Cell>(n_a * n_u, plan.workers, [&](std::size_t i) {
        const std::size_t a = i / n_u, u = i % n_u;
        const ScenarioLayout s = scenario_for_realization(plan.master_seed, a, u, L, K, layout, alpha, snr_budget);
        EmpiricalOptions opt;
        opt.draws = plan.fading_draws;
        opt.seed = plan.master_seed;
        opt.realization_a = a;
        opt.realization_u = u;
        opt.interference = plan.interference;
        const ScenarioRates r = scenario_rates_empirical(s, scheme, opt);
        return Cell{r.user_average(), r.rejected_draws};
    });

    NestedRun run;
    run.values.assign(n_a, std::vector<double>(n_u));
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        run.values[i / n_u][i % n_u] = cells[i].value;
        run.rejected += cells[i].rejected;
    }
    return run;
}
} // namespace

double ScenarioRates::user_average() const
{
    if (mean.empty())
        throw EmptyInputError("ScenarioRates: no users");
    double s = 0.0;
    for (double v : mean)
        s += v;
    return s / static_cast<double>(mean.size());
}

ScenarioRates scenario_rates_empirical(const ScenarioLayout &scenario, Scheme scheme, const EmpiricalOptions &opt)
{
    if (opt.draws == 0)
        throw EmptyInputError("scenario_rates_empirical: draws must be at least 1");
    const LargeScaleProfile profile = large_scale_profile(scenario);
    const std::size_t K = profile.K(), L = profile.L();
    if (scheme == Scheme::ZFBF && L < K)
        throw InfeasibleError("ZFBF needs L >= K, got L = " + std::to_string(L) + ", K = " + std::to_string(K));
    const double power = scenario.snr_budget / static_cast<double>(K);

    // Mean interference per user for the averaged MRT model
    arma::vec mean_interference;
    if (scheme == Scheme::MRT && opt.interference == InterferenceModel::averaged && K > 1)
    {
        const InterferenceWeights w = interference_weights(profile);
        mean_interference.set_size(K);
        for (std::size_t k = 0; k < K; ++k)
            mean_interference(k) = interference_power_model(profile, w, k, scenario.snr_budget);
    }

    const std::size_t n_chunks = (opt.draws + fading_chunk - 1) / fading_chunk;
    auto chunks = parallel_map<ChunkSums>(n_chunks, opt.workers, [&](std::size_t c) {
        ChunkSums cs;
        cs.sum.assign(K, 0.0);
        cs.sum_sq.assign(K, 0.0);
        cs.draws = std::min(fading_chunk, opt.draws - c * fading_chunk);
        auto rng = RandomStream::derive(opt.seed, StreamPurpose::fading, {opt.realization_a, opt.realization_u, c});

        for (std::size_t d = 0; d < cs.draws; ++d)
        {
            if (scheme == Scheme::MRT)
            {
                const arma::cx_mat G = sample_fading(K, L, rng).h % profile.gamma;
                const arma::cx_mat gram = G * G.t();
                for (std::size_t k = 0; k < K; ++k)
                {
                    const double signal = power * std::real(gram(k, k));
                    double interference = 0.0;
                    if (mean_interference.n_elem)
                        interference = mean_interference(k);
                    else
                        for (std::size_t j = 0; j < K; ++j)
                            if (j != k)
                                interference += power * std::norm(gram(k, j)) / std::real(gram(j, j));
                    const double r = std::log1p(signal / (1.0 + interference)) * log2e;
                    cs.sum[k] += r;
                    cs.sum_sq[k] += r * r;
                }
            }
            else
            {
                arma::vec gains;
                for (std::size_t attempt = 0;; ++attempt)
                {
                    if (attempt >= max_redraws)
                        throw SingularChannelError("scenario_rates_empirical: too many rank-deficient draws");
                    try
                    {
                        gains = zf_effective_gains(sample_fading(K, L, rng).h % profile.beta);
                        break;
                    }
                    catch (const SingularChannelError &)
                    {
                        ++cs.rejected;
                    }
                }
                for (std::size_t k = 0; k < K; ++k)
                {
                    const double r = std::log1p(power * profile.gamma_norm_sq(k) * gains(k)) * log2e;
                    cs.sum[k] += r;
                    cs.sum_sq[k] += r * r;
                }
            }
        }
        return cs;
    });

    ScenarioRates out;
    out.mean.assign(K, 0.0);
    out.std_error.assign(K, 0.0);
    std::vector<double> sum_sq(K, 0.0);
    for (const auto &cs : chunks)
    {
        for (std::size_t k = 0; k < K; ++k)
        {
            out.mean[k] += cs.sum[k];
            sum_sq[k] += cs.sum_sq[k];
        }
        out.draws += cs.draws;
        out.rejected_draws += cs.rejected;
    }
    const double n = static_cast<double>(out.draws);
    for (std::size_t k = 0; k < K; ++k)
    {
        out.mean[k] /= n;
        if (out.draws > 1)
        {
            const double var = std::max(0.0, (sum_sq[k] - n * out.mean[k] * out.mean[k]) / (n - 1.0));
            out.std_error[k] = std::sqrt(var / n);
        }
    }
    return out;
}

RateEstimate ergodic_rate_empirical(const ScenarioLayout &scenario, Scheme scheme, std::size_t k,
                                    const SimulationPlan &plan)
{
    plan.validate();
    if (k >= scenario.K())
        throw std::out_of_range("ergodic_rate_empirical: user index out of range");
    EmpiricalOptions opt;
    opt.draws = plan.fading_draws;
    opt.seed = plan.master_seed;
    opt.interference = plan.interference;
    opt.workers = plan.workers;
    const ScenarioRates r = scenario_rates_empirical(scenario, scheme, opt);
    RateEstimate e{r.mean[k], RateMethod::monte_carlo, r.std_error[k], r.draws};
    e.rejected_draws = r.rejected_draws;
    return e;
}

std::vector<std::vector<double>> scenario_average_rates(const SimulationPlan &plan, std::size_t L, std::size_t K,
                                                        Layout layout, Scheme scheme, double alpha,
                                                        double snr_budget)
{
    return run_nested(plan, L, K, layout, scheme, alpha, snr_budget).values;
}

RateEstimate average_user_rate(const SimulationPlan &plan, std::size_t L, std::size_t K, Layout layout,
                               Scheme scheme, double alpha, double snr_budget)
{
    const NestedRun run = run_nested(plan, L, K, layout, scheme, alpha, snr_budget);
    const NestedSummary s = summarize_nested(run.values);
    std::size_t scenarios = 0;
    for (const auto &g : run.values)
        scenarios += g.size();
    RateEstimate e{s.mean, RateMethod::monte_carlo, s.std_error, scenarios * K * plan.fading_draws};
    e.rejected_draws = run.rejected;
    return e;
}

double interference_power_model(const LargeScaleProfile &profile, const InterferenceWeights &weights,
                                 std::size_t k, double snr_budget)
{
    const std::size_t K = profile.K(), L = profile.L();
    if (k >= K)
        throw std::out_of_range("interference_power_model: user index out of range");
    const double power = snr_budget / static_cast<double>(K);
    double sum = 0.0;
    for (std::size_t j = 0; j < K; ++j)
    {
        if (j == k)
            continue;
        for (std::size_t l = 0; l < L; ++l)
            sum += weights.a(j, l) * profile.gamma(k, l) * profile.gamma(k, l);
    }
    return power * sum;
}

InterferenceSample interference_power_empirical(const ScenarioLayout &scenario, std::size_t k, std::size_t draws,
                                                std::uint64_t seed)
{
    if (draws < 2)
        throw EmptyInputError("interference_power_empirical: needs at least two draws");
    const LargeScaleProfile profile = large_scale_profile(scenario);
    const std::size_t K = profile.K(), L = profile.L();
    if (k >= K)
        throw std::out_of_range("interference_power_empirical: user index out of range");
    const double power = scenario.snr_budget / static_cast<double>(K);

    auto rng = RandomStream::derive(seed, StreamPurpose::fading, {k});
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t d = 0; d < draws; ++d)
    {
        const arma::cx_mat G = sample_fading(K, L, rng).h % profile.gamma;
        const arma::cx_rowvec gk = G.row(k);
        double x = 0.0;
        for (std::size_t j = 0; j < K; ++j)
        {
            if (j == k)
                continue;
            const arma::cx_rowvec gj = G.row(j);
            x += power * std::norm(arma::cdot(gj, gk)) / std::real(arma::cdot(gj, gj));
        }
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(draws);
    InterferenceSample s;
    s.mean = sum / n;
    s.std_error = std::sqrt(std::max(0.0, (sum_sq - n * s.mean * s.mean) / (n - 1.0)) / n);
    s.draws = draws;
    return s;
}

} // namespace dasrate
