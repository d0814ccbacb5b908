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
#include "dasrate/mrt.hpp"

#include "../support/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace dasrate;
using dasrate::testing::mean_se;
using doctest::Approx;

namespace
{

constexpr double log2e = 1.4426950408889634;

std::vector<double> normalized(std::vector<double> w)
{
    double s = 0.0;
    for (double x : w)
        s += x;
    for (auto &x : w)
        x /= s;
    return w;
}

double sum(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s;
}

} // namespace

TEST_CASE("MRT precoder examples")
{
    arma::cx_rowvec g = {1.0, 0.0};
    arma::cx_vec w = mrt_precoder(g);
    CHECK(std::abs(w(0) - 1.0) < 1e-15);
    CHECK(std::abs(w(1)) < 1e-15);

    g = {std::complex<double>(1, 0), std::complex<double>(0, 1)};
    w = mrt_precoder(g);
    const std::complex<double> gw = arma::as_scalar(g * w);
    CHECK(std::abs(gw - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(arma::norm(w) - 1.0) < 1e-12);

    CHECK_THROWS_AS(mrt_precoder(arma::cx_rowvec(3, arma::fill::zeros)), DegenerateChannelError);
}

TEST_CASE("MRT precoder beats 1e5 random unit vectors")
{
    RandomStream rng(61);
    arma::cx_rowvec g(8);
    for (auto &x : g)
        x = rng.complex_normal();
    const double best = std::abs(arma::as_scalar(g * mrt_precoder(g)));
    CHECK(best == Approx(arma::norm(g)).epsilon(1e-12));
    for (int i = 0; i < 100'000; ++i)
    {
        arma::cx_vec v(8);
        for (auto &x : v)
            x = rng.complex_normal();
        v /= arma::norm(v);
        REQUIRE(std::abs(arma::as_scalar(g * v)) <= best * (1.0 + 1e-12));
    }
}

TEST_CASE("interference weights for equal weights come from the fallback paths")
{
    const std::vector<double> w = {0.5, 0.5};
    CHECK_THROWS_AS(interference_weights_closed_form(w), IllConditionedError);
    const auto a = interference_weights_integral(w);
    CHECK(a[0] == Approx(0.5).epsilon(1e-10));
    CHECK(a[1] == Approx(0.5).epsilon(1e-10));
    RandomStream rng(62);
    const auto m = interference_weights_monte_carlo(w, 100'000, rng);
    CHECK(m[0] == Approx(0.5).epsilon(0.01));
}

TEST_CASE("interference weight for (0.8, 0.2) matches 1e7 fading draws")
{
    const std::vector<double> w = {0.8, 0.2};
    const auto a = interference_weights_closed_form(w);
    RandomStream rng(63);
    std::exponential_distribution<double> ex(1.0);
    double s = 0.0, s2 = 0.0;
    constexpr int n = 10'000'000;
    for (int i = 0; i < n; ++i)
    {
        const double x0 = w[0] * ex(rng.engine()), x1 = w[1] * ex(rng.engine());
        const double r = x0 / (x0 + x1);
        s += r;
        s2 += r * r;
    }
    const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / (n - 1.0));
    CHECK(std::abs(a[0] - mean) <= 3.0 * se);
    CHECK(a[0] + a[1] == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interference weights: closed form, integral and Monte Carlo agree; rows sum to one")
{
    RandomStream rng(64);
    for (int t = 0; t < 60; ++t)
    {
        std::vector<double> w(2 + t % 12);
        for (auto &x : w)
            x = 0.02 + rng.uniform();
        w = normalized(w);
        const auto ai = interference_weights_integral(w);
        REQUIRE(std::abs(sum(ai) - 1.0) <= 1e-6);
        try
        {
            const auto ac = interference_weights_closed_form(w);
            REQUIRE(std::abs(sum(ac) - 1.0) <= 1e-6);
            for (std::size_t l = 0; l < w.size(); ++l)
            {
                REQUIRE(ac[l] > 0.0);
                REQUIRE(ac[l] < 1.0);
                INFO("closed " << ac[l] << " integral " << ai[l] << " diff " << ac[l] - ai[l] << " n " << w.size());
                REQUIRE(std::abs(ac[l] - ai[l]) <= 1e-8);
            }
        }
        catch (const IllConditionedError &)
        {
        }
        if (t % 20 == 0)
        {
            const auto am = interference_weights_monte_carlo(w, 200'000, rng);
            for (std::size_t l = 0; l < w.size(); ++l)
                CHECK(std::abs(am[l] - ai[l]) < 5e-3);
        }
    }
}

TEST_CASE("interference weights on a profile choose the method per row")
{
    const ScenarioLayout small = scenario_for_realization(65, 0, 0, 10, 4, Layout::DA, 4.0, 100.0);
    const InterferenceWeights ws = interference_weights(large_scale_profile(small));
    for (std::size_t k = 0; k < 4; ++k)
    {
        CHECK(ws.method[k] == WeightMethod::closed_form);
        CHECK(std::abs(arma::accu(ws.a.row(k)) - 1.0) <= 1e-6);
    }
    const ScenarioLayout big = scenario_for_realization(65, 0, 0, 100, 4, Layout::DA, 4.0, 100.0);
    const InterferenceWeights wb = interference_weights(large_scale_profile(big));
    CHECK(wb.method[0] == WeightMethod::integral);
    WeightOptions mc;
    mc.monte_carlo_fallback = true;
    mc.monte_carlo_draws = 20'000;
    const InterferenceWeights wm = interference_weights(large_scale_profile(big), mc);
    CHECK(wm.method[0] == WeightMethod::monte_carlo);
    CHECK(std::abs(arma::accu(wm.a.row(0)) - 1.0) <= 1e-9);
    CHECK(arma::abs(wm.a - wb.a).max() < 0.01);
}

TEST_CASE("CA SINR")
{
    CHECK(sinr_mrt_ca(100, 50) == 100.0 / 49.0);
    CHECK(sinr_mrt_ca(2, 2) == 2.0);
    CHECK_THROWS_AS(sinr_mrt_ca(100, 1), DomainError);
}

TEST_CASE("CA rate: Monte Carlo oracle, asymptote and single-antenna case")
{
    RandomStream rng(66);
    std::gamma_distribution<double> g(100.0, 1.0);
    std::vector<double> r(10'000'000);
    for (auto &v : r)
        v = std::log2(1.0 + g(rng.engine()) / 49.0);
    const auto ms = mean_se(r);
    CHECK(std::abs(rate_mrt_ca(100, 50).value - ms.mean) <= 3.0 * ms.se);

    CHECK(std::abs(rate_mrt_ca(512, 256).value - std::log2(3.0)) / std::log2(3.0) < 0.02);
    CHECK(rate_mrt_ca(1, 2).value == Approx(std::exp(1.0) * 0.219383934395520 * log2e).epsilon(1e-10));
    CHECK(rate_mrt_ca(1, 2).value == Approx(0.8605).epsilon(1e-4));
    CHECK(rate_mrt_ca(1, 2).method == RateMethod::closed_form);
}

TEST_CASE("CA rate increases in L and decreases in K")
{
    for (std::size_t K = 2; K <= 64; K *= 2)
    {
        double prev = 0.0;
        for (std::size_t L = 1; L <= 256; L *= 2)
        {
            const double v = rate_mrt_ca(L, K).value;
            REQUIRE(v > prev);
            prev = v;
        }
    }
    for (std::size_t L : {4, 64})
    {
        double prev = INFINITY;
        for (std::size_t K = 2; K <= 128; K *= 2)
        {
            const double v = rate_mrt_ca(L, K).value;
            REQUIRE(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("CA asymptote matches the finite rate at L = 512")
{
    for (double ups : {2.0, 5.0})
    {
        const auto K = static_cast<std::size_t>(std::lround(512.0 / ups));
        const double finite = rate_mrt_ca(512, K).value;
        const double asym = asym_rate_mrt_ca({ups, 4.0});
        CHECK(std::abs(finite - asym) / asym < 0.02);
    }
}

TEST_CASE("DA SINR reduces to the CA value for uniform weights")
{
    ScenarioLayout sc;
    sc.users = {{0.5, 0.0}, {0.3, 1.0}, {0.8, 2.0}, {0.1, 4.0}};
    sc.antennas.assign(6, CellPoint{});
    sc.layout = Layout::CA;
    const LargeScaleProfile p = large_scale_profile(sc);
    InterferenceWeights w;
    w.a.set_size(4, 6);
    w.method.assign(4, WeightMethod::monte_carlo);
    for (std::size_t k = 0; k < 4; ++k)
    {
        RandomStream rng = RandomStream::derive(67, StreamPurpose::weights, {k});
        const auto row = interference_weights_monte_carlo(p.beta_sq(k), 100'000, rng);
        for (std::size_t l = 0; l < 6; ++l)
            w.a(k, l) = row[l];
    }
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(sinr_mrt_da(p, w, k) == Approx(6.0 / 3.0).epsilon(0.01));
}

TEST_CASE("DA SINR on a two-user instance and the noise variant")
{
    ScenarioLayout sc;
    sc.users = {{0.5, 0.0}, {0.6, 2.0}};
    sc.antennas = {{0.2, 0.3}, {0.7, 2.5}};
    sc.layout = Layout::DA;
    const LargeScaleProfile p = large_scale_profile(sc);
    const InterferenceWeights w = interference_weights(p);
    const double expected = 1.0 / (w.a(1, 0) * p.beta(0, 0) * p.beta(0, 0) + w.a(1, 1) * p.beta(0, 1) * p.beta(0, 1));
    CHECK(sinr_mrt_da(p, w, 0) == Approx(expected).epsilon(1e-14));
    const double snr = 100.0;
    const double noisy = 1.0 / (1.0 / expected + 2.0 / (snr * p.gamma_norm_sq(0)));
    CHECK(sinr_mrt_da(p, w, 0, snr) == Approx(noisy).epsilon(1e-14));
    CHECK(sinr_mrt_da(p, w, 0, snr) < sinr_mrt_da(p, w, 0));
}

TEST_CASE("DA rate: single stage, Monte Carlo oracle, Jensen and integral form")
{
    CHECK(rate_mrt_da({1.0}, 4.0).value == Approx(exp_e1(0.25) * log2e).epsilon(1e-13));

    const std::vector<double> w = {0.5, 0.3, 0.2};
    const double mu = 5.0;
    const double closed = rate_mrt_da(w, mu).value;
    RandomStream rng(68);
    std::exponential_distribution<double> ex(1.0);
    double s = 0.0, s2 = 0.0;
    constexpr int n = 10'000'000;
    for (int i = 0; i < n; ++i)
    {
        const double x = w[0] * ex(rng.engine()) + w[1] * ex(rng.engine()) + w[2] * ex(rng.engine());
        const double r = std::log2(1.0 + mu * x);
        s += r;
        s2 += r * r;
    }
    const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / (n - 1.0));
    CHECK(std::abs(closed - mean) <= 3.0 * se);
    CHECK(closed < std::log2(1.0 + mu));
    CHECK(rate_mrt_da_integral(w, mu).value == Approx(closed).epsilon(1e-9));

    // The integral form also covers weights the closed form refuses
    std::vector<double> flat(300, 1.0 / 300.0);
    CHECK_THROWS_AS(rate_mrt_da(flat, mu), IllConditionedError);
    CHECK(rate_mrt_da_integral(flat, mu).value < std::log2(1.0 + mu));
    CHECK(rate_mrt_da_integral(flat, mu).value > std::log2(1.0 + mu) - 0.02);
}

TEST_CASE("SINR upper bound branches")
{
    NeighborStats st;
    st.cocluster_count = {3, 0};
    st.d_min_antenna = {0.1, 0.05};
    st.d_min_user = {0.2, 0.1};
    st.nearest_antenna = {0, 1};
    st.trimmed_d_min = {0.1, 0.05};
    CHECK(sinr_ub_mrt_da(st, 4.0, 0) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(sinr_ub_mrt_da(st, 4.0, 1) == Approx(16.0).epsilon(1e-14));
}

TEST_CASE("averaged upper bound: branch dominance at large L/K")
{
    SimulationPlan plan;
    plan.user_realizations = 10;
    plan.antenna_realizations = 20;
    plan.master_seed = 69;
    const RateEstimate ub = avg_rate_ub_mrt_da(plan, 1000, 10, 4.0);
    CHECK(ub.method == RateMethod::bound_upper);
    double s = 0.0;
    std::size_t n = 0;
    for (std::size_t a = 0; a < plan.antenna_realizations; ++a)
        for (std::size_t u = 0; u < plan.user_realizations; ++u)
        {
            const NeighborStats st =
                nearest_antenna_stats(scenario_for_realization(69, a, u, 1000, 10, Layout::DA, 4.0, 100.0));
            for (std::size_t k = 0; k < 10; ++k, ++n)
                s += exp_e1(std::pow(st.d_min_user[k] / st.d_min_antenna[k], -4.0)) * log2e;
        }
    CHECK(ub.value == Approx(s / n).epsilon(0.01));
}

TEST_CASE("averaged upper bound approaches its asymptote from above as L grows")
{
    // The finite-cell value at (500, 100) sits well above the asymptote; boundary users keep it
    // there, and the gap closes slowly with L.
    SimulationPlan plan;
    plan.user_realizations = 10;
    plan.antenna_realizations = 10;
    plan.master_seed = 70;
    const double asym = asym_rate_ub_mrt_da({5.0, 4.0});
    const RateEstimate v500 = avg_rate_ub_mrt_da(plan, 500, 100, 4.0);
    const RateEstimate v8000 = avg_rate_ub_mrt_da(plan, 8000, 1600, 4.0);
    MESSAGE("asymptote " << asym << ", L=500: " << v500.value << " +- " << v500.std_error << ", L=8000: " << v8000.value
                         << " +- " << v8000.std_error);
    CHECK(v500.value > v8000.value);
    CHECK(v8000.value > asym);
}

TEST_CASE("asymptotic CA rate and Poisson weights")
{
    CHECK(asym_rate_mrt_ca({1.0, 4.0}) == 1.0);
    CHECK(asym_rate_mrt_ca({3.0, 4.0}) == 2.0);
    CHECK(asym_rate_mrt_ca({15.0, 4.0}) == 4.0);
    CHECK(poisson_weight(1, 2.0) == Approx(0.5 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(poisson_weight(1, 2.0) == Approx(0.30327).epsilon(1e-5));
    CHECK_THROWS_AS(asym_rate_mrt_ca({0.0, 4.0}), DomainError);
    CHECK_THROWS_AS(asym_rate_ub_mrt_da({2.0, 2.0}), DomainError);
}

TEST_CASE("asymptotic DA upper bound: above the CA asymptote and growing like (alpha/2) log2 upsilon")
{
    CHECK(asym_rate_ub_mrt_da({10.0, 4.0}) > std::log2(11.0));
    const double slope = (asym_rate_ub_mrt_da({64.0, 4.0}) - asym_rate_ub_mrt_da({16.0, 4.0})) / 2.0;
    CHECK(slope == Approx(2.0).epsilon(0.15));
}

TEST_CASE("Poisson limit of the binomial co-cluster law")
{
    const double L = 1e4, K = 2e3;
    double tv = 0.0, cum_p = 0.0;
    for (int n = 0; n < 60; ++n)
    {
        const double lb = std::lgamma(K) - std::lgamma(n + 1.0) - std::lgamma(K - n) + n * std::log(1.0 / L) +
                          (K - 1 - n) * std::log1p(-1.0 / L);
        const double p = poisson_weight(static_cast<std::size_t>(n), L / K);
        tv += std::abs(std::exp(lb) - p);
        cum_p += p;
    }
    tv = 0.5 * (tv + (1.0 - cum_p));
    CHECK(tv < 0.01);
}

TEST_CASE("approximate SINR chain is finite and reported next to the exact value")
{
    const ScenarioLayout sc = scenario_for_realization(71, 0, 0, 200, 20, Layout::DA, 4.0, 100.0);
    const LargeScaleProfile p = large_scale_profile(sc);
    const InterferenceWeights w = interference_weights(p);
    const NeighborStats st = nearest_antenna_stats(sc);
    double gap = 0.0;
    for (std::size_t k = 0; k < sc.K(); ++k)
    {
        const double approx = sinr_mrt_da_approx(sc, st, k);
        REQUIRE(std::isfinite(approx));
        REQUIRE(approx > 0.0);
        gap += std::abs(std::log2(approx) - std::log2(sinr_mrt_da(p, w, k))) / sc.K();
    }
    MESSAGE("mean |log2 gap| between approximate and exact SINR: " << gap);
}
