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

#include "dasrate/zfbf.hpp"
#include "dasrate/errors.hpp"
#include "dasrate/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dasrate
{

namespace
{
constexpr double log2e = std::numbers::log2e;

// Q and R^-1 of G^H = Q R, with the conditioning check
void factor(const arma::cx_mat &G, arma::cx_mat *Q_out, arma::cx_mat &R_inv)
{
    const std::size_t K = G.n_rows, L = G.n_cols;
    if (K == 0 || L == 0)
        throw EmptyInputError("zf_precoder: empty channel matrix");
    if (L < K)
        throw InfeasibleError("zf_precoder: needs at least as many antennas as users, got L = " +
                              std::to_string(L) + ", K = " + std::to_string(K));

    arma::cx_mat Q, R;
    if (!arma::qr_econ(Q, R, G.t()))
        throw SingularChannelError("zf_precoder: QR factorization failed");
    for (std::size_t i = 0; i < K; ++i)
        if (std::abs(R(i, i)) == 0.0)
            throw SingularChannelError("zf_precoder: channel matrix is rank deficient");
    if (!arma::inv(R_inv, arma::trimatu(R)))
        throw SingularChannelError("zf_precoder: triangular factor is singular");
    const double cond = arma::norm(R, "fro") * arma::norm(R_inv, "fro");
    if (!(cond < zf_condition_limit))
        throw SingularChannelError("zf_precoder: condition estimate " + std::to_string(cond) + " exceeds limit");
    if (Q_out)
        *Q_out = std::move(Q);
}

void check_rate_args(std::size_t L, std::size_t K, double snr_budget, double alpha)
{
    if (K == 0)
        throw EmptyInputError("need at least one user");
    if (L < K)
        throw InfeasibleError("ZFBF needs L >= K, got L = " + std::to_string(L) + ", K = " + std::to_string(K));
    if (!(snr_budget > 0.0))
        throw DomainError("snr budget must be positive");
    if (!(alpha > 2.0))
        throw DomainError("alpha must exceed 2");
}
} // namespace

ZfPrecoder zf_precoder(const arma::cx_mat &G_tilde)
{
    arma::cx_mat Q, R_inv;
    factor(G_tilde, &Q, R_inv);
    const std::size_t K = G_tilde.n_rows;

    ZfPrecoder p;
    p.pseudo_inverse = Q * R_inv.t();
    p.w.set_size(G_tilde.n_cols, K);
    p.effective_gain.set_size(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        const double norm_sq = std::real(arma::cdot(R_inv.row(k), R_inv.row(k)));
        p.effective_gain(k) = 1.0 / norm_sq;
        p.w.col(k) = p.pseudo_inverse.col(k) / std::sqrt(norm_sq);
    }
    return p;
}

arma::vec zf_effective_gains(const arma::cx_mat &G_tilde)
{
    arma::cx_mat R_inv;
    factor(G_tilde, nullptr, R_inv);
    const std::size_t K = G_tilde.n_rows;
    arma::vec gains(K);
    for (std::size_t k = 0; k < K; ++k)
        gains(k) = 1.0 / std::real(arma::cdot(R_inv.row(k), R_inv.row(k)));
    return gains;
}

RateEstimate rate_zfbf_ca(std::size_t L, std::size_t K, double snr_budget, double rho, double alpha,
                          const QuadratureSpec &spec)
{
    check_rate_args(L, K, snr_budget, alpha);
    if (!(rho > 0.0 && rho <= 1.0))
        throw DomainError("rate_zfbf_ca: rho must lie in (0, 1]");
    const double Ld = static_cast<double>(L);
    const double c = snr_budget * Ld * std::pow(rho, -alpha) / static_cast<double>(K);
    const QuadratureResult r = expect_gamma(static_cast<double>(L - K + 1), 1.0 / Ld,
                                            [c](double x) { return std::log1p(c * x) * log2e; }, spec);
    return {r.value, RateMethod::closed_form};
}

double rate_zfbf_ca_approx(std::size_t L, std::size_t K, double snr_budget, double rho, double alpha, int step)
{
    check_rate_args(L, K, snr_budget, alpha);
    if (!(rho > 0.0 && rho <= 1.0))
        throw DomainError("rate_zfbf_ca_approx: rho must lie in (0, 1]");
    const double path = std::pow(rho, -alpha);
    const double Ld = static_cast<double>(L), Kd = static_cast<double>(K);
    switch (step)
    {
    case 1:
        return std::log2(1.0 + snr_budget * (Ld - Kd + 1.0) * path / Kd);
    case 2:
        return std::log2(1.0 + snr_budget * (Ld - Kd) / Kd * path);
    case 3:
        if (L == K)
            throw DomainError("rate_zfbf_ca_approx: step 3 needs L > K");
        return std::log2(snr_budget * (Ld - Kd) / Kd * path);
    default:
        throw std::invalid_argument("rate_zfbf_ca_approx: step must be 1, 2 or 3");
    }
}

RateEstimate rate_lb_zfbf_da(double trimmed_d_min, std::size_t K, double snr_budget, double alpha)
{
    if (!(trimmed_d_min > 0.0))
        throw DomainError("rate_lb_zfbf_da: distance must be positive");
    if (K == 0 || !(snr_budget > 0.0))
        throw DomainError("rate_lb_zfbf_da: needs K >= 1 and a positive snr budget");
    const double arg = static_cast<double>(K) / snr_budget * std::pow(trimmed_d_min, alpha);
    return {exp_e1(arg) * log2e, RateMethod::bound_lower};
}

RateEstimate avg_rate_zfbf_ca(std::size_t L, std::size_t K, double snr_budget, double alpha)
{
    check_rate_args(L, K, snr_budget, alpha);
    if (L == K)
        throw DomainError("avg_rate_zfbf_ca: needs L > K");
    const double ratio = static_cast<double>(L - K) / static_cast<double>(K);
    return {std::log2(snr_budget * ratio) + 0.5 * alpha * log2e, RateMethod::closed_form};
}

RateEstimate avg_rate_zfbf_ca_exact(std::size_t L, std::size_t K, double snr_budget, double alpha,
                                    const QuadratureSpec &spec)
{
    check_rate_args(L, K, snr_budget, alpha);
    auto outer = [&](double rho) { return 2.0 * rho * rate_zfbf_ca(L, K, snr_budget, rho, alpha, spec).value; };
    return {integrate_adaptive(outer, 0.0, 1.0, spec).value, RateMethod::closed_form};
}

double asym_rate_zfbf_ca(const AsymptoticParams &params, double snr_budget)
{
    params.validate();
    if (!(params.upsilon > 1.0))
        throw DomainError("asym_rate_zfbf_ca: upsilon must exceed 1");
    if (!(snr_budget > 0.0))
        throw DomainError("asym_rate_zfbf_ca: snr budget must be positive");
    return std::log2(snr_budget * (params.upsilon - 1.0)) + 0.5 * params.alpha * log2e;
}

RateEstimate avg_rate_lb_zfbf_da(std::size_t L, std::size_t K, double snr_budget, double alpha,
                                 const QuadratureSpec &spec)
{
    check_rate_args(L, K, snr_budget, alpha);
    const double n = static_cast<double>(L - K + 1);
    const double c0 = static_cast<double>(K) / snr_budget;

    auto inner = [&](double y) {
        auto g = [&](double v) {
            const double p = -std::expm1(std::log1p(-v) / n); // F(x; y) at the v-quantile of the minimum
            const double x = access_distance_quantile(p, y);
            return exp_e1(c0 * std::pow(x, alpha));
        };
        return integrate_adaptive(g, 0.0, 1.0, spec).value;
    };
    auto outer = [&](double y) { return 2.0 * y * inner(y); };
    return {integrate_adaptive(outer, 0.0, 1.0, spec).value * log2e, RateMethod::bound_lower};
}

namespace
{
void check_divergence_args(std::size_t L, std::size_t K, double alpha)
{
    if (L <= K)
        throw DomainError("asym_divergence: needs L > K");
    if (!(alpha > 2.0))
        throw DomainError("asym_divergence: alpha must exceed 2");
}

// (L-K+1) / (L-K)^(1+alpha/2)
double divergence_prefactor(std::size_t L, std::size_t K, double alpha)
{
    const double n = static_cast<double>(L - K);
    return (n + 1.0) * std::exp(-(1.0 + 0.5 * alpha) * std::log(n));
}

double divergence_gamma(std::size_t L, std::size_t K, double alpha, double t)
{
    const double n = static_cast<double>(L - K);
    return lower_incomplete_gamma(1.0 + 0.5 * alpha, n * (1.0 - t) * (1.0 - t));
}
} // namespace

double asym_divergence_integrand(std::size_t L, std::size_t K, double alpha, double t)
{
    check_divergence_args(L, K, alpha);
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("asym_divergence: t must lie in [0, 1]");
    return divergence_prefactor(L, K, alpha) * divergence_gamma(L, K, alpha, t);
}

double asym_divergence_diagnostic(std::size_t L, std::size_t K, double alpha, const QuadratureSpec &spec)
{
    check_divergence_args(L, K, alpha);
    // The prefactor is pulled out so the tolerances act on an O(1) integral
    auto f = [&](double t) { return 2.0 * t * divergence_gamma(L, K, alpha, t); };
    return divergence_prefactor(L, K, alpha) * integrate_adaptive(f, 0.0, 1.0, spec).value;
}

} // namespace dasrate
