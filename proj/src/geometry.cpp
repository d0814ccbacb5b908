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

#include "dasrate/geometry.hpp"
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
constexpr double pi = std::numbers::pi;

void check_distance_args(double x, double y)
{
    if (!(y >= 0.0 && y <= 1.0))
        throw DomainError("user radius must lie in [0, 1], got " + std::to_string(y));
    if (!(x >= 0.0 && x <= 1.0 + y))
        throw DomainError("access distance must lie in [0, 1 + y], got " + std::to_string(x));
}

} // namespace

double CellPoint::x() const { return rho * std::cos(theta); }
double CellPoint::y() const { return rho * std::sin(theta); }

double distance(const CellPoint &a, const CellPoint &b) { return std::hypot(a.x() - b.x(), a.y() - b.y()); }

void ScenarioLayout::validate() const
{
    if (users.empty())
        throw EmptyInputError("scenario has no users");
    if (antennas.empty())
        throw EmptyInputError("scenario has no antennas");
    if (!(alpha > 2.0) || !std::isfinite(alpha))
        throw std::invalid_argument("path-loss factor alpha must exceed 2");
    if (!(snr_budget > 0.0) || !std::isfinite(snr_budget))
        throw std::invalid_argument("snr budget must be positive and finite");
    auto in_disk = [](const CellPoint &p) { return p.rho >= 0.0 && p.rho <= 1.0; };
    if (!std::all_of(users.begin(), users.end(), in_disk) || !std::all_of(antennas.begin(), antennas.end(), in_disk))
        throw std::invalid_argument("point outside the unit cell");
    if (layout == Layout::CA)
        for (const auto &a : antennas)
            if (a.rho != 0.0)
                throw std::invalid_argument("CA layout requires every antenna at the origin");
}

// ---- sampling ----

std::vector<CellPoint> sample_uniform_disk(std::size_t n, RandomStream &rng)
{
    if (n == 0)
        throw EmptyInputError("sample_uniform_disk: n must be at least 1");
    std::vector<CellPoint> pts(n);
    for (auto &p : pts)
    {
        p.rho = std::sqrt(rng.uniform());
        p.theta = 2.0 * pi * rng.uniform();
    }
    return pts;
}

std::vector<CellPoint> sample_uniform_disk_avoiding(std::size_t n, RandomStream &rng,
                                                    const std::vector<CellPoint> &avoid, double eps)
{
    if (n == 0)
        throw EmptyInputError("sample_uniform_disk_avoiding: n must be at least 1");
    if (avoid.empty() || eps <= 0.0)
        return sample_uniform_disk(n, rng);

    const PointGrid grid(avoid);
    std::vector<CellPoint> pts(n);
    for (auto &p : pts)
    {
        do
        {
            p.rho = std::sqrt(rng.uniform());
            p.theta = 2.0 * pi * rng.uniform();
        } while (grid.any_within(p, eps));
    }
    return pts;
}

std::vector<CellPoint> sample_users_for(const std::vector<CellPoint> &antennas, Layout layout, std::size_t K,
                                        RandomStream &user_rng)
{
    if (layout == Layout::CA)
        return sample_uniform_disk_avoiding(K, user_rng, {CellPoint{}});
    return sample_uniform_disk_avoiding(K, user_rng, antennas);
}

ScenarioLayout sample_scenario(std::size_t L, std::size_t K, Layout layout, double alpha, double snr_budget,
                               RandomStream &user_rng, RandomStream &antenna_rng)
{
    if (L == 0 || K == 0)
        throw EmptyInputError("sample_scenario: L and K must be at least 1");
    ScenarioLayout s;
    s.layout = layout;
    s.alpha = alpha;
    s.snr_budget = snr_budget;
    if (layout == Layout::CA)
    {
        s.antennas.assign(L, CellPoint{});
        s.users = sample_users_for(s.antennas, layout, K, user_rng);
    }
    else
    {
        s.users = sample_uniform_disk(K, user_rng);
        s.antennas = sample_uniform_disk_avoiding(L, antenna_rng, s.users);
    }
    s.validate();
    return s;
}

// ---- distance laws ----

double triangle_area(double x, double y)
{
    // Factored Heron form; each factor is a single rounding away from exact
    const double r = (x + y + 1.0) * (y + 1.0 - x) * (x + 1.0 - y) * (x + y - 1.0);
    return 0.25 * std::sqrt(std::max(r, 0.0));
}

namespace
{

// Angles of the triangle with sides x, y, 1: at the user (between x and y, opposite 1) and at
// the centre (between 1 and y, opposite x). atan2 with the Heron area keeps full precision where
// the cosines approach +-1.
double angle_at_user(double x, double y) { return std::atan2(4.0 * triangle_area(x, y), x * x + y * y - 1.0); }
double angle_at_centre(double x, double y) { return std::atan2(4.0 * triangle_area(x, y), 1.0 + y * y - x * x); }

} // namespace

double access_distance_pdf(double x, double y)
{
    check_distance_args(x, y);
    if (x <= 1.0 - y)
        return 2.0 * x;
    return 2.0 * x / pi * angle_at_user(x, y);
}

double access_distance_cdf(double x, double y)
{
    check_distance_args(x, y);
    if (x <= 1.0 - y)
        return x * x;
    const double f = (x * x * angle_at_user(x, y) + angle_at_centre(x, y) - 2.0 * triangle_area(x, y)) / pi;
    return std::clamp(f, 0.0, 1.0);
}

double access_distance_quantile(double p, double y)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("access_distance_quantile: p must lie in [0, 1]");
    if (!(y >= 0.0 && y <= 1.0))
        throw DomainError("access_distance_quantile: y must lie in [0, 1]");
    const double inner = (1.0 - y) * (1.0 - y);
    if (p <= inner)
        return std::sqrt(p);
    if (p >= 1.0)
        return 1.0 + y;

    // Safeguarded Newton on the outer branch
    double lo = 1.0 - y, hi = 1.0 + y;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it)
    {
        const double g = access_distance_cdf(x, y) - p;
        if (g > 0.0)
            hi = x;
        else
            lo = x;
        const double d = access_distance_pdf(x, y);
        double next = d > 0.0 ? x - g / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * (1.0 + x) || hi - lo <= 1e-15)
            return next;
        x = next;
    }
    return x;
}

double min_access_distance_pdf(double x, double y, std::size_t n)
{
    if (n == 0)
        throw DomainError("min_access_distance_pdf: n must be at least 1");
    const double f = access_distance_pdf(x, y);
    if (n == 1)
        return f;
    const double F = access_distance_cdf(x, y);
    if (F >= 1.0)
        return 0.0;
    return static_cast<double>(n) * std::exp(static_cast<double>(n - 1) * std::log1p(-F)) * f;
}

double min_access_distance_cdf(double x, double y, std::size_t n)
{
    if (n == 0)
        throw DomainError("min_access_distance_cdf: n must be at least 1");
    const double F = access_distance_cdf(x, y);
    if (F >= 1.0)
        return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-F));
}

// ---- neighbour search ----

PointGrid::PointGrid(const std::vector<CellPoint> &points)
{
    xs_.reserve(points.size());
    ys_.reserve(points.size());
    for (const auto &p : points)
    {
        xs_.push_back(p.x());
        ys_.push_back(p.y());
    }
    cells_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(points.size() / 2.0))));
    cell_size_ = 2.0 / static_cast<double>(cells_);
    buckets_.assign(cells_ * cells_, {});
    for (std::size_t i = 0; i < xs_.size(); ++i)
        buckets_[cell_of(ys_[i]) * cells_ + cell_of(xs_[i])].push_back(i);
}

std::size_t PointGrid::cell_of(double v) const
{
    const double c = std::floor((v + 1.0) / cell_size_);
    if (c <= 0.0)
        return 0;
    return std::min(static_cast<std::size_t>(c), cells_ - 1);
}

std::pair<std::size_t, double> PointGrid::nearest(const CellPoint &q,
                                                  const std::function<bool(std::size_t)> &excluded) const
{
    const double qx = q.x(), qy = q.y();
    const long cx = static_cast<long>(cell_of(qx));
    const long cy = static_cast<long>(cell_of(qy));
    const long n = static_cast<long>(cells_);

    std::size_t best = size();
    double best_d = std::numeric_limits<double>::infinity();

    auto visit = [&](long i, long j) {
        if (i < 0 || j < 0 || i >= n || j >= n)
            return;
        for (std::size_t idx : buckets_[static_cast<std::size_t>(j * n + i)])
        {
            if (excluded && excluded(idx))
                continue;
            const double d = std::hypot(xs_[idx] - qx, ys_[idx] - qy);
            if (d < best_d || (d == best_d && idx < best))
            {
                best_d = d;
                best = idx;
            }
        }
    };

    for (long r = 0; r <= n; ++r)
    {
        if (r == 0)
            visit(cx, cy);
        else
        {
            for (long i = cx - r; i <= cx + r; ++i)
            {
                visit(i, cy - r);
                visit(i, cy + r);
            }
            for (long j = cy - r + 1; j <= cy + r - 1; ++j)
            {
                visit(cx - r, j);
                visit(cx + r, j);
            }
        }
        // Anything beyond ring r is at least r cells away
        if (best_d < static_cast<double>(r) * cell_size_)
            break;
    }
    return {best, best_d};
}

bool PointGrid::any_within(const CellPoint &q, double r) const
{
    const double qx = q.x(), qy = q.y();
    const std::size_t i0 = cell_of(qx - r), i1 = cell_of(qx + r);
    const std::size_t j0 = cell_of(qy - r), j1 = cell_of(qy + r);
    for (std::size_t j = j0; j <= j1; ++j)
        for (std::size_t i = i0; i <= i1; ++i)
            for (std::size_t idx : buckets_[j * cells_ + i])
                if (std::hypot(xs_[idx] - qx, ys_[idx] - qy) < r)
                    return true;
    return false;
}

NeighborStats nearest_antenna_stats(const ScenarioLayout &scenario)
{
    if (scenario.layout != Layout::DA)
        throw LayoutMismatchError("nearest_antenna_stats: requires a DA layout");
    const std::size_t K = scenario.K(), L = scenario.L();
    if (K < 2)
        throw InfeasibleError("nearest_antenna_stats: need at least two users");
    if (L < K)
        throw InfeasibleError("nearest_antenna_stats: trimming needs L >= K, got L = " + std::to_string(L) +
                              ", K = " + std::to_string(K));

    NeighborStats st;
    st.nearest_antenna.resize(K);
    st.d_min_antenna.resize(K);
    st.d_min_user.resize(K);
    st.cocluster_count.assign(K, 0);
    st.trimmed_d_min.resize(K);

    const PointGrid antenna_grid(scenario.antennas);
    const PointGrid user_grid(scenario.users);

    std::vector<std::size_t> claims(L, 0);
    for (std::size_t k = 0; k < K; ++k)
    {
        const auto [idx, d] = antenna_grid.nearest(scenario.users[k]);
        st.nearest_antenna[k] = idx;
        st.d_min_antenna[k] = d;
        ++claims[idx];
    }

    for (std::size_t k = 0; k < K; ++k)
    {
        const std::size_t own = st.nearest_antenna[k];
        st.cocluster_count[k] = claims[own] - 1;
        st.d_min_user[k] = user_grid.nearest(scenario.users[k], [k](std::size_t j) { return j == k; }).second;

        // Antennas that some other user claims are removed from user k's set
        auto claimed_by_other = [&](std::size_t l) { return claims[l] > (l == own ? 1u : 0u); };
        st.trimmed_d_min[k] = antenna_grid.nearest(scenario.users[k], claimed_by_other).second;
    }
    return st;
}

} // namespace dasrate
