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

#ifndef DASRATE_GEOMETRY_HPP
#define DASRATE_GEOMETRY_HPP

#include "dasrate/random.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace dasrate
{

// Minimum user-antenna separation enforced when sampling (cell radii)
inline constexpr double min_separation = 1e-3;

// Polar point in the unit-radius cell
struct CellPoint
{
    double rho = 0.0;   // [0, 1]
    double theta = 0.0; // [0, 2 pi)

    double x() const;
    double y() const;
};

double distance(const CellPoint &a, const CellPoint &b);

enum class Layout
{
    CA, // all antennas at the cell centre
    DA, // antennas uniform over the cell
};

struct ScenarioLayout
{
    std::vector<CellPoint> users;    // K
    std::vector<CellPoint> antennas; // L
    Layout layout = Layout::CA;
    double alpha = 4.0;       // path-loss factor, > 2
    double snr_budget = 100.0; // P_t / N_0, linear

    std::size_t K() const { return users.size(); }
    std::size_t L() const { return antennas.size(); }

    // Throws std::invalid_argument on a broken invariant
    void validate() const;
};

struct NeighborStats
{
    std::vector<std::size_t> nearest_antenna;  // l_k*
    std::vector<double> d_min_antenna;         // distance to l_k*
    std::vector<double> d_min_user;            // distance to nearest other user
    std::vector<std::size_t> cocluster_count;  // other users sharing l_k*
    std::vector<double> trimmed_d_min;         // nearest antenna not claimed by any other user
};

// n points i.i.d. uniform over the unit disk
std::vector<CellPoint> sample_uniform_disk(std::size_t n, RandomStream &rng);

// Same, but every point keeps at least `eps` from all points in `avoid` (rejection)
std::vector<CellPoint> sample_uniform_disk_avoiding(std::size_t n, RandomStream &rng,
                                                    const std::vector<CellPoint> &avoid,
                                                    double eps = min_separation);

// CA: antennas at the origin, users resampled inside the eps-disk around it.
// DA: users first, then antennas resampled while closer than eps to any user.
ScenarioLayout sample_scenario(std::size_t L, std::size_t K, Layout layout, double alpha, double snr_budget,
                               RandomStream &user_rng, RandomStream &antenna_rng);

// Fresh users for a fixed antenna set (nested averaging keeps antennas, resamples users)
std::vector<CellPoint> sample_users_for(const std::vector<CellPoint> &antennas, Layout layout, std::size_t K,
                                        RandomStream &user_rng);

// Distance from a user at radius y to a uniform point of the disk: pdf f(x; y) and cdf F(x; y), 0 <= x <= 1 + y
double access_distance_pdf(double x, double y);
double access_distance_cdf(double x, double y);

// Inverse of F(.; y), p in [0, 1]
double access_distance_quantile(double p, double y);

// Minimum of n i.i.d. access distances: n (1 - F)^(n-1) f and 1 - (1 - F)^n
double min_access_distance_pdf(double x, double y, std::size_t n);
double min_access_distance_cdf(double x, double y, std::size_t n);

// Heron area of the triangle with sides x, y, 1 (clamped at zero for degenerate triangles)
double triangle_area(double x, double y);

NeighborStats nearest_antenna_stats(const ScenarioLayout &scenario);

// Uniform-grid index over a point set, nearest-neighbour queries with an exclusion predicate.
// Ties resolve to the smaller index.
class PointGrid
{
public:
    explicit PointGrid(const std::vector<CellPoint> &points);

    // Returns {index, distance}; index == size() if every point is excluded
    std::pair<std::size_t, double> nearest(const CellPoint &q,
                                           const std::function<bool(std::size_t)> &excluded = {}) const;

    // True if some point lies strictly closer than r to q
    bool any_within(const CellPoint &q, double r) const;

    std::size_t size() const { return xs_.size(); }

private:
    std::size_t cell_of(double v) const;

    std::vector<double> xs_, ys_;
    std::size_t cells_ = 1;
    double cell_size_ = 2.0;
    std::vector<std::vector<std::size_t>> buckets_;
};

} // namespace dasrate

#endif
