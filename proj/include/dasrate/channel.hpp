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

#ifndef DASRATE_CHANNEL_HPP
#define DASRATE_CHANNEL_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/random.hpp"

#include <armadillo>

#include <cstddef>
#include <vector>

namespace dasrate
{

// Rows are users, columns antennas
struct LargeScaleProfile
{
    arma::mat gamma;         // amplitude path gains d^(-alpha/2)
    arma::vec gamma_norm_sq; // ||gamma_k||^2
    arma::mat beta;          // gamma_k / ||gamma_k||

    std::size_t K() const { return gamma.n_rows; }
    std::size_t L() const { return gamma.n_cols; }

    // beta_k squared, as a plain vector
    std::vector<double> beta_sq(std::size_t k) const;
};

struct FadingRealization
{
    arma::cx_mat h; // K x L, i.i.d. CN(0, 1)

    arma::cx_mat g(const LargeScaleProfile &p) const;       // gamma o h
    arma::cx_mat g_tilde(const LargeScaleProfile &p) const; // beta o h
};

// d^(-alpha/2); throws SingularGeometryError for d <= 0
double path_gain(double d, double alpha);

LargeScaleProfile large_scale_profile(const ScenarioLayout &scenario);

// Entries filled user by user, antenna by antenna from the stream
FadingRealization sample_fading(std::size_t K, std::size_t L, RandomStream &rng);

// Law of sum_l w_l E_l with E_l ~ Exp(1), i.e. rates lambda_l = 1 / w_l, and partial-fraction
// coefficients c_l = prod_{i != l} lambda_i / (lambda_i - lambda_l).
struct Hypoexponential
{
    std::vector<double> rates;
    std::vector<double> coef;
    double coef_abs_sum = 0.0; // sum |coef|; roundoff in mixtures grows with it

    double pdf(double x) const;
};

// Throws IllConditionedError when two rates are closer than 1e-4 (relative), a coefficient
// exceeds e^250 in magnitude, or the coefficients cancel by more than six orders of magnitude.
Hypoexponential hypoexponential(const std::vector<double> &beta_sq);

// Density of ||g_tilde_k||^2 given beta_k^2 (weights summing to one)
double hypoexp_pdf(const std::vector<double> &beta_sq, double x);

// E[exp(-s X)] = prod_l 1 / (1 + s w_l), in log form
double hypoexp_log_laplace(const std::vector<double> &beta_sq, double s);

namespace detail
{
// Weights must be positive and sum to one within 1e-9
void check_weights(const std::vector<double> &beta_sq);

// Trapezoid nodes in u = ln s covering where sum_l w_l / (1 + s w_l) prod_i 1/(1 + s w_i) lives.
// The integrands used with it are analytic in a strip of half-width pi around the real axis, so the
// rule converges geometrically in the step.
std::vector<double> log_scale_nodes(double w_min, double w_max, double step);
} // namespace detail

} // namespace dasrate

#endif
