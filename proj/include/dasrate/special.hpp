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

#ifndef DASRATE_SPECIAL_HPP
#define DASRATE_SPECIAL_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace dasrate
{

// Tolerances for the adaptive rule, node count for the fixed Gauss-Legendre rule.
struct QuadratureSpec
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_subdivisions = 2000;
    std::size_t fixed_nodes = 64;

    void validate() const;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;           // estimated absolute error
    std::size_t evaluations = 0;  // integrand calls
    std::size_t subdivisions = 0; // intervals at exit
};

// e^x * E1(x) for x > 0, evaluated as one product so that it stays finite for any x.
// Series below x = 1, continued fraction above.
double exp_e1(double x);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^-t dt, s > 0, x >= 0.
double upper_incomplete_gamma(double s, double x);

// log Gamma(s, x); finite even when Gamma(s, x) underflows.
double log_upper_incomplete_gamma(double s, double x);

// Lower incomplete gamma gamma(s, x) = Gamma(s) - Gamma(s, x), without the cancellation.
double lower_incomplete_gamma(double s, double x);

// Adaptive 15-point Gauss-Kronrod integration of f over [a, b]. b may be +infinity, in which
// case x = a + t / (1 - t) maps the range onto [0, 1), initially split at x - a = 2^j for
// j = -10..40. Throws AccuracyError (with the best estimate) when the tolerance is not met within
// spec.max_subdivisions intervals.
QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double a, double b,
                                    const QuadratureSpec &spec = {});

// E[g(X)] for X ~ Gamma(shape, scale); the density is formed in log space and the range is split
// at mean +- 12 standard deviations so the peak is never straddled by a single coarse interval.
QuadratureResult expect_gamma(double shape, double scale, const std::function<double(double)> &g,
                              const QuadratureSpec &spec = {});

// n-point Gauss-Legendre nodes and weights on [-1, 1]
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(std::size_t n);

// Fixed-rule integral of f over a finite [a, b]
double integrate_fixed(const std::function<double(double)> &f, double a, double b, const GaussRule &rule);

} // namespace dasrate

#endif
