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

#ifndef DASRATE_ERRORS_HPP
#define DASRATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dasrate
{

// Argument outside the mathematical domain of a formula (x <= 0 for E1, L <= K for log terms, ...)
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Empty sample request or empty input list
class EmptyInputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter combination that the requested scheme cannot serve, e.g. fewer antennas than users
class InfeasibleError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Operation requested on the wrong antenna layout
class LayoutMismatchError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// User and antenna at (numerically) zero distance
class SingularGeometryError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// All-zero channel vector
class DegenerateChannelError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Channel matrix without full row rank
class SingularChannelError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Closed form numerically unusable for the given weights; callers switch to the Monte Carlo path.
class IllConditionedError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Quadrature did not reach the requested tolerance. Carries the best available estimate.
class AccuracyError : public std::runtime_error
{
public:
    AccuracyError(const std::string &what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

} // namespace dasrate

#endif
