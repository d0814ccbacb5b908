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

#ifndef DASRATE_EXPERIMENT_HPP
#define DASRATE_EXPERIMENT_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/types.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dasrate
{

enum class ExperimentKind
{
    figure2,
    figure3,
    figure4,
    figure5,
    figure6,
    figure7,
    figure8,
    scenario,
    sweep,
};

ExperimentKind parse_experiment_kind(const std::string &name);
std::string to_string(ExperimentKind kind);

// Configuration file error or invalid override
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig
{
    ExperimentKind kind = ExperimentKind::scenario;

    // grid
    std::vector<std::size_t> L;
    std::vector<std::size_t> K;
    std::vector<double> ratio;   // L / K
    std::vector<double> upsilon; // asymptotic ratio axis
    double alpha = 4.0;
    double snr_db = 20.0;

    // scenario / sweep selection
    Layout layout = Layout::CA;
    Scheme scheme = Scheme::MRT;
    bool simulate = false; // scenario: Monte Carlo instead of the analytic expression

    SimulationPlan plan;

    std::string out_dir = ".";
    std::string format = "csv"; // csv | json

    double snr_linear() const;
    void validate() const;
};

// Desk-scale defaults for a kind: 100 user and 10 antenna realizations
ExperimentConfig default_config(ExperimentKind kind);

// Restores 500 user and 50 antenna realizations
void apply_paper_scale(ExperimentConfig &cfg);

// Flat "key = value" lines under [experiment], [grid], [plan], [output]; '#' starts a comment
void apply_config_text(ExperimentConfig &cfg, const std::string &text);

// key is "section.name". For scenario and sweep, setting grid.K clears grid.ratio and vice versa.
void apply_override(ExperimentConfig &cfg, const std::string &key, const std::string &value);

// All settings as ordered section.key -> value strings (the metadata record)
std::map<std::string, std::string> describe(const ExperimentConfig &cfg);

struct CurveRow
{
    double x = 0.0;
    RateEstimate estimate;
    std::uint64_t seed = 0; // Monte Carlo rows only
};

struct Curve
{
    std::string id;
    std::vector<CurveRow> rows;
};

// Runs the experiment and hands each finished curve to `sink` in order.
void run_experiment(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink);

std::vector<Curve> run_experiment(const ExperimentConfig &cfg);

// %.12g
std::string format_number(double v);

std::string to_csv(const Curve &curve);
std::string to_json(const Curve &curve, const ExperimentConfig &cfg);

struct ParsedRow
{
    double x = 0.0;
    double value = 0.0;
    std::string method;
    std::string std_error; // empty for non-Monte-Carlo rows
    std::size_t n_samples = 0;
    std::string seed;
};

std::vector<ParsedRow> parse_csv(const std::string &text);

} // namespace dasrate

#endif
