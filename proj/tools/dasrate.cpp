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

#include "dasrate/errors.hpp"
#include "dasrate/experiment.hpp"

#include <CLI11.hpp>
#include <armadillo>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dasrate;

namespace
{

enum ExitCode
{
    exit_ok = 0,
    exit_config = 2,
    exit_numerical = 3,
    exit_partial = 4,
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string compiler_version()
{
#if defined(__clang__)
    return "clang " __clang_version__;
#elif defined(__GNUC__)
    return "gcc " __VERSION__;
#else
    return "unknown";
#endif
}

std::string error_name(const std::exception &e)
{
    if (dynamic_cast<const InfeasibleError *>(&e))
        return "InfeasibleError";
    if (dynamic_cast<const DomainError *>(&e))
        return "DomainError";
    if (dynamic_cast<const LayoutMismatchError *>(&e))
        return "LayoutMismatchError";
    if (dynamic_cast<const EmptyInputError *>(&e))
        return "EmptyInputError";
    if (dynamic_cast<const ConfigError *>(&e))
        return "ConfigError";
    if (dynamic_cast<const AccuracyError *>(&e))
        return "AccuracyError";
    if (dynamic_cast<const SingularChannelError *>(&e))
        return "SingularChannelError";
    if (dynamic_cast<const IllConditionedError *>(&e))
        return "IllConditionedError";
    if (dynamic_cast<const SingularGeometryError *>(&e))
        return "SingularGeometryError";
    if (dynamic_cast<const DegenerateChannelError *>(&e))
        return "DegenerateChannelError";
    return "Error";
}

struct RunOutcome
{
    std::vector<std::string> files;
    std::string status = "ok";
    std::string error;
};

void write_meta(const ExperimentConfig &cfg, const RunOutcome &outcome, double seconds)
{
    nlohmann::ordered_json meta;
    meta["experiment"] = to_string(cfg.kind);
    meta["status"] = outcome.status;
    if (!outcome.error.empty())
        meta["error"] = outcome.error;
    nlohmann::ordered_json config;
    for (const auto &[k, v] : describe(cfg))
        config[k] = v;
    meta["config"] = config;
    meta["versions"] = {{"dasrate", DASRATE_VERSION},
                        {"armadillo", arma::arma_version::as_string()},
                        {"compiler", compiler_version()}};
    meta["wall_clock_seconds"] = seconds;
    meta["files"] = outcome.files;
    write_file(fs::path(cfg.out_dir) / (to_string(cfg.kind) + "_meta.json"), meta.dump(2) + "\n");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"dasrate: downlink rates for co-located and distributed antenna layouts"};
    app.require_subcommand(1);

    CLI::App *run = app.add_subcommand("run", "Run an experiment and write one table per curve");
    std::string kind_name;
    std::string config_path;
    std::vector<std::string> sets;
    bool paper_scale = false;
    std::map<std::string, std::string> flags;

    run->add_option("kind", kind_name, "figure2..figure8, scenario or sweep")->required();
    run->add_option("-c,--config", config_path, "Configuration file");
    run->add_option("--set", sets, "Override as section.key=value (repeatable)");
    run->add_flag("--paper-scale", paper_scale, "500 user and 50 antenna realizations");

    // Typed shortcuts for the common settings; each maps onto a config key
    const std::vector<std::tuple<std::string, std::string, std::string>> shortcuts = {
        {"--layout", "experiment.layout", "ca or da"},
        {"--scheme", "experiment.scheme", "mrt or zfbf"},
        {"--simulate", "experiment.simulate", "true: Monte Carlo for scenario and sweep"},
        {"--L", "grid.L", "Antenna counts, comma separated"},
        {"--K", "grid.K", "User counts, comma separated"},
        {"--ratio", "grid.ratio", "L/K ratios, comma separated"},
        {"--upsilon", "grid.upsilon", "Asymptotic ratio axis, comma separated"},
        {"--alpha", "grid.alpha", "Path-loss exponent"},
        {"--snr-db", "grid.snr_db", "Transmit SNR in dB"},
        {"--draws", "plan.fading_draws", "Fading draws per scenario"},
        {"--users", "plan.user_realizations", "User realizations"},
        {"--antennas", "plan.antenna_realizations", "Antenna realizations"},
        {"--seed", "plan.seed", "Master seed"},
        {"--workers", "plan.workers", "Worker threads"},
        {"--interference", "plan.interference", "instantaneous or averaged"},
        {"-o,--out", "output.dir", "Output directory"},
        {"--format", "output.format", "csv or json"},
    };
    std::map<std::string, CLI::Option *> options;
    for (const auto &[flag, key, help] : shortcuts)
        options[key] = run->add_option(flag, flags[key], help);
    options["grid.K"]->excludes(options["grid.ratio"]);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    ExperimentConfig cfg;
    try
    {
        cfg = default_config(parse_experiment_kind(kind_name));
        if (paper_scale)
            apply_paper_scale(cfg);
        if (!config_path.empty())
        {
            apply_config_text(cfg, read_file(config_path));
            cfg.kind = parse_experiment_kind(kind_name);
        }
        for (const auto &[key, value] : flags)
            if (!value.empty())
                apply_override(cfg, key, value);
        for (const auto &s : sets)
        {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects section.key=value, got '" + s + "'");
            apply_override(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        cfg.validate();
        fs::create_directories(cfg.out_dir);
    }
    catch (const std::exception &e)
    {
        std::cerr << error_name(e) << ": " << e.what() << "\n";
        return exit_config;
    }

    const auto start = std::chrono::steady_clock::now();
    RunOutcome outcome;
    int rc = exit_ok;
    try
    {
        run_experiment(cfg, [&](const Curve &curve) {
            const std::string name = to_string(cfg.kind) + "_" + curve.id + "." + cfg.format;
            write_file(fs::path(cfg.out_dir) / name, cfg.format == "csv" ? to_csv(curve) : to_json(curve, cfg));
            outcome.files.push_back(name);
            std::cout << name << "\n";
        });
    }
    catch (const std::exception &e)
    {
        const bool numerical = dynamic_cast<const AccuracyError *>(&e) || dynamic_cast<const SingularChannelError *>(&e) ||
                               dynamic_cast<const IllConditionedError *>(&e);
        const bool argument = dynamic_cast<const std::invalid_argument *>(&e) || dynamic_cast<const std::domain_error *>(&e);
        if (!outcome.files.empty())
            rc = exit_partial;
        else if (numerical)
            rc = exit_numerical;
        else if (argument)
            rc = exit_config;
        else
            rc = exit_numerical;
        outcome.status = rc == exit_partial ? "partial" : "failed";
        outcome.error = error_name(e) + ": " + e.what();
        std::cerr << outcome.error << "\n";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try
    {
        write_meta(cfg, outcome, seconds);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        if (rc == exit_ok)
            rc = exit_numerical;
    }
    return rc;
}
