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

#include "dasrate/experiment.hpp"
#include "dasrate/engine.hpp"
#include "dasrate/errors.hpp"
#include "dasrate/montecarlo.hpp"
#include "dasrate/mrt.hpp"
#include "dasrate/zfbf.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace dasrate
{

namespace
{

const std::vector<std::pair<ExperimentKind, std::string>> kind_names = {
    {ExperimentKind::figure2, "figure2"}, {ExperimentKind::figure3, "figure3"}, {ExperimentKind::figure4, "figure4"},
    {ExperimentKind::figure5, "figure5"}, {ExperimentKind::figure6, "figure6"}, {ExperimentKind::figure7, "figure7"},
    {ExperimentKind::figure8, "figure8"}, {ExperimentKind::scenario, "scenario"}, {ExperimentKind::sweep, "sweep"},
};

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(t, &used);
    }
    catch (const std::exception &)
    {
        throw ConfigError(key + ": not a number: '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v))
        throw ConfigError(key + ": not a finite number: '" + text + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(key + ": not a nonnegative integer: '" + text + "'");
    try
    {
        return std::stoull(t);
    }
    catch (const std::exception &)
    {
        throw ConfigError(key + ": integer out of range: '" + text + "'");
    }
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string &key, const std::string &text)
{
    std::vector<double> v;
    for (const auto &s : split_list(text))
        v.push_back(parse_double(key, s));
    return v;
}

std::vector<std::size_t> parse_count_list(const std::string &key, const std::string &text)
{
    std::vector<std::size_t> v;
    for (const auto &s : split_list(text))
        v.push_back(static_cast<std::size_t>(parse_unsigned(key, s)));
    return v;
}

bool parse_bool(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

template <typename T>
std::string join(const std::vector<T> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            s += ",";
        if constexpr (std::is_floating_point_v<T>)
            s += format_number(v[i]);
        else
            s += std::to_string(v[i]);
    }
    return s;
}

std::size_t users_for_ratio(std::size_t L, double ratio)
{
    const long K = std::lround(static_cast<double>(L) / ratio);
    if (K < 1)
        throw InfeasibleError("ratio " + format_number(ratio) + " leaves no users at L = " + std::to_string(L));
    return static_cast<std::size_t>(K);
}

// Scenario and sweep take either a K list or a ratio list; the last one set wins
bool picks_users_by_K_or_ratio(ExperimentKind kind)
{
    return kind == ExperimentKind::scenario || kind == ExperimentKind::sweep;
}

std::string ratio_tag(double ratio) { return "r" + format_number(ratio); }

RateEstimate mrt_da_rate(const std::vector<double> &beta_sq, double mu)
{
    try
    {
        return rate_mrt_da(beta_sq, mu);
    }
    catch (const IllConditionedError &)
    {
        return rate_mrt_da_integral(beta_sq, mu);
    }
}

// Analytic value of the average user rate for one (layout, scheme) point
RateEstimate analytic_average(const ExperimentConfig &cfg, std::size_t L, std::size_t K)
{
    const double snr = cfg.snr_linear();
    if (cfg.scheme == Scheme::MRT)
    {
        if (cfg.layout == Layout::CA)
            return rate_mrt_ca(L, K, cfg.plan.quadrature);
        return avg_rate_ub_mrt_da(cfg.plan, L, K, cfg.alpha);
    }
    if (cfg.layout == Layout::CA)
        return avg_rate_zfbf_ca(L, K, snr, cfg.alpha);
    return avg_rate_lb_zfbf_da(L, K, snr, cfg.alpha, cfg.plan.quadrature);
}

CurveRow mc_row(double x, const RateEstimate &e, const ExperimentConfig &cfg) { return {x, e, cfg.plan.master_seed}; }

CurveRow plain_row(double x, const RateEstimate &e) { return {x, e, 0}; }

CurveRow asymptotic_row(double x, double v) { return {x, RateEstimate{v, RateMethod::asymptotic}, 0}; }

RateEstimate simulate(const ExperimentConfig &cfg, std::size_t L, std::size_t K, Layout layout, Scheme scheme)
{
    return average_user_rate(cfg.plan, L, K, layout, scheme, cfg.alpha, cfg.snr_linear());
}

void figure2(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    const std::size_t L = cfg.L.front(), K = cfg.K.front();
    const double snr = cfg.snr_linear();
    const std::uint64_t seed = cfg.plan.master_seed;
    const ScenarioLayout ca = scenario_for_realization(seed, 0, 0, L, K, Layout::CA, cfg.alpha, snr);
    const ScenarioLayout da = scenario_for_realization(seed, 0, 0, L, K, Layout::DA, cfg.alpha, snr);

    EmpiricalOptions opt;
    opt.draws = cfg.plan.fading_draws;
    opt.seed = seed;
    opt.interference = cfg.plan.interference;
    opt.workers = cfg.plan.workers;

    const RateEstimate rmc = rate_mrt_ca(L, K, cfg.plan.quadrature);
    Curve c_rmc{"rmc", {}};
    for (std::size_t k = 0; k < K; ++k)
        c_rmc.rows.push_back(plain_row(static_cast<double>(k + 1), rmc));
    sink(c_rmc);

    const ScenarioRates ca_sim = scenario_rates_empirical(ca, Scheme::MRT, opt);
    Curve c_rmc_sim{"rmc_sim", {}};
    for (std::size_t k = 0; k < K; ++k)
        c_rmc_sim.rows.push_back(mc_row(static_cast<double>(k + 1),
                                        {ca_sim.mean[k], RateMethod::monte_carlo, ca_sim.std_error[k], ca_sim.draws}, cfg));
    sink(c_rmc_sim);

    const LargeScaleProfile profile = large_scale_profile(da);
    WeightOptions wopt;
    wopt.seed = seed;
    const InterferenceWeights weights = interference_weights(profile, wopt);
    Curve c_rmd{"rmd", {}};
    for (std::size_t k = 0; k < K; ++k)
    {
        const double mu = sinr_mrt_da(profile, weights, k);
        c_rmd.rows.push_back(plain_row(static_cast<double>(k + 1), mrt_da_rate(profile.beta_sq(k), mu)));
    }
    sink(c_rmd);

    const ScenarioRates da_sim = scenario_rates_empirical(da, Scheme::MRT, opt);
    Curve c_rmd_sim{"rmd_sim", {}};
    for (std::size_t k = 0; k < K; ++k)
        c_rmd_sim.rows.push_back(mc_row(static_cast<double>(k + 1),
                                        {da_sim.mean[k], RateMethod::monte_carlo, da_sim.std_error[k], da_sim.draws}, cfg));
    sink(c_rmd_sim);
}

void figure3(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    Curve ca{"asym_mc", {}}, da{"asym_md_ub", {}};
    for (double v : cfg.upsilon)
    {
        ca.rows.push_back(asymptotic_row(v, asym_rate_mrt_ca({v, cfg.alpha})));
        da.rows.push_back(asymptotic_row(v, asym_rate_ub_mrt_da({v, cfg.alpha}, cfg.plan.quadrature)));
    }
    sink(ca);
    sink(da);
}

void figure4(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    for (double r : cfg.ratio)
    {
        const std::string tag = ratio_tag(r);
        Curve ca{"ca_" + tag, {}}, da{"da_" + tag, {}}, asym{"asym_ca_" + tag, {}};
        for (std::size_t L : cfg.L)
        {
            const std::size_t K = users_for_ratio(L, r);
            const double x = static_cast<double>(L);
            ca.rows.push_back(mc_row(x, simulate(cfg, L, K, Layout::CA, Scheme::MRT), cfg));
            da.rows.push_back(mc_row(x, simulate(cfg, L, K, Layout::DA, Scheme::MRT), cfg));
            asym.rows.push_back(asymptotic_row(x, asym_rate_mrt_ca({r, cfg.alpha})));
        }
        sink(ca);
        sink(da);
        sink(asym);
    }
}

void figure5(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    const std::size_t L = cfg.L.front(), K = cfg.K.front();
    const double snr = cfg.snr_linear();
    const std::uint64_t seed = cfg.plan.master_seed;
    const ScenarioLayout ca = scenario_for_realization(seed, 0, 0, L, K, Layout::CA, cfg.alpha, snr);
    const ScenarioLayout da = scenario_for_realization(seed, 0, 0, L, K, Layout::DA, cfg.alpha, snr);

    // x is the minimum access distance: rho for CA, the trimmed distance for DA
    Curve zc{"rzc", {}};
    for (const auto &u : ca.users)
        zc.rows.push_back(plain_row(u.rho, rate_zfbf_ca(L, K, snr, u.rho, cfg.alpha, cfg.plan.quadrature)));
    const NeighborStats st = nearest_antenna_stats(da);
    Curve zd{"rzd_lb", {}};
    for (double d : st.trimmed_d_min)
        zd.rows.push_back(plain_row(d, rate_lb_zfbf_da(d, K, snr, cfg.alpha)));
    auto by_x = [](const CurveRow &a, const CurveRow &b) { return a.x < b.x; };
    std::stable_sort(zc.rows.begin(), zc.rows.end(), by_x);
    std::stable_sort(zd.rows.begin(), zd.rows.end(), by_x);
    sink(zc);
    sink(zd);
}

void figure6(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    const double snr = cfg.snr_linear();
    Curve zc{"zc", {}};
    for (double v : cfg.upsilon)
        zc.rows.push_back(plain_row(v, RateEstimate{asym_rate_zfbf_ca({v, cfg.alpha}, snr), RateMethod::closed_form}));
    sink(zc);
    for (std::size_t K : cfg.K)
    {
        Curve zd{"zd_lb_K" + std::to_string(K), {}};
        for (double v : cfg.upsilon)
        {
            const auto L = static_cast<std::size_t>(std::lround(v * static_cast<double>(K)));
            zd.rows.push_back(plain_row(v, avg_rate_lb_zfbf_da(L, K, snr, cfg.alpha, cfg.plan.quadrature)));
        }
        sink(zd);
    }
}

void figure7(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    const double snr = cfg.snr_linear();
    for (double r : cfg.ratio)
    {
        const std::string tag = ratio_tag(r);
        Curve zc{"zc_" + tag, {}}, zc_sim{"zc_sim_" + tag, {}}, zd_lb{"zd_lb_" + tag, {}}, zd_sim{"zd_sim_" + tag, {}};
        for (std::size_t L : cfg.L)
        {
            const std::size_t K = users_for_ratio(L, r);
            const double x = static_cast<double>(L);
            zc.rows.push_back(plain_row(x, avg_rate_zfbf_ca(L, K, snr, cfg.alpha)));
            zc_sim.rows.push_back(mc_row(x, simulate(cfg, L, K, Layout::CA, Scheme::ZFBF), cfg));
            zd_lb.rows.push_back(plain_row(x, avg_rate_lb_zfbf_da(L, K, snr, cfg.alpha, cfg.plan.quadrature)));
            zd_sim.rows.push_back(mc_row(x, simulate(cfg, L, K, Layout::DA, Scheme::ZFBF), cfg));
        }
        sink(zc);
        sink(zc_sim);
        sink(zd_lb);
        sink(zd_sim);
    }
}

void figure8(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    const std::size_t K = cfg.K.front();
    const std::vector<std::pair<Scheme, Layout>> combos = {
        {Scheme::MRT, Layout::CA}, {Scheme::MRT, Layout::DA}, {Scheme::ZFBF, Layout::CA}, {Scheme::ZFBF, Layout::DA}};
    for (const auto &[scheme, layout] : combos)
    {
        Curve c{to_string(scheme) + (layout == Layout::CA ? "_ca" : "_da"), {}};
        for (std::size_t L : cfg.L)
            c.rows.push_back(mc_row(static_cast<double>(L), simulate(cfg, L, K, layout, scheme), cfg));
        sink(c);
    }
}

void point_curves(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    const std::string base = to_string(cfg.scheme) + (cfg.layout == Layout::CA ? "_ca" : "_da");
    auto evaluate = [&](std::size_t L, std::size_t K) {
        if (cfg.simulate)
            return mc_row(static_cast<double>(L), simulate(cfg, L, K, cfg.layout, cfg.scheme), cfg);
        return plain_row(static_cast<double>(L), analytic_average(cfg, L, K));
    };

    if (!cfg.ratio.empty())
    {
        for (double r : cfg.ratio)
        {
            Curve c{base + "_" + ratio_tag(r), {}};
            for (std::size_t L : cfg.L)
                c.rows.push_back(evaluate(L, users_for_ratio(L, r)));
            sink(c);
        }
        return;
    }
    for (std::size_t K : cfg.K)
    {
        Curve c{base + "_K" + std::to_string(K), {}};
        for (std::size_t L : cfg.L)
            c.rows.push_back(evaluate(L, K));
        sink(c);
    }
}

} // namespace

ExperimentKind parse_experiment_kind(const std::string &name)
{
    for (const auto &[k, n] : kind_names)
        if (n == name)
            return k;
    throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind)
{
    for (const auto &[k, n] : kind_names)
        if (k == kind)
            return n;
    return "unknown";
}

double ExperimentConfig::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

void ExperimentConfig::validate() const
{
    if (!(alpha > 2.0))
        throw ConfigError("grid.alpha must exceed 2");
    if (!std::isfinite(snr_db))
        throw ConfigError("grid.snr_db must be finite");
    if (format != "csv" && format != "json")
        throw ConfigError("output.format must be csv or json");
    try
    {
        plan.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }

    auto need = [](bool ok, const char *what) {
        if (!ok)
            throw ConfigError(std::string("grid is empty: ") + what);
    };
    switch (kind)
    {
    case ExperimentKind::figure3:
        need(!upsilon.empty(), "upsilon");
        break;
    case ExperimentKind::figure6:
        need(!upsilon.empty(), "upsilon");
        need(!K.empty(), "K");
        break;
    case ExperimentKind::figure4:
    case ExperimentKind::figure7:
        need(!L.empty(), "L");
        need(!ratio.empty(), "ratio");
        break;
    case ExperimentKind::figure2:
    case ExperimentKind::figure5:
    case ExperimentKind::figure8:
        need(!L.empty(), "L");
        need(!K.empty(), "K");
        break;
    case ExperimentKind::scenario:
    case ExperimentKind::sweep:
        need(!L.empty(), "L");
        need(!K.empty() || !ratio.empty(), "K or ratio");
        break;
    }
    for (double r : ratio)
        if (!(r > 0.0))
            throw ConfigError("grid.ratio entries must be positive");
    for (double v : upsilon)
        if (!(v > 0.0))
            throw ConfigError("grid.upsilon entries must be positive");
}

ExperimentConfig default_config(ExperimentKind kind)
{
    ExperimentConfig c;
    c.kind = kind;
    c.plan.user_realizations = 100;
    c.plan.antenna_realizations = 10;
    switch (kind)
    {
    case ExperimentKind::figure2:
    case ExperimentKind::figure5:
        c.L = {100};
        c.K = {50};
        break;
    case ExperimentKind::figure3:
        c.upsilon = {1, 2, 4, 8, 16, 32, 64};
        break;
    case ExperimentKind::figure4:
    case ExperimentKind::figure7:
        c.L = {50, 100, 200, 400};
        c.ratio = {2, 5};
        break;
    case ExperimentKind::figure6:
        c.upsilon = {1.5, 2, 3, 4, 5, 6, 8, 10};
        c.K = {10, 50};
        break;
    case ExperimentKind::figure8:
        c.L = {50, 100, 150, 200, 300, 400};
        c.K = {50};
        break;
    case ExperimentKind::scenario:
        c.L = {100};
        c.K = {50};
        break;
    case ExperimentKind::sweep:
        c.L = {50, 100, 200};
        c.ratio = {2};
        break;
    }
    return c;
}

void apply_paper_scale(ExperimentConfig &cfg)
{
    cfg.plan.user_realizations = 500;
    cfg.plan.antenna_realizations = 50;
}

void apply_override(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    const std::string v = trim(value);
    if (key == "experiment.kind")
        cfg.kind = parse_experiment_kind(v);
    else if (key == "experiment.layout")
    {
        if (v == "ca" || v == "CA")
            cfg.layout = Layout::CA;
        else if (v == "da" || v == "DA")
            cfg.layout = Layout::DA;
        else
            throw ConfigError("experiment.layout must be ca or da");
    }
    else if (key == "experiment.scheme")
    {
        if (v == "mrt")
            cfg.scheme = Scheme::MRT;
        else if (v == "zfbf" || v == "zf")
            cfg.scheme = Scheme::ZFBF;
        else
            throw ConfigError("experiment.scheme must be mrt or zfbf");
        cfg.plan.scheme = cfg.scheme;
    }
    else if (key == "experiment.simulate")
        cfg.simulate = parse_bool(key, v);
    else if (key == "grid.L")
        cfg.L = parse_count_list(key, v);
    else if (key == "grid.K")
    {
        cfg.K = parse_count_list(key, v);
        if (picks_users_by_K_or_ratio(cfg.kind))
            cfg.ratio.clear();
    }
    else if (key == "grid.ratio")
    {
        cfg.ratio = parse_double_list(key, v);
        if (picks_users_by_K_or_ratio(cfg.kind))
            cfg.K.clear();
    }
    else if (key == "grid.upsilon")
        cfg.upsilon = parse_double_list(key, v);
    else if (key == "grid.alpha")
        cfg.alpha = parse_double(key, v);
    else if (key == "grid.snr_db")
        cfg.snr_db = parse_double(key, v);
    else if (key == "plan.fading_draws")
        cfg.plan.fading_draws = parse_unsigned(key, v);
    else if (key == "plan.user_realizations")
        cfg.plan.user_realizations = parse_unsigned(key, v);
    else if (key == "plan.antenna_realizations")
        cfg.plan.antenna_realizations = parse_unsigned(key, v);
    else if (key == "plan.seed")
        cfg.plan.master_seed = parse_unsigned(key, v);
    else if (key == "plan.workers")
        cfg.plan.workers = static_cast<unsigned>(parse_unsigned(key, v));
    else if (key == "plan.interference")
    {
        if (v == "instantaneous")
            cfg.plan.interference = InterferenceModel::instantaneous;
        else if (v == "averaged")
            cfg.plan.interference = InterferenceModel::averaged;
        else
            throw ConfigError("plan.interference must be instantaneous or averaged");
    }
    else if (key == "plan.abs_tol")
        cfg.plan.quadrature.abs_tol = parse_double(key, v);
    else if (key == "plan.rel_tol")
        cfg.plan.quadrature.rel_tol = parse_double(key, v);
    else if (key == "plan.max_subdivisions")
        cfg.plan.quadrature.max_subdivisions = parse_unsigned(key, v);
    else if (key == "plan.fixed_nodes")
        cfg.plan.quadrature.fixed_nodes = parse_unsigned(key, v);
    else if (key == "output.dir")
        cfg.out_dir = v;
    else if (key == "output.format")
        cfg.format = v;
    else
        throw ConfigError("unknown setting '" + key + "'");
}

void apply_config_text(ExperimentConfig &cfg, const std::string &text)
{
    std::stringstream ss(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(ss, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "grid" && section != "plan" && section != "output")
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": setting outside any section");
        apply_override(cfg, section + "." + trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

std::map<std::string, std::string> describe(const ExperimentConfig &cfg)
{
    std::map<std::string, std::string> m;
    m["experiment.kind"] = to_string(cfg.kind);
    m["experiment.layout"] = cfg.layout == Layout::CA ? "ca" : "da";
    m["experiment.scheme"] = to_string(cfg.scheme);
    m["experiment.simulate"] = cfg.simulate ? "true" : "false";
    m["grid.L"] = join(cfg.L);
    m["grid.K"] = join(cfg.K);
    m["grid.ratio"] = join(cfg.ratio);
    m["grid.upsilon"] = join(cfg.upsilon);
    m["grid.alpha"] = format_number(cfg.alpha);
    m["grid.snr_db"] = format_number(cfg.snr_db);
    m["plan.fading_draws"] = std::to_string(cfg.plan.fading_draws);
    m["plan.user_realizations"] = std::to_string(cfg.plan.user_realizations);
    m["plan.antenna_realizations"] = std::to_string(cfg.plan.antenna_realizations);
    m["plan.seed"] = std::to_string(cfg.plan.master_seed);
    m["plan.workers"] = std::to_string(cfg.plan.workers);
    m["plan.interference"] = cfg.plan.interference == InterferenceModel::instantaneous ? "instantaneous" : "averaged";
    m["plan.abs_tol"] = format_number(cfg.plan.quadrature.abs_tol);
    m["plan.rel_tol"] = format_number(cfg.plan.quadrature.rel_tol);
    m["plan.max_subdivisions"] = std::to_string(cfg.plan.quadrature.max_subdivisions);
    m["plan.fixed_nodes"] = std::to_string(cfg.plan.quadrature.fixed_nodes);
    m["output.dir"] = cfg.out_dir;
    m["output.format"] = cfg.format;
    return m;
}

void run_experiment(const ExperimentConfig &cfg, const std::function<void(const Curve &)> &sink)
{
    cfg.validate();
    switch (cfg.kind)
    {
    case ExperimentKind::figure2:
        return figure2(cfg, sink);
    case ExperimentKind::figure3:
        return figure3(cfg, sink);
    case ExperimentKind::figure4:
        return figure4(cfg, sink);
    case ExperimentKind::figure5:
        return figure5(cfg, sink);
    case ExperimentKind::figure6:
        return figure6(cfg, sink);
    case ExperimentKind::figure7:
        return figure7(cfg, sink);
    case ExperimentKind::figure8:
        return figure8(cfg, sink);
    case ExperimentKind::scenario:
    case ExperimentKind::sweep:
        return point_curves(cfg, sink);
    }
}

std::vector<Curve> run_experiment(const ExperimentConfig &cfg)
{
    std::vector<Curve> out;
    run_experiment(cfg, [&](const Curve &c) { out.push_back(c); });
    return out;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const Curve &curve)
{
    std::string s = "x,value,method,stderr,n_samples,seed\n";
    for (const auto &r : curve.rows)
    {
        const bool mc = r.estimate.method == RateMethod::monte_carlo;
        s += format_number(r.x) + "," + format_number(r.estimate.value) + "," + to_string(r.estimate.method) + "," +
             (mc ? format_number(r.estimate.std_error) : "") + "," + std::to_string(r.estimate.n_samples) + "," +
             (mc ? std::to_string(r.seed) : "") + "\n";
    }
    return s;
}

std::string to_json(const Curve &curve, const ExperimentConfig &cfg)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto &[k, v] : describe(cfg))
        meta[k] = v;
    meta["curve"] = curve.id;
    j["meta"] = meta;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto &r : curve.rows)
    {
        const bool mc = r.estimate.method == RateMethod::monte_carlo;
        nlohmann::ordered_json row;
        row["x"] = std::stod(format_number(r.x));
        row["value"] = std::stod(format_number(r.estimate.value));
        row["method"] = to_string(r.estimate.method);
        row["stderr"] = mc ? nlohmann::ordered_json(std::stod(format_number(r.estimate.std_error))) : nlohmann::ordered_json();
        row["n_samples"] = r.estimate.n_samples;
        row["seed"] = mc ? nlohmann::ordered_json(r.seed) : nlohmann::ordered_json();
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

std::vector<ParsedRow> parse_csv(const std::string &text)
{
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line != "x,value,method,stderr,n_samples,seed")
        throw ConfigError("parse_csv: missing or unexpected header");
    std::vector<ParsedRow> rows;
    while (std::getline(ss, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            f.push_back(cell);
        if (!line.empty() && line.back() == ',')
            f.emplace_back();
        if (f.size() != 6)
            throw ConfigError("parse_csv: expected 6 fields in '" + line + "'");
        rows.push_back({parse_double("x", f[0]), parse_double("value", f[1]), f[2], f[3],
                        static_cast<std::size_t>(parse_unsigned("n_samples", f[4])), f[5]});
    }
    return rows;
}

} // namespace dasrate
