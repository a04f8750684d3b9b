// SPDX-License-Identifier: Apache-2.0
//
// syncloc: joint localization and clock synchronization for asynchronous
// sensor networks
// Copyright (C) 2026 The syncloc Authors
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

#include "cli.hpp"

#include "syncloc/config.hpp"
#include "syncloc/crlb.hpp"
#include "syncloc/errors.hpp"
#include "syncloc/estimators.hpp"
#include "syncloc/harness.hpp"
#include "syncloc/joint.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace syncloc::cli
{

namespace
{

struct Invocation
{
    std::string config_path;
    std::string output_path;
    std::string dump_path;
    std::vector<std::string> overrides;
    std::size_t jobs = 1;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    int verbosity = 0;
};

void echo_config(std::ostream& out, const ExperimentConfig& config)
{
    for (const auto& [key, value] : describe_config(config))
        out << "# " << key << '=' << value << '\n';
}

std::string cell(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int do_run(const Invocation& inv, const ExperimentConfig& config, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    const auto rows = run_experiment(config, inv.jobs);
    if (inv.verbosity > 0)
    {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        err << "syncloc: " << config.trials << " trials in " << std::fixed << std::setprecision(1)
            << elapsed.count() << " s\n";
    }

    if (inv.output_path.empty())
    {
        write_results_csv(out, config, rows);
        return kSuccess;
    }
    std::ofstream file(inv.output_path, std::ios::binary);
    if (!file)
    {
        err << "syncloc: cannot write '" << inv.output_path << "'\n";
        return kConfigError;
    }
    write_results_csv(file, config, rows);
    return kSuccess;
}

int do_diagnose(const Invocation& inv, ExperimentConfig config, std::ostream& out, std::ostream& err)
{
    if (!(inv.sigma >= 0.0))
    {
        err << "syncloc: --sigma must be non-negative\n";
        return kConfigError;
    }
    config.master_seed = inv.seed;
    NetworkScenario scenario = generate_scenario(config, 0);
    scenario.noise_sigma = inv.sigma;
    const LocalizationInput loc(scenario.geometry);
    const std::size_t M = scenario.anchors();
    const std::size_t l = scenario.geometry.dimension();

    out << "# syncloc diagnose sigma=" << inv.sigma << " seed=" << inv.seed << '\n';
    echo_config(out, config);

    std::optional<std::ofstream> dump;
    if (!inv.dump_path.empty())
    {
        dump.emplace(inv.dump_path, std::ios::binary);
        if (!*dump)
        {
            err << "syncloc: cannot write '" << inv.dump_path << "'\n";
            return kConfigError;
        }
    }

    int status = kSuccess;
    for (std::size_t p = 0; p < config.protocols.size(); ++p)
    {
        scenario.protocol = config.protocols[p];
        const MeasurementSystem system = build_measurement_system(scenario);
        if (dump)
        {
            std::ostringstream section;
            write_system_csv(section, system, to_string(scenario.protocol));
            std::string text = section.str();
            if (p > 0)
                text.erase(0, text.find('\n') + 1); // one header per file
            *dump << text;
        }

        std::optional<TwoStepEstimate> two_step;
        std::optional<JointEstimate> joint;
        std::optional<CrlbReport> bound;
        try
        {
            two_step = estimate_two_step(system, loc, scenario.wave_speed);
        }
        catch (const std::exception& e)
        {
            err << "syncloc: two-step estimator failed (" << to_string(scenario.protocol) << "): " << e.what() << '\n';
            status = kNumericalFailure;
        }
        try
        {
            joint = estimate_joint(build_kronecker_system(system, loc, scenario.wave_speed, KroneckerForm::Compressed));
            if (!joint->clocks_recovered())
            {
                err << "syncloc: joint estimator could not recover " << joint->failed_nodes.size() << " clock(s)\n";
                status = kNumericalFailure;
            }
        }
        catch (const std::exception& e)
        {
            err << "syncloc: joint estimator failed (" << to_string(scenario.protocol) << "): " << e.what() << '\n';
            status = kNumericalFailure;
        }
        if (inv.sigma > 0.0)
        {
            NetworkScenario noiseless = scenario;
            noiseless.noise_sigma = 0.0;
            bound = fisher_and_rcrlb(jacobian(build_measurement_system(noiseless), noiseless), inv.sigma);
        }

        out << "\nprotocol " << to_string(scenario.protocol) << " (" << system.design.rows() << " rows)\n";
        out << std::left << std::setw(12) << "parameter" << std::setw(20) << "truth" << std::setw(20) << "two-step"
            << std::setw(20) << "joint" << "rcrlb\n";
        const auto line = [&](const std::string& name, double truth, std::optional<double> a, std::optional<double> b,
                              std::optional<double> c) {
            out << std::left << std::setw(12) << name << std::setw(20) << cell(truth) << std::setw(20)
                << (a ? cell(*a) : "-") << std::setw(20) << (b ? cell(*b) : "-") << (c ? cell(*c) : "-") << '\n';
        };
        for (std::size_t i = 0; i < M; ++i)
        {
            const auto idx = static_cast<Eigen::Index>(i);
            line("skew[" + std::to_string(i) + "]", scenario.clocks[i].skew,
                 two_step ? std::optional(two_step->sync.skew(idx)) : std::nullopt,
                 joint ? std::optional(joint->skew(idx)) : std::nullopt,
                 bound ? std::optional(bound->per_parameter(idx)) : std::nullopt);
        }
        for (std::size_t i = 0; i < M; ++i)
        {
            const auto idx = static_cast<Eigen::Index>(i);
            line("offset[" + std::to_string(i) + "]", scenario.clocks[i].offset,
                 two_step ? std::optional(two_step->sync.offset(idx)) : std::nullopt,
                 joint ? std::optional(joint->offset(idx)) : std::nullopt,
                 bound ? std::optional(bound->per_parameter(static_cast<Eigen::Index>(M) + idx)) : std::nullopt);
        }
        for (std::size_t d = 0; d < l; ++d)
        {
            const auto idx = static_cast<Eigen::Index>(d);
            line("x0[" + std::to_string(d) + "]", scenario.geometry.sensor()(idx),
                 two_step ? std::optional(two_step->position.position()(idx)) : std::nullopt,
                 joint ? std::optional(joint->position()(idx)) : std::nullopt,
                 bound ? std::optional(bound->per_parameter(static_cast<Eigen::Index>(2 * M) + idx)) : std::nullopt);
        }
        const Eigen::VectorXd ranges = scenario.geometry.sensor_ranges();
        for (std::size_t j = 1; j <= M; ++j)
        {
            const auto idx = static_cast<Eigen::Index>(j - 1);
            line("d0[" + std::to_string(j) + "]", ranges(idx),
                 two_step ? std::optional(two_step->sync.ranges(idx)) : std::nullopt, std::nullopt, std::nullopt);
        }
        if (bound)
            out << "rcrlb position=" << cell(bound->position) << " skew=" << cell(bound->skew)
                << " offset=" << cell(bound->offset) << '\n';
    }
    return status;
}

int do_rank_check(const ExperimentConfig& config, std::ostream& out)
{
    NetworkScenario scenario = generate_scenario(config, 0);
    out << "# syncloc rank-check of the Hadamard-squared model\n";
    echo_config(out, config);
    for (Protocol protocol : config.protocols)
    {
        scenario.protocol = protocol;
        const HadamardRankReport report = hadamard_rank_check(build_measurement_system(scenario));
        out << "protocol=" << to_string(protocol) << " rows=" << report.rows << " columns=" << report.columns
            << " rank=" << report.rank << " left_invertible=" << (report.left_invertible() ? "yes" : "no") << '\n';
    }
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Joint localization and clock synchronization simulator", "syncloc"};
    app.require_subcommand(1);
    Invocation inv;

    auto* run_cmd = app.add_subcommand("run", "Monte Carlo experiment; writes the RMSE/RCRLB table as CSV");
    auto* diag_cmd = app.add_subcommand("diagnose", "Single scenario: estimates versus truth and per-parameter RCRLB");
    auto* rank_cmd = app.add_subcommand("rank-check", "Numerical rank of the Hadamard-squared model");

    for (auto* cmd : {run_cmd, diag_cmd, rank_cmd})
    {
        cmd->add_option("--config", inv.config_path, "JSON experiment configuration")->required();
        cmd->add_option("--set", inv.overrides, "Override a config key (key=value), repeatable");
        cmd->add_flag("-v,--verbose", inv.verbosity, "Progress on stderr");
    }
    run_cmd->add_option("--out", inv.output_path, "CSV output path (default: stdout)");
    run_cmd->add_option("--jobs", inv.jobs, "Worker threads (0 = all cores)")->default_val(1);
    diag_cmd->add_option("--sigma", inv.sigma, "Noise standard deviation in seconds")->required();
    diag_cmd->add_option("--seed", inv.seed, "Master seed of the scenario")->required();
    diag_cmd->add_option("--dump-system", inv.dump_path, "Write the measurement systems as CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kSuccess;
    }
    catch (const CLI::ParseError& e)
    {
        err << "syncloc: " << e.what() << '\n';
        return kConfigError;
    }

    ExperimentConfig config;
    try
    {
        config = parse_config(inv.config_path, inv.overrides);
    }
    catch (const ConfigError& e)
    {
        err << "syncloc: config error: " << e.what() << '\n';
        return kConfigError;
    }

    try
    {
        if (run_cmd->parsed())
            return do_run(inv, config, out, err);
        if (diag_cmd->parsed())
            return do_diagnose(inv, config, out, err);
        return do_rank_check(config, out);
    }
    catch (const ConfigError& e)
    {
        err << "syncloc: config error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const std::exception& e)
    {
        err << "syncloc: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

} // namespace syncloc::cli
