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

#include "syncloc/harness.hpp"

#include "syncloc/config.hpp"
#include "syncloc/crlb.hpp"
#include "syncloc/errors.hpp"
#include "syncloc/estimators.hpp"
#include "syncloc/joint.hpp"
#include "syncloc/least_squares.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <thread>

namespace syncloc
{

std::string_view to_string(Estimator estimator)
{
    switch (estimator)
    {
    case Estimator::TwoStep:
        return "two-step";
    case Estimator::Joint:
        return "joint";
    }
    return "unknown";
}

Estimator parse_estimator(std::string_view name)
{
    if (name == "two-step")
        return Estimator::TwoStep;
    if (name == "joint")
        return Estimator::Joint;
    throw InvalidInput("unknown estimator '" + std::string(name) + "' (expected two-step or joint)");
}

void ExperimentConfig::validate() const
{
    if (dimension != 2 && dimension != 3)
        throw ConfigError("dimension", "must be 2 or 3, got " + std::to_string(dimension));
    if (anchors < dimension + 1)
        throw ConfigError("anchors", "M >= l+1 = " + std::to_string(dimension + 1) + " required, got " +
                                         std::to_string(anchors));
    if (!(deploy_range > 0.0) || !std::isfinite(deploy_range))
        throw ConfigError("deploy_range", "must be positive");
    if (!(skew_ppm >= 0.0) || !(skew_ppm < 1e6))
        throw ConfigError("skew_ppm", "must lie in [0, 1e6)");
    if (!(offset_range >= 0.0) || !std::isfinite(offset_range))
        throw ConfigError("offset_range", "must be non-negative");
    if (!(observation_window > 0.0) || !std::isfinite(observation_window))
        throw ConfigError("observation_window", "must be positive");
    if (timestamps < 3)
        throw ConfigError("timestamps", "K >= 3 required, got " + std::to_string(timestamps));
    if (!(wave_speed > 0.0) || !std::isfinite(wave_speed))
        throw ConfigError("wave_speed", "must be positive");
    if (sigmas.empty())
        throw ConfigError("sigmas", "at least one noise level required");
    for (double s : sigmas)
        if (!(s > 0.0) || !std::isfinite(s))
            throw ConfigError("sigmas", "noise levels must be positive");
    if (std::set<double>(sigmas.begin(), sigmas.end()).size() != sigmas.size())
        throw ConfigError("sigmas", "noise levels must be distinct");
    if (protocols.empty() || std::set<Protocol>(protocols.begin(), protocols.end()).size() != protocols.size())
        throw ConfigError("protocols", "must be a non-empty list without repeats");
    if (estimators.empty() ||
        std::set<Estimator>(estimators.begin(), estimators.end()).size() != estimators.size())
        throw ConfigError("estimators", "must be a non-empty list without repeats");
    if (trials < 1)
        throw ConfigError("trials", "at least one trial required");
}

namespace
{

enum class Stream : std::uint32_t
{
    Deployment = 0,
    Noise = 1,
};

std::uint64_t derive_seed(std::uint64_t master, std::size_t trial, std::size_t attempt, Stream stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(stream)};
    std::uint32_t words[2];
    seq.generate(std::begin(words), std::end(words));
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

bool usable_geometry(const Geometry& g)
{
    if (numerical_rank(LocalizationInput(g).lifted) < g.dimension() + 1)
        return false;
    return (g.sensor_ranges().array() > 0.0).all();
}

} // namespace

NetworkScenario generate_scenario(const ExperimentConfig& config, std::size_t trial_index)
{
    config.validate();
    const auto l = static_cast<Eigen::Index>(config.dimension);
    const auto M = static_cast<Eigen::Index>(config.anchors);

    for (std::size_t attempt = 0; attempt < 10; ++attempt)
    {
        std::mt19937_64 rng(derive_seed(config.master_seed, trial_index, attempt, Stream::Deployment));
        std::uniform_real_distribution<double> coord(0.0, config.deploy_range);
        std::uniform_real_distribution<double> skew(1.0 - config.skew_ppm * 1e-6, 1.0 + config.skew_ppm * 1e-6);
        std::uniform_real_distribution<double> offset(-config.offset_range, config.offset_range);

        Eigen::VectorXd sensor(l);
        for (Eigen::Index d = 0; d < l; ++d)
            sensor(d) = coord(rng);
        Eigen::MatrixXd anchor_coords(l, M);
        for (Eigen::Index j = 0; j < M; ++j)
            for (Eigen::Index d = 0; d < l; ++d)
                anchor_coords(d, j) = coord(rng);

        std::vector<NodeClock> clocks(config.anchors);
        for (auto& c : clocks)
        {
            c.skew = skew(rng);
            c.offset = offset(rng);
        }

        try
        {
            Geometry geometry(std::move(anchor_coords), std::move(sensor));
            if (!usable_geometry(geometry))
                continue;

            NetworkScenario s;
            s.geometry = std::move(geometry);
            s.clocks = ClockParams(std::move(clocks));
            s.wave_speed = config.wave_speed;
            s.observation_window = config.observation_window;
            s.timestamps = config.timestamps;
            s.protocol = config.protocols.front();
            s.noise_sigma = 0.0;
            s.rng_seed = derive_seed(config.master_seed, trial_index, 0, Stream::Noise);
            return s;
        }
        catch (const InvalidInput&)
        {
            continue;
        }
    }
    throw GeometryError("no usable deployment after 10 draws for trial " + std::to_string(trial_index));
}

namespace
{

struct Outcome
{
    bool ok = false;
    double position_sq = 0.0;
    double skew_sq = 0.0; // summed over the M unknown clocks
    double offset_sq = 0.0;
};

struct TrialResult
{
    std::vector<CrlbReport> unit_bounds; // per protocol, at sigma = 1
    std::vector<Outcome> outcomes;       // sigma-major, then protocol, then estimator
};

TrialResult run_trial(const ExperimentConfig& config, std::size_t trial)
{
    const std::size_t P = config.protocols.size();
    const std::size_t E = config.estimators.size();
    TrialResult result;
    result.unit_bounds.resize(P);
    result.outcomes.resize(config.sigmas.size() * P * E);

    NetworkScenario base;
    try
    {
        base = generate_scenario(config, trial);
    }
    catch (const std::exception&)
    {
        return result;
    }
    const LocalizationInput loc(base.geometry);
    const Eigen::VectorXd x0 = base.geometry.sensor();

    for (std::size_t p = 0; p < P; ++p)
    {
        NetworkScenario scenario = base;
        scenario.protocol = config.protocols[p];
        scenario.noise_sigma = 0.0;
        try
        {
            const MeasurementSystem noiseless = build_measurement_system(scenario);
            result.unit_bounds[p] = fisher_and_rcrlb(jacobian(noiseless, scenario), 1.0);
        }
        catch (const std::exception&)
        {
            continue;
        }

        for (std::size_t s = 0; s < config.sigmas.size(); ++s)
        {
            scenario.noise_sigma = config.sigmas[s];
            const MeasurementSystem system = build_measurement_system(scenario);

            for (std::size_t e = 0; e < E; ++e)
            {
                Outcome& out = result.outcomes[(s * P + p) * E + e];
                Eigen::VectorXd skew, offset, position;
                try
                {
                    if (config.estimators[e] == Estimator::TwoStep)
                    {
                        const TwoStepEstimate est = estimate_two_step(system, loc, scenario.wave_speed);
                        skew = est.sync.skew;
                        offset = est.sync.offset;
                        position = est.position.position();
                    }
                    else
                    {
                        const JointEstimate est = estimate_joint(
                            build_kronecker_system(system, loc, scenario.wave_speed, KroneckerForm::Compressed));
                        if (!est.clocks_recovered())
                            continue;
                        skew = est.skew;
                        offset = est.offset;
                        position = est.position();
                    }
                }
                catch (const std::exception&)
                {
                    continue;
                }

                double skew_sq = 0.0;
                double offset_sq = 0.0;
                for (std::size_t i = 0; i < config.anchors; ++i)
                {
                    const auto idx = static_cast<Eigen::Index>(i);
                    skew_sq += std::pow(skew(idx) - scenario.clocks[i].skew, 2);
                    offset_sq += std::pow(offset(idx) - scenario.clocks[i].offset, 2);
                }
                const double position_sq = (position - x0).squaredNorm();
                if (!std::isfinite(skew_sq) || !std::isfinite(offset_sq) || !std::isfinite(position_sq))
                    continue;
                out.ok = true;
                out.skew_sq = skew_sq;
                out.offset_sq = offset_sq;
                out.position_sq = position_sq;
            }
        }
    }
    return result;
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::size_t jobs)
{
    config.validate();
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, config.trials);

    std::vector<TrialResult> trials(config.trials);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t t = next++; t < config.trials; t = next++)
            trials[t] = run_trial(config, t);
    };
    if (jobs <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }

    const std::size_t P = config.protocols.size();
    const std::size_t E = config.estimators.size();
    const double M = static_cast<double>(config.anchors);
    std::vector<ResultRow> rows;
    for (std::size_t s = 0; s < config.sigmas.size(); ++s)
    {
        const double sigma = config.sigmas[s];
        for (std::size_t p = 0; p < P; ++p)
        {
            for (std::size_t e = 0; e < E; ++e)
            {
                ResultRow row;
                row.sigma = sigma;
                row.protocol = config.protocols[p];
                row.estimator = config.estimators[e];
                double pos = 0.0, skew = 0.0, offset = 0.0;
                double b_pos = 0.0, b_skew = 0.0, b_offset = 0.0;
                for (const TrialResult& t : trials)
                {
                    const Outcome& o = t.outcomes[(s * P + p) * E + e];
                    if (!o.ok)
                    {
                        ++row.trials_failed;
                        continue;
                    }
                    ++row.trials_used;
                    pos += o.position_sq;
                    skew += o.skew_sq;
                    offset += o.offset_sq;
                    const CrlbReport& unit = t.unit_bounds[p];
                    b_pos += sigma * unit.position;
                    b_skew += sigma * unit.skew;
                    b_offset += sigma * unit.offset;
                }
                const double n = static_cast<double>(row.trials_used);
                if (row.trials_used == 0)
                {
                    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
                    row.rmse_position = row.rmse_skew = row.rmse_offset = nan;
                    row.rcrlb_position = row.rcrlb_skew = row.rcrlb_offset = nan;
                }
                else
                {
                    row.rmse_position = std::sqrt(pos / n);
                    row.rmse_skew = std::sqrt(skew / (n * M));
                    row.rmse_offset = std::sqrt(offset / (n * M));
                    row.rcrlb_position = b_pos / n;
                    row.rcrlb_skew = b_skew / n;
                    row.rcrlb_offset = b_offset / n;
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_results_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ResultRow>& rows)
{
    out << "# syncloc monte carlo results\n";
    for (const auto& [key, value] : describe_config(config))
        out << "# " << key << '=' << value << '\n';
    out << kResultsHeader << '\n';

    const auto old_precision = out.precision(9);
    for (const ResultRow& r : rows)
    {
        out << r.sigma << ',' << to_string(r.protocol) << ',' << to_string(r.estimator) << ',' << r.rmse_position
            << ',' << r.rmse_skew << ',' << r.rmse_offset << ',' << r.rcrlb_position << ',' << r.rcrlb_skew << ','
            << r.rcrlb_offset << ',' << r.trials_used << ',' << r.trials_failed << '\n';
    }
    out.precision(old_precision);
}

} // namespace syncloc
