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

#pragma once

#include "syncloc/protocol.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace syncloc
{

enum class Estimator
{
    TwoStep,
    Joint,
};

std::string_view to_string(Estimator estimator);
/// Accepts "two-step" and "joint"; throws InvalidInput otherwise.
Estimator parse_estimator(std::string_view name);

/// Monte Carlo experiment. Defaults reproduce the reference setup: five
/// anchors in the plane, 100 m deployment, +-100 ppm skews, +-1 s offsets,
/// a 100 s window, K = 10, sound-speed propagation, 1000 trials.
struct ExperimentConfig
{
    std::size_t anchors = 5;
    std::size_t dimension = 2;
    double deploy_range = 100.0;      // m
    double skew_ppm = 100.0;          // skews uniform in 1 +- skew_ppm * 1e-6
    double offset_range = 1.0;        // offsets uniform in [-offset_range, offset_range] s
    double observation_window = 100.0; // s
    std::size_t timestamps = 10;
    double wave_speed = 300.0;
    std::vector<double> sigmas{1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<Protocol> protocols{Protocol::TwoWay, Protocol::Atpl};
    std::vector<Estimator> estimators{Estimator::TwoStep, Estimator::Joint};
    std::size_t trials = 1000;
    std::uint64_t master_seed = 20140504;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct ResultRow
{
    double sigma = 0.0;
    Protocol protocol = Protocol::TwoWay;
    Estimator estimator = Estimator::TwoStep;
    double rmse_position = 0.0;
    double rmse_skew = 0.0;
    double rmse_offset = 0.0;
    double rcrlb_position = 0.0;
    double rcrlb_skew = 0.0;
    double rcrlb_offset = 0.0;
    std::size_t trials_used = 0;
    std::size_t trials_failed = 0;
};

/// Random deployment and clocks for one trial, seeded from (master_seed,
/// trial_index). Degenerate anchor layouts are redrawn up to 10 times.
/// Returned with the first configured protocol and zero noise.
NetworkScenario generate_scenario(const ExperimentConfig& config, std::size_t trial_index);

/// Rows ordered by sigma, protocol, estimator as listed in the config. All
/// combinations of one trial share the scenario and the unit noise draws.
/// `jobs` threads split the trials; the reduction runs in trial order.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

inline constexpr std::string_view kResultsHeader =
    "sigma,protocol,estimator,rmse_position,rmse_skew,rmse_offset,rcrlb_position,rcrlb_skew,rcrlb_offset,"
    "trials_used,trials_failed";

/// `# key=value` lines for the resolved config, the header, and one line per row.
void write_results_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ResultRow>& rows);

} // namespace syncloc
