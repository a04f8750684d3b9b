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

#include "syncloc/clock.hpp"
#include "syncloc/geometry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace syncloc
{

enum class Protocol
{
    TwoWay,
    Atpl,
};

std::string_view to_string(Protocol protocol);
/// Accepts "two-way" and "atpl"; throws InvalidInput otherwise.
Protocol parse_protocol(std::string_view name);

enum class LinkKind
{
    Active,
    Passive,
};

/// Ground truth for one simulated exchange.
struct NetworkScenario
{
    Geometry geometry;
    ClockParams clocks;
    double wave_speed = 300.0;         // m/s
    double observation_window = 100.0; // s
    std::size_t timestamps = 10;       // K, per sensor-anchor pair
    Protocol protocol = Protocol::TwoWay;
    double noise_sigma = 0.0; // s
    std::uint64_t rng_seed = 0;

    std::size_t anchors() const noexcept { return geometry.anchor_count(); }

    /// Throws InvalidInput when K < 3, wave_speed <= 0, window <= 0, sigma < 0
    /// or the clock table does not cover every node.
    void validate() const;
};

/// The schedule depends only on these.
struct ScheduleParams
{
    std::size_t anchors = 0;
    std::size_t timestamps = 0;
    double observation_window = 0.0;
};

struct PlannedTransmission
{
    std::size_t tx_node = 0;
    std::size_t rx_node = 0; // addressed receiver
    std::size_t round = 0;   // k, 1-based
    double departure = 0.0;  // reference time
    std::vector<std::size_t> listeners; // passive receivers (ATPL only)
};

/// Pair-major (anchor j, then k) plan: message k to/from anchor j departs at
/// (k-1) T/K + (j-1) T/(K M); odd k is sensor -> anchor, even k the reverse.
std::vector<PlannedTransmission> schedule_two_way(const ScheduleParams& params);
std::vector<PlannedTransmission> schedule_two_way(const NetworkScenario& scenario);

/// Same departures as the two-way plan, every message broadcast. A sensor
/// broadcast is heard by every anchor; an anchor broadcast by the sensor and
/// all other anchors.
std::vector<PlannedTransmission> schedule_atpl(const ScheduleParams& params);
std::vector<PlannedTransmission> schedule_atpl(const NetworkScenario& scenario);

std::vector<PlannedTransmission> schedule_for(const NetworkScenario& scenario);

/// One recorded reception. Stamps are in the local clock of the respective node.
struct LinkRecord
{
    std::size_t tx_node = 0;
    std::size_t rx_node = 0;
    double tx_stamp = 0.0;
    double rx_stamp = 0.0;
    int direction = 1; // +1 iff the sensor transmits; +1 for anchor-anchor rows
    LinkKind kind = LinkKind::Active;
};

/// Receptions for a plan: active rows pair-major, then passive rows in plan
/// order. Reception stamps carry receiver-clock-scaled Gaussian noise so the
/// equation-domain error is N(0, sigma^2); departure stamps are exact.
std::vector<LinkRecord> simulate_timestamps(const NetworkScenario& scenario,
                                            const std::vector<PlannedTransmission>& plan);

/// A theta = t + n with theta = [alpha_0, beta_0, ..., alpha_{M-1}, beta_{M-1}, tau_01, ..., tau_0M].
struct MeasurementSystem
{
    Eigen::MatrixXd design;
    Eigen::VectorXd rhs;
    std::vector<LinkRecord> rows;
    std::size_t anchors = 0;

    std::size_t unknown_count() const noexcept { return 3 * anchors; }
    std::size_t alpha_column(std::size_t node) const noexcept { return 2 * node; }
    std::size_t beta_column(std::size_t node) const noexcept { return 2 * node + 1; }
    std::size_t tof_column(std::size_t anchor) const noexcept { return 2 * anchors + anchor - 1; }
};

/// Builds one row per record. Sensor-anchor rows read
///   alpha_0 T_0 + beta_0 - alpha_j T_j - beta_j + e tau_0j = n
/// with T_0, T_j the sensor's and anchor's stamps. Anchor-anchor rows read
///   alpha_a T_tx + beta_a - alpha_b T_rx - beta_b = -tau_ab + n
/// with tau_ab known from the geometry. Reference-clock terms move to the rhs.
MeasurementSystem assemble_system(const std::vector<LinkRecord>& records, const Geometry& geometry,
                                  double wave_speed);

/// simulate + assemble for the scenario's own protocol.
MeasurementSystem build_measurement_system(const NetworkScenario& scenario);

/// theta for the scenario's true clocks and ranges.
Eigen::VectorXd true_theta(const NetworkScenario& scenario);

/// Debug dump: metadata columns, the dense design row, and the rhs entry.
void write_system_csv(std::ostream& out, const MeasurementSystem& system, std::string_view label);

} // namespace syncloc
