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

#include "syncloc/protocol.hpp"

#include "syncloc/errors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

namespace syncloc
{

std::string_view to_string(Protocol protocol)
{
    switch (protocol)
    {
    case Protocol::TwoWay:
        return "two-way";
    case Protocol::Atpl:
        return "atpl";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name)
{
    if (name == "two-way")
        return Protocol::TwoWay;
    if (name == "atpl")
        return Protocol::Atpl;
    throw InvalidInput("unknown protocol '" + std::string(name) + "' (expected two-way or atpl)");
}

void NetworkScenario::validate() const
{
    if (timestamps < 3)
        throw InvalidInput("K >= 3 time-stamps per pair required, got " + std::to_string(timestamps));
    if (!(wave_speed > 0.0))
        throw InvalidInput("wave speed must be positive");
    if (!(observation_window > 0.0))
        throw InvalidInput("observation window must be positive");
    if (!(noise_sigma >= 0.0))
        throw InvalidInput("noise sigma must be non-negative");
    if (clocks.node_count() != geometry.anchor_count() + 1)
        throw InvalidInput("clock table covers " + std::to_string(clocks.node_count()) + " nodes, geometry has " +
                           std::to_string(geometry.anchor_count() + 1));
}

namespace
{

ScheduleParams schedule_params(const NetworkScenario& scenario)
{
    scenario.validate();
    return {scenario.anchors(), scenario.timestamps, scenario.observation_window};
}

void check_schedule(const ScheduleParams& params)
{
    if (params.timestamps < 3)
        throw InvalidInput("K >= 3 time-stamps per pair required, got " + std::to_string(params.timestamps));
    if (params.anchors < 1)
        throw InvalidInput("at least one anchor required");
    if (!(params.observation_window > 0.0))
        throw InvalidInput("observation window must be positive");
}

} // namespace

std::vector<PlannedTransmission> schedule_two_way(const ScheduleParams& params)
{
    check_schedule(params);
    const double M = static_cast<double>(params.anchors);
    const double K = static_cast<double>(params.timestamps);
    const double T = params.observation_window;

    std::vector<PlannedTransmission> plan;
    plan.reserve(params.anchors * params.timestamps);
    for (std::size_t j = 1; j <= params.anchors; ++j)
    {
        for (std::size_t k = 1; k <= params.timestamps; ++k)
        {
            PlannedTransmission p;
            p.round = k;
            p.departure = static_cast<double>(k - 1) * T / K + static_cast<double>(j - 1) * T / (K * M);
            const bool sensor_sends = (k % 2) == 1;
            p.tx_node = sensor_sends ? 0 : j;
            p.rx_node = sensor_sends ? j : 0;
            plan.push_back(std::move(p));
        }
    }
    return plan;
}

std::vector<PlannedTransmission> schedule_atpl(const ScheduleParams& params)
{
    auto plan = schedule_two_way(params);
    for (auto& p : plan)
    {
        const std::size_t addressed_anchor = p.tx_node == 0 ? p.rx_node : p.tx_node;
        for (std::size_t m = 1; m <= params.anchors; ++m)
            if (m != addressed_anchor)
                p.listeners.push_back(m);
    }
    return plan;
}

std::vector<PlannedTransmission> schedule_two_way(const NetworkScenario& scenario)
{
    return schedule_two_way(schedule_params(scenario));
}

std::vector<PlannedTransmission> schedule_atpl(const NetworkScenario& scenario)
{
    return schedule_atpl(schedule_params(scenario));
}

std::vector<PlannedTransmission> schedule_for(const NetworkScenario& scenario)
{
    return scenario.protocol == Protocol::Atpl ? schedule_atpl(scenario) : schedule_two_way(scenario);
}

std::vector<LinkRecord> simulate_timestamps(const NetworkScenario& scenario,
                                            const std::vector<PlannedTransmission>& plan)
{
    scenario.validate();
    std::mt19937_64 rng(scenario.rng_seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    const auto reception = [&](std::size_t tx, std::size_t rx, double departure, LinkKind kind) {
        const NodeClock& tx_clock = scenario.clocks[tx];
        const NodeClock& rx_clock = scenario.clocks[rx];
        const double arrival = departure + scenario.geometry.distance(tx, rx) / scenario.wave_speed;
        const double noise = scenario.noise_sigma * unit_normal(rng);

        LinkRecord r;
        r.tx_node = tx;
        r.rx_node = rx;
        r.tx_stamp = reference_to_local(departure, tx_clock);
        r.rx_stamp = reference_to_local(arrival, rx_clock) + rx_clock.skew * noise;
        r.direction = rx == 0 ? -1 : 1;
        r.kind = kind;
        return r;
    };

    std::vector<LinkRecord> records;
    records.reserve(plan.size());
    for (const auto& p : plan)
        records.push_back(reception(p.tx_node, p.rx_node, p.departure, LinkKind::Active));
    for (const auto& p : plan)
        for (std::size_t listener : p.listeners)
            records.push_back(reception(p.tx_node, listener, p.departure, LinkKind::Passive));
    return records;
}

MeasurementSystem assemble_system(const std::vector<LinkRecord>& records, const Geometry& geometry,
                                  double wave_speed)
{
    if (records.empty())
        throw InvalidInput("no link records to assemble");
    if (!(wave_speed > 0.0))
        throw InvalidInput("wave speed must be positive");

    MeasurementSystem sys;
    sys.anchors = geometry.anchor_count();
    const std::size_t M = sys.anchors;
    const std::size_t reference = M;
    const auto rows = static_cast<Eigen::Index>(records.size());
    sys.design = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(3 * M));
    sys.rhs = Eigen::VectorXd::Zero(rows);
    sys.rows = records;

    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const LinkRecord& rec = records[static_cast<std::size_t>(r)];
        if (rec.tx_node > M || rec.rx_node > M)
            throw InvalidInput("record " + std::to_string(r) + " references a node outside 0.." + std::to_string(M));
        if (rec.tx_node == rec.rx_node)
            throw InvalidInput("record " + std::to_string(r) + " has identical transmitter and receiver");

        // sign * (alpha_node * stamp + beta_node); the reference clock is (1, 0) and goes to the rhs.
        const auto add_clock = [&](std::size_t node, double stamp, double sign) {
            if (node == reference)
            {
                sys.rhs(r) -= sign * stamp;
                return;
            }
            sys.design(r, static_cast<Eigen::Index>(sys.alpha_column(node))) += sign * stamp;
            sys.design(r, static_cast<Eigen::Index>(sys.beta_column(node))) += sign;
        };

        if (rec.tx_node == 0 || rec.rx_node == 0)
        {
            const bool sensor_sends = rec.tx_node == 0;
            const std::size_t anchor = sensor_sends ? rec.rx_node : rec.tx_node;
            const int e = sensor_sends ? 1 : -1;
            if (rec.direction != e)
                throw InvalidInput("record " + std::to_string(r) + " has a direction inconsistent with its nodes");
            add_clock(0, sensor_sends ? rec.tx_stamp : rec.rx_stamp, 1.0);
            add_clock(anchor, sensor_sends ? rec.rx_stamp : rec.tx_stamp, -1.0);
            sys.design(r, static_cast<Eigen::Index>(sys.tof_column(anchor))) = e;
        }
        else
        {
            add_clock(rec.tx_node, rec.tx_stamp, 1.0);
            add_clock(rec.rx_node, rec.rx_stamp, -1.0);
            sys.rhs(r) -= geometry.distance(rec.tx_node, rec.rx_node) / wave_speed;
        }
    }
    return sys;
}

MeasurementSystem build_measurement_system(const NetworkScenario& scenario)
{
    return assemble_system(simulate_timestamps(scenario, schedule_for(scenario)), scenario.geometry,
                           scenario.wave_speed);
}

Eigen::VectorXd true_theta(const NetworkScenario& scenario)
{
    const std::size_t M = scenario.anchors();
    Eigen::VectorXd theta(3 * M);
    for (std::size_t i = 0; i < M; ++i)
    {
        const SyncParams s = scenario.clocks[i].sync();
        theta(2 * i) = s.alpha;
        theta(2 * i + 1) = s.beta;
    }
    theta.tail(M) = scenario.geometry.sensor_ranges() / scenario.wave_speed;
    return theta;
}

void write_system_csv(std::ostream& out, const MeasurementSystem& system, std::string_view label)
{
    const auto cols = system.design.cols();
    out << "label,row,tx_node,rx_node,tx_stamp,rx_stamp,direction,kind";
    for (Eigen::Index c = 0; c < cols; ++c)
        out << ",a" << c;
    out << ",t\n";

    const auto old_precision = out.precision(17);
    for (Eigen::Index r = 0; r < system.design.rows(); ++r)
    {
        const LinkRecord& rec = system.rows[static_cast<std::size_t>(r)];
        out << label << ',' << r << ',' << rec.tx_node << ',' << rec.rx_node << ',' << rec.tx_stamp << ','
            << rec.rx_stamp << ',' << rec.direction << ',' << (rec.kind == LinkKind::Active ? "active" : "passive");
        for (Eigen::Index c = 0; c < cols; ++c)
            out << ',' << system.design(r, c);
        out << ',' << system.rhs(r) << '\n';
    }
    out.precision(old_precision);
}

} // namespace syncloc
