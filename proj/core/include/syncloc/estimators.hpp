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
#include "syncloc/protocol.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace syncloc
{

/// Step one of the two-step estimator: clocks and sensor-anchor times of flight.
struct SyncRangingEstimate
{
    Eigen::VectorXd alpha; // nodes 0..M-1
    Eigen::VectorXd beta;
    Eigen::VectorXd tof; // anchors 1..M
    Eigen::VectorXd skew;
    Eigen::VectorXd offset;
    Eigen::VectorXd ranges; // wave_speed * tof

    std::size_t anchors() const noexcept { return static_cast<std::size_t>(tof.size()); }
};

/// Range-squared localization model d0 .* d0 = Xbar p + q with
/// Xbar = [-2 X^T, 1] and p = [x0; ||x0||^2].
struct LocalizationInput
{
    Eigen::MatrixXd anchors; // l x M
    Eigen::VectorXd norms_squared;
    Eigen::MatrixXd lifted; // M x (l+1)

    explicit LocalizationInput(const Geometry& geometry);
    explicit LocalizationInput(Eigen::MatrixXd anchor_coords);

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(anchors.rows()); }
    std::size_t anchor_count() const noexcept { return static_cast<std::size_t>(anchors.cols()); }
};

struct PositionEstimate
{
    Eigen::VectorXd lifted; // [x0; ||x0||^2]

    Eigen::VectorXd position() const { return lifted.head(lifted.size() - 1); }
    double norm_squared() const { return lifted(lifted.size() - 1); }
};

/// Throws RankDeficiency when the design is not of full column rank and
/// DomainError when an estimated alpha is non-positive.
SyncRangingEstimate estimate_sync_ranging(const MeasurementSystem& system, double wave_speed);

/// Throws GeometryError when the anchors cannot support localization.
PositionEstimate localize_from_ranges(const Eigen::Ref<const Eigen::VectorXd>& ranges, const LocalizationInput& loc);

struct TwoStepEstimate
{
    SyncRangingEstimate sync;
    PositionEstimate position;
};

TwoStepEstimate estimate_two_step(const MeasurementSystem& system, const LocalizationInput& loc, double wave_speed);

} // namespace syncloc
