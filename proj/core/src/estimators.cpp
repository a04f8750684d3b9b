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

#include "syncloc/estimators.hpp"

#include "syncloc/errors.hpp"
#include "syncloc/least_squares.hpp"

#include <string>

namespace syncloc
{

LocalizationInput::LocalizationInput(const Geometry& geometry) : LocalizationInput(geometry.anchors()) {}

LocalizationInput::LocalizationInput(Eigen::MatrixXd anchor_coords) : anchors(std::move(anchor_coords))
{
    const auto l = anchors.rows();
    const auto M = anchors.cols();
    norms_squared = anchors.colwise().squaredNorm().transpose();
    lifted.resize(M, l + 1);
    lifted.leftCols(l) = -2.0 * anchors.transpose();
    lifted.col(l).setOnes();
}

SyncRangingEstimate estimate_sync_ranging(const MeasurementSystem& system, double wave_speed)
{
    const Eigen::VectorXd theta = solve_least_squares(system.design, system.rhs);
    const auto M = static_cast<Eigen::Index>(system.anchors);

    SyncRangingEstimate est;
    est.alpha.resize(M);
    est.beta.resize(M);
    est.skew.resize(M);
    est.offset.resize(M);
    for (Eigen::Index i = 0; i < M; ++i)
    {
        est.alpha(i) = theta(2 * i);
        est.beta(i) = theta(2 * i + 1);
        const NodeClock c = sync_to_skew_offset(est.alpha(i), est.beta(i));
        est.skew(i) = c.skew;
        est.offset(i) = c.offset;
    }
    est.tof = theta.tail(M);
    est.ranges = wave_speed * est.tof;
    return est;
}

PositionEstimate localize_from_ranges(const Eigen::Ref<const Eigen::VectorXd>& ranges, const LocalizationInput& loc)
{
    const std::size_t l = loc.dimension();
    const std::size_t M = loc.anchor_count();
    if (static_cast<std::size_t>(ranges.size()) != M)
        throw InvalidInput("expected " + std::to_string(M) + " ranges, got " + std::to_string(ranges.size()));
    if (M < l + 1)
        throw GeometryError("localization needs at least l+1 = " + std::to_string(l + 1) + " anchors");

    const Eigen::VectorXd rhs = ranges.cwiseProduct(ranges) - loc.norms_squared;
    try
    {
        return {solve_least_squares(loc.lifted, rhs)};
    }
    catch (const RankDeficiency& e)
    {
        throw GeometryError(std::string("anchor layout cannot localize the sensor: ") + e.what());
    }
}

TwoStepEstimate estimate_two_step(const MeasurementSystem& system, const LocalizationInput& loc, double wave_speed)
{
    TwoStepEstimate out;
    out.sync = estimate_sync_ranging(system, wave_speed);
    out.position = localize_from_ranges(out.sync.ranges, loc);
    return out;
}

} // namespace syncloc
