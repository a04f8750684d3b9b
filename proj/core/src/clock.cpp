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

#include "syncloc/clock.hpp"

#include "syncloc/errors.hpp"

#include <cmath>
#include <string>

namespace syncloc
{

SyncParams NodeClock::sync() const { return skew_offset_to_sync(skew, offset); }

SquaredSync NodeClock::squared() const
{
    const SyncParams s = sync();
    return {s.alpha * s.alpha, s.alpha * s.beta};
}

double local_to_reference(double t_local, const NodeClock& clock)
{
    const SyncParams s = clock.sync();
    return s.alpha * t_local + s.beta;
}

double reference_to_local(double t_ref, const NodeClock& clock) { return clock.skew * t_ref + clock.offset; }

SyncParams skew_offset_to_sync(double skew, double offset)
{
    if (!(skew > 0.0))
        throw DomainError("clock skew must be positive, got " + std::to_string(skew));
    return {1.0 / skew, -offset / skew};
}

NodeClock sync_to_skew_offset(double alpha, double beta)
{
    if (!(alpha > 0.0))
        throw DomainError("synchronization alpha must be positive, got " + std::to_string(alpha));
    return {1.0 / alpha, -beta / alpha};
}

NodeClock squared_params_to_clock(double gamma, double delta)
{
    if (!(gamma > 0.0))
        throw RecoveryFailure("gamma must be positive to recover the skew, got " + std::to_string(gamma));
    return {1.0 / std::sqrt(gamma), -delta / gamma};
}

ClockParams::ClockParams(std::vector<NodeClock> unknown) : nodes_(std::move(unknown))
{
    for (std::size_t i = 0; i < nodes_.size(); ++i)
    {
        if (!(nodes_[i].skew > 0.0) || !std::isfinite(nodes_[i].skew) || !std::isfinite(nodes_[i].offset))
            throw DomainError("node " + std::to_string(i) + " has an invalid clock");
    }
    nodes_.push_back(NodeClock{1.0, 0.0});
}

ClockParams ClockParams::identity(std::size_t anchors) { return ClockParams(std::vector<NodeClock>(anchors)); }

} // namespace syncloc
