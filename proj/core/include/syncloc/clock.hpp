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

#include <cstddef>
#include <vector>

namespace syncloc
{

// Synchronization parameters: reference time t = alpha * t_local + beta.
struct SyncParams
{
    double alpha = 1.0;
    double beta = 0.0;
};

// Squared parametrization used by the joint estimator: gamma = alpha^2, delta = alpha * beta.
struct SquaredSync
{
    double gamma = 1.0;
    double delta = 0.0;
};

// First-order affine clock: t_local = skew * t + offset.
struct NodeClock
{
    double skew = 1.0;
    double offset = 0.0;

    SyncParams sync() const;
    SquaredSync squared() const;
};

double local_to_reference(double t_local, const NodeClock& clock);
double reference_to_local(double t_ref, const NodeClock& clock);

/// Throws DomainError for skew <= 0.
SyncParams skew_offset_to_sync(double skew, double offset);
/// Throws DomainError for alpha <= 0.
NodeClock sync_to_skew_offset(double alpha, double beta);
/// Throws RecoveryFailure for gamma <= 0 (an estimate too noisy to invert).
NodeClock squared_params_to_clock(double gamma, double delta);

/// Clocks for nodes 0..M. Node 0 is the sensor, nodes 1..M the anchors and
/// anchor M is the time reference with (skew, offset) = (1, 0).
class ClockParams
{
  public:
    ClockParams() = default;

    /// `unknown` holds the clocks of nodes 0..M-1; the reference is appended.
    explicit ClockParams(std::vector<NodeClock> unknown);

    static ClockParams identity(std::size_t anchors);

    std::size_t anchors() const noexcept { return nodes_.size() - 1; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t reference_node() const noexcept { return nodes_.size() - 1; }

    const NodeClock& operator[](std::size_t node) const { return nodes_.at(node); }
    const std::vector<NodeClock>& nodes() const noexcept { return nodes_; }

  private:
    std::vector<NodeClock> nodes_{NodeClock{}};
};

} // namespace syncloc
