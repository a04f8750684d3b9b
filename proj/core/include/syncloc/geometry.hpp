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

#include <Eigen/Core>

#include <cstddef>

namespace syncloc
{

/// Euclidean distance. Both points must share dimension 2 or 3.
double pairwise_distance(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b);

/// Node coordinates in meters. Anchors are the columns of an l x M matrix,
/// anchor j (1-based node index) being column j-1. The sensor is node 0.
class Geometry
{
  public:
    Geometry() = default;

    /// Validates l in {2,3}, M >= l+1 and distinct anchors.
    Geometry(Eigen::MatrixXd anchors, Eigen::VectorXd sensor);

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(anchors_.rows()); }
    std::size_t anchor_count() const noexcept { return static_cast<std::size_t>(anchors_.cols()); }

    const Eigen::MatrixXd& anchors() const noexcept { return anchors_; }
    const Eigen::VectorXd& sensor() const noexcept { return sensor_; }

    Eigen::VectorXd position(std::size_t node) const;
    double distance(std::size_t a, std::size_t b) const;

    /// d0: distances from the sensor to anchors 1..M.
    Eigen::VectorXd sensor_ranges() const;

  private:
    Eigen::MatrixXd anchors_;
    Eigen::VectorXd sensor_;
};

} // namespace syncloc
