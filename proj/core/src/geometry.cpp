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

#include "syncloc/geometry.hpp"

#include "syncloc/errors.hpp"

#include <string>

namespace syncloc
{

double pairwise_distance(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b)
{
    if (a.size() != b.size())
        throw InvalidInput("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (a.size() != 2 && a.size() != 3)
        throw InvalidInput("coordinates must be 2-D or 3-D, got " + std::to_string(a.size()));
    return (a - b).norm();
}

Geometry::Geometry(Eigen::MatrixXd anchors, Eigen::VectorXd sensor) : anchors_(std::move(anchors)), sensor_(std::move(sensor))
{
    const auto l = anchors_.rows();
    if (l != 2 && l != 3)
        throw InvalidInput("geometry dimension must be 2 or 3, got " + std::to_string(l));
    if (sensor_.size() != l)
        throw InvalidInput("sensor dimension does not match anchors");
    if (anchors_.cols() < l + 1)
        throw InvalidInput("need at least l+1 = " + std::to_string(l + 1) + " anchors, got " +
                           std::to_string(anchors_.cols()));
    if (!anchors_.allFinite() || !sensor_.allFinite())
        throw InvalidInput("coordinates must be finite");
    for (Eigen::Index i = 0; i < anchors_.cols(); ++i)
        for (Eigen::Index j = i + 1; j < anchors_.cols(); ++j)
            if (!((anchors_.col(i) - anchors_.col(j)).norm() > 0.0))
                throw InvalidInput("anchors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
}

Eigen::VectorXd Geometry::position(std::size_t node) const
{
    if (node == 0)
        return sensor_;
    if (node > anchor_count())
        throw InvalidInput("node index " + std::to_string(node) + " out of range");
    return anchors_.col(static_cast<Eigen::Index>(node - 1));
}

double Geometry::distance(std::size_t a, std::size_t b) const { return pairwise_distance(position(a), position(b)); }

Eigen::VectorXd Geometry::sensor_ranges() const
{
    Eigen::VectorXd d(anchors_.cols());
    for (Eigen::Index j = 0; j < anchors_.cols(); ++j)
        d(j) = (anchors_.col(j) - sensor_).norm();
    return d;
}

} // namespace syncloc
