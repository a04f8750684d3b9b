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

#include <Eigen/Core>

#include <cstddef>

namespace syncloc
{

/// Derivative of the residual A theta(psibar) - t with respect to
/// psibar = [skew (M); offset (M); x0 (l)].
struct Jacobian
{
    Eigen::MatrixXd matrix;
    std::size_t anchors = 0;
    std::size_t dimension = 0;

    std::size_t parameter_count() const noexcept { return 2 * anchors + dimension; }
};

/// `system` must be the noiseless system of `truth`. Throws GeometryError if the
/// sensor coincides with an anchor.
Jacobian jacobian(const MeasurementSystem& system, const NetworkScenario& truth);

/// Unit-direction matrix D (M x l): row i is (x0 - x_i) / ||x0 - x_i||.
Eigen::MatrixXd range_derivative(const Geometry& geometry);

struct CrlbReport
{
    Eigen::MatrixXd fisher;
    Eigen::VectorXd per_parameter; // sqrt(diag(F^-1)), psibar order
    double position = 0.0;         // sqrt(sum of position variances)
    double skew = 0.0;             // sqrt(mean skew variance)
    double offset = 0.0;           // sqrt(mean offset variance)
};

/// F = J^T J / sigma^2. Throws InvalidInput for sigma <= 0 and
/// UnidentifiableConfiguration when F is not positive definite.
CrlbReport fisher_and_rcrlb(const Jacobian& jac, double sigma);

} // namespace syncloc
