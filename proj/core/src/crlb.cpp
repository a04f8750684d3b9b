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

#include "syncloc/crlb.hpp"

#include "syncloc/errors.hpp"
#include "syncloc/least_squares.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace syncloc
{

Eigen::MatrixXd range_derivative(const Geometry& geometry)
{
    const auto M = static_cast<Eigen::Index>(geometry.anchor_count());
    Eigen::MatrixXd D(M, static_cast<Eigen::Index>(geometry.dimension()));
    for (Eigen::Index i = 0; i < M; ++i)
    {
        const Eigen::VectorXd diff = geometry.sensor() - geometry.anchors().col(i);
        const double d = diff.norm();
        if (!(d > 0.0))
            throw GeometryError("sensor coincides with anchor " + std::to_string(i + 1) +
                                "; range derivative undefined");
        D.row(i) = (diff / d).transpose();
    }
    return D;
}

Jacobian jacobian(const MeasurementSystem& system, const NetworkScenario& truth)
{
    const std::size_t M = system.anchors;
    const std::size_t l = truth.geometry.dimension();
    if (truth.anchors() != M)
        throw InvalidInput("scenario and measurement system disagree on the anchor count");

    const Eigen::MatrixXd D = range_derivative(truth.geometry);
    const Eigen::MatrixXd& A = system.design;

    Jacobian jac;
    jac.anchors = M;
    jac.dimension = l;
    jac.matrix = Eigen::MatrixXd::Zero(A.rows(), static_cast<Eigen::Index>(2 * M + l));

    for (std::size_t i = 0; i < M; ++i)
    {
        const NodeClock& c = truth.clocks[i];
        const auto a_col = A.col(static_cast<Eigen::Index>(system.alpha_column(i)));
        const auto b_col = A.col(static_cast<Eigen::Index>(system.beta_column(i)));
        jac.matrix.col(static_cast<Eigen::Index>(i)) = -(a_col - c.offset * b_col) / (c.skew * c.skew);
        jac.matrix.col(static_cast<Eigen::Index>(M + i)) = -b_col / c.skew;
    }

    Eigen::MatrixXd tof_cols(A.rows(), static_cast<Eigen::Index>(M));
    for (std::size_t j = 1; j <= M; ++j)
        tof_cols.col(static_cast<Eigen::Index>(j - 1)) = A.col(static_cast<Eigen::Index>(system.tof_column(j)));
    jac.matrix.rightCols(static_cast<Eigen::Index>(l)) = tof_cols * D / truth.wave_speed;
    return jac;
}

CrlbReport fisher_and_rcrlb(const Jacobian& jac, double sigma)
{
    if (!(sigma > 0.0))
        throw InvalidInput("noise sigma must be positive for the CRLB");
    const auto P = static_cast<Eigen::Index>(jac.parameter_count());
    if (jac.matrix.cols() != P)
        throw InvalidInput("Jacobian column count does not match its layout");
    if (numerical_rank(jac.matrix) < static_cast<std::size_t>(P))
        throw UnidentifiableConfiguration("Fisher information is singular for this configuration");

    CrlbReport report;
    report.fisher = jac.matrix.transpose() * jac.matrix / (sigma * sigma);

    // Invert in the equilibrated basis; F itself spans many orders of magnitude.
    const Eigen::VectorXd scale = report.fisher.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd normalized = scale.asDiagonal() * report.fisher * scale.asDiagonal();
    const Eigen::LLT<Eigen::MatrixXd> llt(normalized);
    if (llt.info() != Eigen::Success)
        throw UnidentifiableConfiguration("Fisher information is not positive definite");
    const Eigen::MatrixXd inverse =
        scale.asDiagonal() * llt.solve(Eigen::MatrixXd::Identity(P, P)) * scale.asDiagonal();

    const Eigen::VectorXd variances = inverse.diagonal();
    if (!variances.allFinite() || (variances.array() <= 0.0).any())
        throw UnidentifiableConfiguration("Fisher information inverse has non-positive variances");
    report.per_parameter = variances.cwiseSqrt();

    const auto M = static_cast<Eigen::Index>(jac.anchors);
    const auto l = static_cast<Eigen::Index>(jac.dimension);
    report.skew = std::sqrt(variances.head(M).mean());
    report.offset = std::sqrt(variances.segment(M, M).mean());
    report.position = std::sqrt(variances.tail(l).sum());
    return report;
}

} // namespace syncloc
