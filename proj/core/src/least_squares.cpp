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

#include "syncloc/least_squares.hpp"

#include "syncloc/errors.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace syncloc
{

namespace
{

std::size_t count_above(const Eigen::VectorXd& singular_values, double tolerance)
{
    if (singular_values.size() == 0)
        return 0;
    const double cutoff = tolerance * singular_values.maxCoeff();
    return static_cast<std::size_t>((singular_values.array() > cutoff).count());
}

} // namespace

Eigen::VectorXd solve_least_squares(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                    const Eigen::Ref<const Eigen::VectorXd>& b)
{
    const auto m = A.rows();
    const auto n = A.cols();
    if (m == 0 || n == 0)
        throw InvalidInput("least-squares system is empty");
    if (b.size() != m)
        throw InvalidInput("right-hand side has " + std::to_string(b.size()) + " entries, expected " +
                           std::to_string(m));

    const Eigen::VectorXd norms = A.colwise().norm().transpose();
    if (m < n || (norms.array() == 0.0).any())
    {
        const auto columns = static_cast<std::size_t>(n);
        throw RankDeficiency(columns - numerical_rank(A), columns);
    }

    const Eigen::MatrixXd scaled = A * norms.cwiseInverse().asDiagonal();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();

    const Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
    const std::size_t rank = count_above(svd.singularValues(), kRankTolerance);
    if (rank < static_cast<std::size_t>(n))
        throw RankDeficiency(static_cast<std::size_t>(n) - rank, static_cast<std::size_t>(n));

    Eigen::VectorXd y = qr.householderQ().adjoint() * b;
    y.conservativeResize(n);
    qr.matrixQR().topRows(n).triangularView<Eigen::Upper>().solveInPlace(y);
    return y.cwiseQuotient(norms);
}

std::size_t numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& A, double tolerance)
{
    const Eigen::VectorXd norms = A.colwise().norm().transpose();
    std::vector<Eigen::Index> nonzero;
    for (Eigen::Index c = 0; c < norms.size(); ++c)
        if (norms(c) > 0.0)
            nonzero.push_back(c);
    if (nonzero.empty() || A.rows() == 0)
        return 0;

    Eigen::MatrixXd scaled(A.rows(), static_cast<Eigen::Index>(nonzero.size()));
    for (Eigen::Index k = 0; k < scaled.cols(); ++k)
        scaled.col(k) = A.col(nonzero[static_cast<std::size_t>(k)]) / norms(nonzero[static_cast<std::size_t>(k)]);

    if (scaled.rows() > scaled.cols())
    {
        // Same singular values, smaller SVD.
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
        const Eigen::MatrixXd R = qr.matrixQR().topRows(scaled.cols()).triangularView<Eigen::Upper>();
        return count_above(Eigen::BDCSVD<Eigen::MatrixXd>(R).singularValues(), tolerance);
    }
    return count_above(Eigen::BDCSVD<Eigen::MatrixXd>(scaled).singularValues(), tolerance);
}

} // namespace syncloc
