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

#include "syncloc/estimators.hpp"
#include "syncloc/protocol.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace syncloc
{

/// Where each unknown of the joint model sits in theta (x) theta.
/// Flat index of theta_a * theta_b is a * 3M + b.
struct KroneckerLayout
{
    std::size_t anchors = 0;
    std::size_t dimension = 0;
    std::vector<std::size_t> gamma_columns;   // (2i, 2i)
    std::vector<std::size_t> delta_columns;   // (2i, 2i+1)
    std::vector<std::size_t> tof_sq_columns;  // (2M+j-1, 2M+j-1)
    std::vector<std::size_t> nuisance_columns; // everything else, ascending

    explicit KroneckerLayout(std::size_t anchors = 0, std::size_t dimension = 0);

    std::size_t theta_size() const noexcept { return 3 * anchors; }
    std::size_t kron_size() const noexcept { return theta_size() * theta_size(); }
    std::size_t nuisance_count() const noexcept { return nuisance_columns.size(); }
    /// L = 2M + l + 1 + L_z
    std::size_t unknown_count() const noexcept { return 2 * anchors + dimension + 1 + nuisance_count(); }

    std::size_t flat(std::size_t a, std::size_t b) const noexcept { return a * theta_size() + b; }
    /// Offset of the p block inside psi.
    std::size_t position_offset() const noexcept { return 2 * anchors; }
    std::size_t nuisance_offset() const noexcept { return 2 * anchors + dimension + 1; }
};

enum class KroneckerForm
{
    /// A~ built explicitly from A (x) A; rows = (source rows)^2.
    Materialized,
    /// A = QR, and the problem is rotated by Q (x) Q: 9M^2 rows, same minimizer.
    Compressed,
};

/// Joint linear model A~ psi = t~ + w with psi = [cbar; p; z].
struct JointSystem
{
    Eigen::MatrixXd design;
    Eigen::VectorXd rhs;
    KroneckerLayout layout;
    KroneckerForm form = KroneckerForm::Materialized;
};

/// A (x) A, explicitly.
Eigen::MatrixXd kronecker_square(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// Throws GeometryError for M < l+1.
JointSystem build_kronecker_system(const MeasurementSystem& system, const LocalizationInput& loc, double wave_speed,
                                   KroneckerForm form = KroneckerForm::Materialized);

struct JointEstimate
{
    Eigen::VectorXd gamma; // nodes 0..M-1
    Eigen::VectorXd delta;
    Eigen::VectorXd lifted_position; // [x0; ||x0||^2 estimate]
    Eigen::VectorXd nuisance;
    Eigen::VectorXd skew;   // NaN where recovery failed
    Eigen::VectorXd offset; // NaN where recovery failed
    std::vector<std::size_t> failed_nodes; // gamma_i <= 0

    bool clocks_recovered() const noexcept { return failed_nodes.empty(); }
    Eigen::VectorXd position() const { return lifted_position.head(lifted_position.size() - 1); }
};

/// Throws RankDeficiency; non-positive gammas are reported in failed_nodes.
JointEstimate estimate_joint(const JointSystem& joint);

/// psi for the scenario's true parameters, in the layout of `layout`.
Eigen::VectorXd true_psi(const NetworkScenario& scenario, const KroneckerLayout& layout);

struct HadamardRankReport
{
    std::size_t rows = 0;
    std::size_t columns = 0; // 9M^2
    std::size_t rank = 0;

    bool left_invertible() const noexcept { return rank == columns; }
};

/// Row-wise Kronecker square (A^T o A^T)^T: row r is A_r (x) A_r.
Eigen::MatrixXd hadamard_square(const Eigen::Ref<const Eigen::MatrixXd>& A);

HadamardRankReport hadamard_rank_check(const MeasurementSystem& system);

} // namespace syncloc
