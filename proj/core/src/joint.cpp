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

#include "syncloc/joint.hpp"

#include "syncloc/errors.hpp"
#include "syncloc/least_squares.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace syncloc
{

KroneckerLayout::KroneckerLayout(std::size_t anchor_count, std::size_t dim) : anchors(anchor_count), dimension(dim)
{
    const std::size_t M = anchors;
    std::vector<bool> taken(kron_size(), false);
    for (std::size_t i = 0; i < M; ++i)
    {
        gamma_columns.push_back(flat(2 * i, 2 * i));
        delta_columns.push_back(flat(2 * i, 2 * i + 1));
    }
    for (std::size_t j = 1; j <= M; ++j)
        tof_sq_columns.push_back(flat(2 * M + j - 1, 2 * M + j - 1));

    for (const auto* group : {&gamma_columns, &delta_columns, &tof_sq_columns})
        for (std::size_t c : *group)
            taken[c] = true;
    for (std::size_t c = 0; c < kron_size(); ++c)
        if (!taken[c])
            nuisance_columns.push_back(c);
}

namespace
{

// u (x) v
Eigen::VectorXd kron(const Eigen::Ref<const Eigen::VectorXd>& u, const Eigen::Ref<const Eigen::VectorXd>& v)
{
    Eigen::VectorXd out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i)
        out.segment(i * v.size(), v.size()) = u(i) * v;
    return out;
}

// Columns of A~ and t~ with `factor` standing in for A and `data` for t.
JointSystem assemble_joint(const Eigen::MatrixXd& factor, const Eigen::VectorXd& data, const LocalizationInput& loc,
                           double wave_speed, KroneckerLayout layout, KroneckerForm form)
{
    const std::size_t M = layout.anchors;
    const std::size_t l = layout.dimension;
    const std::size_t n = layout.theta_size();
    const Eigen::Index rows = factor.rows() * factor.rows();
    const double inv_nu2 = 1.0 / (wave_speed * wave_speed);

    const auto column_pair = [&](std::size_t flat_index) {
        const auto a = static_cast<Eigen::Index>(flat_index / n);
        const auto b = static_cast<Eigen::Index>(flat_index % n);
        return kron(factor.col(a), factor.col(b));
    };

    JointSystem js;
    js.form = form;
    js.design = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(layout.unknown_count()));
    js.rhs = kron(data, data);

    for (std::size_t i = 0; i < M; ++i)
    {
        js.design.col(static_cast<Eigen::Index>(2 * i)) = column_pair(layout.gamma_columns[i]);
        js.design.col(static_cast<Eigen::Index>(2 * i + 1)) = column_pair(layout.delta_columns[i]);
    }

    // tau0^2 = nu^-2 (Xbar p + q): the p columns mix the M tau^2 columns through Xbar.
    const auto p0 = static_cast<Eigen::Index>(layout.position_offset());
    for (std::size_t j = 0; j < M; ++j)
    {
        const Eigen::VectorXd tau_sq = inv_nu2 * column_pair(layout.tof_sq_columns[j]);
        for (std::size_t c = 0; c <= l; ++c)
            js.design.col(p0 + static_cast<Eigen::Index>(c)) +=
                loc.lifted(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) * tau_sq;
        js.rhs -= loc.norms_squared(static_cast<Eigen::Index>(j)) * tau_sq;
    }

    const auto z0 = static_cast<Eigen::Index>(layout.nuisance_offset());
    for (std::size_t k = 0; k < layout.nuisance_count(); ++k)
        js.design.col(z0 + static_cast<Eigen::Index>(k)) = column_pair(layout.nuisance_columns[k]);

    js.layout = std::move(layout);
    return js;
}

} // namespace

Eigen::MatrixXd kronecker_square(const Eigen::Ref<const Eigen::MatrixXd>& A)
{
    const auto m = A.rows();
    const auto n = A.cols();
    Eigen::MatrixXd out(m * m, n * n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out.block(i * m, j * n, m, n) = A(i, j) * A;
    return out;
}

JointSystem build_kronecker_system(const MeasurementSystem& system, const LocalizationInput& loc, double wave_speed,
                                   KroneckerForm form)
{
    const std::size_t M = system.anchors;
    const std::size_t l = loc.dimension();
    if (loc.anchor_count() != M)
        throw InvalidInput("localization input has " + std::to_string(loc.anchor_count()) + " anchors, system has " +
                           std::to_string(M));
    if (M < l + 1)
        throw GeometryError("joint estimation needs at least l+1 = " + std::to_string(l + 1) + " anchors");
    if (!(wave_speed > 0.0))
        throw InvalidInput("wave speed must be positive");

    KroneckerLayout layout(M, l);
    const auto n = static_cast<Eigen::Index>(layout.theta_size());
    if (form == KroneckerForm::Compressed && system.design.rows() >= n)
    {
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(system.design);
        const Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
        Eigen::VectorXd qt = qr.householderQ().adjoint() * system.rhs;
        qt.conservativeResize(n);
        return assemble_joint(R, qt, loc, wave_speed, std::move(layout), form);
    }
    return assemble_joint(system.design, system.rhs, loc, wave_speed, std::move(layout), KroneckerForm::Materialized);
}

JointEstimate estimate_joint(const JointSystem& joint)
{
    const Eigen::VectorXd psi = solve_least_squares(joint.design, joint.rhs);
    const KroneckerLayout& layout = joint.layout;
    const auto M = static_cast<Eigen::Index>(layout.anchors);
    const auto l = static_cast<Eigen::Index>(layout.dimension);

    JointEstimate est;
    est.gamma.resize(M);
    est.delta.resize(M);
    est.skew.resize(M);
    est.offset.resize(M);
    for (Eigen::Index i = 0; i < M; ++i)
    {
        est.gamma(i) = psi(2 * i);
        est.delta(i) = psi(2 * i + 1);
        try
        {
            const NodeClock c = squared_params_to_clock(est.gamma(i), est.delta(i));
            est.skew(i) = c.skew;
            est.offset(i) = c.offset;
        }
        catch (const RecoveryFailure&)
        {
            est.skew(i) = std::numeric_limits<double>::quiet_NaN();
            est.offset(i) = std::numeric_limits<double>::quiet_NaN();
            est.failed_nodes.push_back(static_cast<std::size_t>(i));
        }
    }
    est.lifted_position = psi.segment(static_cast<Eigen::Index>(layout.position_offset()), l + 1);
    est.nuisance = psi.tail(static_cast<Eigen::Index>(layout.nuisance_count()));
    return est;
}

Eigen::VectorXd true_psi(const NetworkScenario& scenario, const KroneckerLayout& layout)
{
    const Eigen::VectorXd theta = true_theta(scenario);
    const Eigen::VectorXd theta_sq = kron(theta, theta);
    const auto M = static_cast<Eigen::Index>(layout.anchors);
    const auto l = static_cast<Eigen::Index>(layout.dimension);

    Eigen::VectorXd psi(static_cast<Eigen::Index>(layout.unknown_count()));
    for (Eigen::Index i = 0; i < M; ++i)
    {
        psi(2 * i) = theta_sq(static_cast<Eigen::Index>(layout.gamma_columns[static_cast<std::size_t>(i)]));
        psi(2 * i + 1) = theta_sq(static_cast<Eigen::Index>(layout.delta_columns[static_cast<std::size_t>(i)]));
    }
    const Eigen::VectorXd& x0 = scenario.geometry.sensor();
    psi.segment(2 * M, l) = x0;
    psi(2 * M + l) = x0.squaredNorm();
    const auto z0 = static_cast<Eigen::Index>(layout.nuisance_offset());
    for (std::size_t k = 0; k < layout.nuisance_count(); ++k)
        psi(z0 + static_cast<Eigen::Index>(k)) = theta_sq(static_cast<Eigen::Index>(layout.nuisance_columns[k]));
    return psi;
}

Eigen::MatrixXd hadamard_square(const Eigen::Ref<const Eigen::MatrixXd>& A)
{
    Eigen::MatrixXd out(A.rows(), A.cols() * A.cols());
    for (Eigen::Index r = 0; r < A.rows(); ++r)
        out.row(r) = kron(A.row(r).transpose(), A.row(r).transpose()).transpose();
    return out;
}

HadamardRankReport hadamard_rank_check(const MeasurementSystem& system)
{
    const Eigen::MatrixXd H = hadamard_square(system.design);
    HadamardRankReport report;
    report.rows = static_cast<std::size_t>(H.rows());
    report.columns = static_cast<std::size_t>(H.cols());
    report.rank = numerical_rank(H);
    return report;
}

} // namespace syncloc
