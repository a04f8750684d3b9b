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

/// Relative singular-value threshold below which a column direction counts as lost.
inline constexpr double kRankTolerance = 1e-10;

/// Minimizes ||A x - b||_2. Columns are scaled to unit norm, the scaled
/// matrix is Householder-factorized, and the solution is unscaled.
/// Throws RankDeficiency when the scaled matrix has singular values below
/// kRankTolerance times the largest (or fewer rows than columns).
Eigen::VectorXd solve_least_squares(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                    const Eigen::Ref<const Eigen::VectorXd>& b);

/// Rank after column equilibration; zero columns contribute nothing.
std::size_t numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& A, double tolerance = kRankTolerance);

} // namespace syncloc
