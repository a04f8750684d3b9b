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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "syncloc/crlb.hpp"
#include "syncloc/estimators.hpp"
#include "syncloc/harness.hpp"
#include "syncloc/joint.hpp"

#include "support/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace syncloc;
using namespace syncloc::testing;

namespace
{

// Pinned tolerances and budgets.
constexpr double kExactnessTol = 1e-6;
constexpr double kExactnessBudget = 30.0;
constexpr double kKroneckerTol = 1e-12;
constexpr double kKroneckerBudget = 10.0;
constexpr double kJacobianTol = 1e-5;
constexpr double kJacobianStep = 1e-6;
constexpr double kJacobianBudget = 30.0;
constexpr double kEfficiencyLow = 0.95;
constexpr double kEfficiencyHigh = 1.3;
constexpr double kExperimentBudget = 300.0;
constexpr std::size_t kDeterminismTrials = 100;

struct Outcome
{
    bool pass;
    std::string detail;
};

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int id, const char* title, const Outcome& o, double elapsed)
{
    std::printf("criterion %d: %s  %s (%s; %.2f s)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!o.pass)
        ++failures;
}

void timed(int id, const char* title, double budget, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o = body();
    const double elapsed = seconds_since(start);
    if (budget > 0.0 && elapsed >= budget)
    {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(budget)) + " s budget";
    }
    report(id, title, o, elapsed);
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome zero_noise_exactness()
{
    ExperimentConfig config;
    config.master_seed = 1001;
    double worst_two_step = 0.0, worst_joint = 0.0;
    for (std::size_t trial = 0; trial < 100; ++trial)
    {
        NetworkScenario s = generate_scenario(config, trial);
        const LocalizationInput loc(s.geometry);
        for (Protocol p : {Protocol::TwoWay, Protocol::Atpl})
        {
            s.protocol = p;
            const MeasurementSystem sys = build_measurement_system(s);
            const TwoStepEstimate two = estimate_two_step(sys, loc, s.wave_speed);
            for (double e : {rel_err(two.sync.skew, skews(s)), rel_err(two.sync.offset, offsets(s)),
                             rel_err(two.position.position(), s.geometry.sensor()),
                             rel_err(two.sync.ranges, s.geometry.sensor_ranges())})
                worst_two_step = std::max(worst_two_step, e);

            const JointEstimate joint =
                estimate_joint(build_kronecker_system(sys, loc, s.wave_speed, KroneckerForm::Compressed));
            if (!joint.clocks_recovered())
                return {false, "joint clock recovery failed"};
            for (double e : {rel_err(joint.skew, skews(s)), rel_err(joint.offset, offsets(s)),
                             rel_err(joint.position(), s.geometry.sensor())})
                worst_joint = std::max(worst_joint, e);
        }
    }
    return {worst_two_step < kExactnessTol && worst_joint < kExactnessTol,
            "max rel err two-step " + fmt("%.2e", worst_two_step) + ", joint " + fmt("%.2e", worst_joint)};
}

Outcome kronecker_identity()
{
    const NetworkScenario s = generate_scenario(ExperimentConfig{}, 0);
    const MeasurementSystem sys = build_measurement_system(s);
    const Eigen::MatrixXd big = kronecker_square(sys.design);
    std::mt19937_64 rng(2002);
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        Eigen::VectorXd theta(sys.design.cols());
        for (Eigen::Index i = 0; i < theta.size(); ++i)
            theta(i) = n(rng);
        const Eigen::VectorXd at = sys.design * theta;
        worst = std::max(worst, rel_err(big * kron_oracle(theta, theta), kron_oracle(at, at)));
    }
    return {worst < kKroneckerTol, "max rel err " + fmt("%.2e", worst)};
}

Outcome jacobian_check()
{
    ExperimentConfig config;
    config.master_seed = 3003;
    double worst = 0.0;
    for (std::size_t trial = 0; trial < 20; ++trial)
    {
        NetworkScenario s = generate_scenario(config, trial);
        s.protocol = trial % 2 ? Protocol::Atpl : Protocol::TwoWay;
        const MeasurementSystem sys = build_measurement_system(s);
        const Jacobian jac = jacobian(sys, s);
        const Eigen::VectorXd psibar = psibar_of(s);
        for (Eigen::Index c = 0; c < psibar.size(); ++c)
        {
            Eigen::VectorXd up = psibar, down = psibar;
            up(c) += kJacobianStep;
            down(c) -= kJacobianStep;
            const Eigen::VectorXd fd = (residual(sys, s, up) - residual(sys, s, down)) / (2 * kJacobianStep);
            worst = std::max(worst, (fd - jac.matrix.col(c)).lpNorm<Eigen::Infinity>() /
                                        jac.matrix.col(c).lpNorm<Eigen::Infinity>());
        }
    }
    return {worst < kJacobianTol, "max rel err " + fmt("%.2e", worst)};
}

const ResultRow* find(const std::vector<ResultRow>& rows, double sigma, Protocol p, Estimator e)
{
    for (const ResultRow& r : rows)
        if (r.sigma == sigma && r.protocol == p && r.estimator == e)
            return &r;
    return nullptr;
}

Outcome efficiency(const ExperimentConfig& config, const std::vector<ResultRow>& rows)
{
    const double smallest = *std::min_element(config.sigmas.begin(), config.sigmas.end());
    bool pass = true;
    std::string detail;
    for (Protocol p : config.protocols)
    {
        const ResultRow* r = find(rows, smallest, p, Estimator::TwoStep);
        if (!r)
            return {false, "missing two-step row"};
        const double skew = r->rmse_skew / r->rcrlb_skew;
        const double offset = r->rmse_offset / r->rcrlb_offset;
        for (double ratio : {skew, offset})
            pass = pass && ratio >= kEfficiencyLow && ratio <= kEfficiencyHigh;
        detail += (detail.empty() ? "" : ", ") + std::string(to_string(p)) + " skew " + fmt("%.3f", skew) +
                  " offset " + fmt("%.3f", offset);
    }
    return {pass, "sigma " + fmt("%g", smallest) + ": " + detail};
}

Outcome protocol_ordering(const ExperimentConfig& config, const std::vector<ResultRow>& rows)
{
    int comparisons = 0, violations = 0;
    for (double sigma : config.sigmas)
        for (Estimator e : config.estimators)
        {
            const ResultRow* two = find(rows, sigma, Protocol::TwoWay, e);
            const ResultRow* atpl = find(rows, sigma, Protocol::Atpl, e);
            if (!two || !atpl)
                return {false, "missing protocol row"};
            for (auto field : {&ResultRow::rmse_position, &ResultRow::rmse_skew, &ResultRow::rmse_offset})
            {
                ++comparisons;
                if (atpl->*field > two->*field)
                    ++violations;
            }
        }
    return {violations == 0, std::to_string(violations) + " of " + std::to_string(comparisons) + " comparisons violated"};
}

Outcome position_sub_efficiency(const ExperimentConfig& config, const std::vector<ResultRow>& rows)
{
    bool pass = true;
    double min_ratio = INFINITY;
    for (double sigma : config.sigmas)
        for (Protocol p : config.protocols)
        {
            const ResultRow* r = find(rows, sigma, p, Estimator::Joint);
            if (!r)
                return {false, "missing joint row"};
            const double ratio = r->rmse_position / r->rcrlb_position;
            min_ratio = std::min(min_ratio, ratio);
            pass = pass && ratio >= 1.0;
        }
    const double largest = *std::max_element(config.sigmas.begin(), config.sigmas.end());
    std::string detail = "min ratio " + fmt("%.3f", min_ratio);
    for (Protocol p : config.protocols)
    {
        const ResultRow* r = find(rows, largest, p, Estimator::Joint);
        const double ratio = r->rmse_position / r->rcrlb_position;
        pass = pass && ratio > 1.0;
        detail += ", " + std::string(to_string(p)) + " at sigma " + fmt("%g", largest) + " " + fmt("%.3f", ratio);
    }
    return {pass, detail};
}

Outcome hadamard_rank()
{
    NetworkScenario s = generate_scenario(ExperimentConfig{}, 0);
    bool pass = true;
    std::string detail;
    for (Protocol p : {Protocol::TwoWay, Protocol::Atpl})
    {
        s.protocol = p;
        const HadamardRankReport r = hadamard_rank_check(build_measurement_system(s));
        pass = pass && r.columns == 225 && r.rank < 225;
        detail += (detail.empty() ? "" : ", ") + std::string(to_string(p)) + " " + std::to_string(r.rows) + "x" +
                  std::to_string(r.columns) + " rank " + std::to_string(r.rank);
    }
    return {pass, detail};
}

Outcome dimensions()
{
    const NetworkScenario s = generate_scenario(ExperimentConfig{}, 0);
    const MeasurementSystem sys = build_measurement_system(s);
    const Eigen::MatrixXd bar = kronecker_square(sys.design);
    const JointSystem joint =
        build_kronecker_system(sys, LocalizationInput(s.geometry), s.wave_speed, KroneckerForm::Materialized);
    const auto dims = [](Eigen::Index r, Eigen::Index c) { return std::to_string(r) + "x" + std::to_string(c); };
    const std::size_t nuisance = joint.layout.nuisance_columns.size();
    const bool pass = sys.design.rows() == 50 && sys.design.cols() == 15 && bar.rows() == 2500 && bar.cols() == 225 &&
                      joint.design.rows() == 2500 && joint.design.cols() == 223 && nuisance == 210;
    return {pass, "A " + dims(sys.design.rows(), sys.design.cols()) + ", A-bar " + dims(bar.rows(), bar.cols()) +
                      ", A-tilde " + dims(joint.design.rows(), joint.design.cols()) + ", L_z " + std::to_string(nuisance)};
}

Outcome determinism()
{
    ExperimentConfig config;
    config.trials = kDeterminismTrials;
    const auto render = [&] {
        std::ostringstream out;
        write_results_csv(out, config, run_experiment(config));
        return out.str();
    };
    const std::string first = render();
    const std::string second = render();
    return {first == second && !first.empty(),
            std::to_string(first.size()) + " bytes, " + std::to_string(kDeterminismTrials) + " trials per run"};
}

} // namespace

int main()
{
    timed(1, "zero-noise exactness", kExactnessBudget, zero_noise_exactness);
    timed(2, "Kronecker identity", kKroneckerBudget, kronecker_identity);
    timed(3, "Jacobian against finite differences", kJacobianBudget, jacobian_check);

    const ExperimentConfig config;
    const auto start = std::chrono::steady_clock::now();
    const std::vector<ResultRow> rows = run_experiment(config);
    const double experiment_time = seconds_since(start);
    std::printf("default experiment: %zu trials, %.1f s\n", config.trials, experiment_time);

    Outcome eff = efficiency(config, rows);
    if (experiment_time >= kExperimentBudget)
    {
        eff.pass = false;
        eff.detail += "; over the 300 s budget";
    }
    report(4, "clock estimates meet the bound", eff, experiment_time);
    report(5, "ATPL beats two-way", protocol_ordering(config, rows), 0.0);
    report(6, "joint position stays above the bound", position_sub_efficiency(config, rows), 0.0);

    timed(7, "Hadamard model is rank deficient", 0.0, hadamard_rank);
    timed(8, "dimension bookkeeping", 0.0, dimensions);
    timed(9, "byte-identical CSV", 0.0, determinism);

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
