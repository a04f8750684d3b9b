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
#include "syncloc/estimators.hpp"
#include "syncloc/harness.hpp"
#include "syncloc/joint.hpp"

#include <benchmark/benchmark.h>

using namespace syncloc;

namespace
{

NetworkScenario scenario(Protocol protocol, std::size_t timestamps = 10)
{
    ExperimentConfig config;
    config.timestamps = timestamps;
    NetworkScenario s = generate_scenario(config, 0);
    s.protocol = protocol;
    s.timestamps = timestamps;
    s.noise_sigma = 1e-4;
    return s;
}

Protocol protocol_arg(const benchmark::State& state)
{
    return state.range(0) == 0 ? Protocol::TwoWay : Protocol::Atpl;
}

void BM_BuildSystem(benchmark::State& state)
{
    const NetworkScenario s = scenario(protocol_arg(state));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_measurement_system(s));
}
BENCHMARK(BM_BuildSystem)->Arg(0)->Arg(1);

void BM_TwoStep(benchmark::State& state)
{
    const NetworkScenario s = scenario(protocol_arg(state));
    const MeasurementSystem sys = build_measurement_system(s);
    const LocalizationInput loc(s.geometry);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_two_step(sys, loc, s.wave_speed));
}
BENCHMARK(BM_TwoStep)->Arg(0)->Arg(1);

void BM_JointCompressed(benchmark::State& state)
{
    const NetworkScenario s = scenario(protocol_arg(state));
    const MeasurementSystem sys = build_measurement_system(s);
    const LocalizationInput loc(s.geometry);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            estimate_joint(build_kronecker_system(sys, loc, s.wave_speed, KroneckerForm::Compressed)));
}
BENCHMARK(BM_JointCompressed)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// ATPL at K = 10 materializes 62500 rows; K = 5 keeps it tractable.
void BM_JointMaterialized(benchmark::State& state)
{
    const NetworkScenario s = scenario(protocol_arg(state), 5);
    const MeasurementSystem sys = build_measurement_system(s);
    const LocalizationInput loc(s.geometry);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            estimate_joint(build_kronecker_system(sys, loc, s.wave_speed, KroneckerForm::Materialized)));
}
BENCHMARK(BM_JointMaterialized)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Crlb(benchmark::State& state)
{
    NetworkScenario s = scenario(protocol_arg(state));
    s.noise_sigma = 0.0;
    const MeasurementSystem sys = build_measurement_system(s);
    for (auto _ : state)
        benchmark::DoNotOptimize(fisher_and_rcrlb(jacobian(sys, s), 1e-4));
}
BENCHMARK(BM_Crlb)->Arg(0)->Arg(1);

} // namespace

BENCHMARK_MAIN();
