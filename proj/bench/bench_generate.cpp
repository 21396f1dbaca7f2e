// SPDX-License-Identifier: Apache-2.0
//
// v2vchan c++ library for geometry-based stochastic modelling of
// mobile-to-mobile MIMO radio channels
// Copyright (C) 2026 the v2vchan contributors
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

// Throughput of the two gain-series kernels on the shipped sparse-traffic
// scenario. The serial kernel is the correctness baseline; the blocked
// kernel is what the runner uses.

#include <benchmark/benchmark.h>

#include "v2v/scenario.hpp"
#include "v2v/sos.hpp"

namespace
{

const v2v::ScenarioConfig& bench_config()
{
    static const v2v::ScenarioConfig cfg =
        v2v::load_scenario_file(std::string(V2VCHAN_SCENARIO_DIR) + "/lowvtd.scenario").config;
    return cfg;
}

v2v::UniformGrid bench_grid(const v2v::ScenarioConfig& cfg)
{
    v2v::UniformGrid grid;
    grid.start = 0.0;
    grid.step = 1.0 / (16.0 * (cfg.f_tmax + cfg.f_rmax));
    grid.count = 1 << 16;
    return grid;
}

void run_kernel(benchmark::State& state, v2v::Kernel kernel)
{
    const v2v::ScenarioConfig& cfg = bench_config();
    const v2v::SosParameterization par = v2v::parameterize(cfg, 1);
    const v2v::UniformGrid grid = bench_grid(cfg);

    for (auto _ : state)
    {
        v2v::ChannelRealization ch = v2v::generate(par, cfg, grid, 1, 1, kernel);
        benchmark::DoNotOptimize(ch.h.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * grid.count);
}

void BM_generate_serial(benchmark::State& state)
{
    run_kernel(state, v2v::Kernel::serial_reference);
}

void BM_generate_blocked(benchmark::State& state)
{
    run_kernel(state, v2v::Kernel::blocked);
}

} // namespace

BENCHMARK(BM_generate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_blocked)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
