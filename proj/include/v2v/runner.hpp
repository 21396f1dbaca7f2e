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

// Experiment driver: evaluates the requested statistics for the requested
// model flavors of one scenario and writes one CSV per (statistic, model)
// pair plus a manifest. All outputs are deterministic functions of the
// scenario and the seed; repeated runs produce byte identical files.

#ifndef v2vchan_runner_H
#define v2vchan_runner_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "v2v/scenario.hpp"

namespace v2v
{

struct RunOptions
{
    // empty vectors keep the scenario's own selections
    std::vector<std::string> stats;
    std::vector<std::string> models;
    std::optional<std::uint64_t> seed;
    std::string out_dir; // empty keeps the scenario's directory

    // reruns the scenario with all elevation statistics collapsed to the
    // horizontal plane; output lands under "<id>-2d"
    bool force_2d = false;
};

struct RunResult
{
    std::string scenario_id;
    std::string out_dir;
    std::vector<std::string> outputs;  // file names relative to out_dir
    std::vector<std::string> failures; // "stat/model: what went wrong"
    double wall_seconds = 0.0;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// Writes the deterministic ray angle table of the scenario's simulation
// parameterization and returns the file path.
std::string write_scenario_angles(const Scenario& scenario, const RunOptions& options = {});

} // namespace v2v

#endif
