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

// Scenario files: a small INI dialect describing one propagation
// environment plus the experiment to run against it. Angles are written
// in degrees and antenna spacings in carrier wavelengths; parsing converts
// both to the radians and meters used everywhere else in the library.

#ifndef v2vchan_scenario_H
#define v2vchan_scenario_H

#include <cstdint>
#include <string>
#include <vector>

#include "v2v/geometry.hpp"

namespace v2v
{

// Which statistics to produce and on what grids. Defaults match the
// shipped scenario files; every value can be overridden per file.
struct ExperimentConfig
{
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::vector<std::string> stats{"acf", "ccf", "psd", "lcr", "afd", "pdf"};
    std::vector<std::string> models{"reference", "sos-analytic", "empirical"};

    double acf_lag_max = 3.5e-3;
    int acf_points = 101;

    double ccf_rx_spacing_max_wl = 3.0;
    int ccf_points = 61;
    double ccf_tx_spacing_wl = 0.5;
    int ccf_empirical_points = 13;

    double psd_lag_step = 2.5e-4;
    int psd_lag_count = 129;

    double level_min_db = -20.0;
    double level_max_db = 10.0;
    double level_step_db = 0.5;

    long long samples = 1 << 20;
    double sample_rate_factor = 16.0;
    int segments = 16;
    int pdf_bins = 48;
};

struct Scenario
{
    std::string id;
    ScenarioConfig config;
    ExperimentConfig experiment;
};

struct LineDiagnostic
{
    bool is_error = false;
    int line = 0;
    std::string message;
};

// Parses scenario text. All diagnostics (errors and warnings) are appended
// to `diags` when given; the first error additionally raises
// std::invalid_argument carrying its line number. Unknown sections and
// keys are errors: a typo must not silently fall back to a default.
Scenario parse_scenario_text(const std::string& text, const std::string& id,
                             std::vector<LineDiagnostic>* diags = nullptr);

// Reads and parses a scenario file; the scenario id is the file base name
// without its extension.
Scenario load_scenario_file(const std::string& path, std::vector<LineDiagnostic>* diags = nullptr);

} // namespace v2v

#endif
