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

// Command line front end: validate scenario files, run the statistics of a
// scenario into CSV files, or dump the deterministic ray angle table.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "v2v/runner.hpp"
#include "v2v/scenario.hpp"

namespace
{

void apply_workers(int workers)
{
    if (workers <= 0)
    {
        const char* env = std::getenv("V2VCHAN_WORKERS");
        if (env)
            workers = std::atoi(env);
    }
    if (workers > 0)
        omp_set_num_threads(workers);
}

int print_diagnostics(const std::string& path, const std::vector<v2v::LineDiagnostic>& diags)
{
    int errors = 0;
    for (const v2v::LineDiagnostic& d : diags)
    {
        std::cerr << path;
        if (d.line > 0)
            std::cerr << ":" << d.line;
        std::cerr << ": " << (d.is_error ? "error: " : "warning: ") << d.message << "\n";
        if (d.is_error)
            errors++;
    }
    return errors;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"v2vchan: statistics of a geometry-based stochastic vehicle-to-vehicle channel model"};
    app.set_version_flag("--version", "v2vchan 1.0.0");
    app.require_subcommand(1);

    std::vector<std::string> validate_files;
    CLI::App* validate = app.add_subcommand("validate", "check scenario files and report every problem found");
    validate->add_option("files", validate_files, "scenario files")->required()->check(CLI::ExistingFile);

    std::string run_file;
    std::vector<std::string> run_stats, run_models;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false, run_2d = false;
    std::string run_out;
    int run_workers = 0;
    CLI::App* run = app.add_subcommand("run", "evaluate the scenario's statistics and write CSV files");
    run->add_option("file", run_file, "scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--stats", run_stats, "statistics to produce (acf ccf psd lcr afd pdf)")->delimiter(',');
    run->add_option("--model", run_models, "model flavors (reference sos-analytic empirical)")->delimiter(',');
    run->add_option("--seed", run_seed, "override the scenario seed")->each([&](const std::string&) {
        run_seed_set = true;
    });
    run->add_option("--out", run_out, "override the output directory");
    run->add_flag("--2d", run_2d, "collapse the model to the horizontal plane");
    run->add_option("--workers", run_workers, "worker thread count (default: V2VCHAN_WORKERS or all cores)");

    std::string angles_file, angles_out;
    std::uint64_t angles_seed = 0;
    bool angles_seed_set = false, angles_2d = false;
    CLI::App* angles = app.add_subcommand("angles", "write the deterministic ray angle table of a scenario");
    angles->add_option("file", angles_file, "scenario file")->required()->check(CLI::ExistingFile);
    angles->add_option("--seed", angles_seed, "override the scenario seed")->each([&](const std::string&) {
        angles_seed_set = true;
    });
    angles->add_option("--out", angles_out, "override the output directory");
    angles->add_flag("--2d", angles_2d, "collapse the model to the horizontal plane");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (validate->parsed())
        {
            int total_errors = 0;
            for (const std::string& path : validate_files)
            {
                std::vector<v2v::LineDiagnostic> diags;
                try
                {
                    v2v::load_scenario_file(path, &diags);
                }
                catch (const std::invalid_argument&)
                {
                    // every parse error is already in diags
                }
                int errors = print_diagnostics(path, diags);
                total_errors += errors;
                if (errors == 0)
                    std::cout << path << ": ok\n";
            }
            return total_errors > 0 ? 1 : 0;
        }

        if (run->parsed())
        {
            apply_workers(run_workers);
            v2v::Scenario sc = v2v::load_scenario_file(run_file);
            v2v::RunOptions opt;
            opt.stats = run_stats;
            opt.models = run_models;
            if (run_seed_set)
                opt.seed = run_seed;
            opt.out_dir = run_out;
            opt.force_2d = run_2d;
            v2v::RunResult result = v2v::run_scenario(sc, opt);

            std::cout << "scenario " << result.scenario_id << ": " << result.outputs.size() << " files in "
                      << result.out_dir << " (" << result.wall_seconds << " s)\n";
            for (const std::string& file : result.outputs)
                std::cout << "  " << file << "\n";
            for (const std::string& failure : result.failures)
                std::cerr << "failed: " << failure << "\n";
            return result.failures.empty() ? 0 : 2;
        }

        apply_workers(0);
        v2v::Scenario sc = v2v::load_scenario_file(angles_file);
        v2v::RunOptions opt;
        if (angles_seed_set)
            opt.seed = angles_seed;
        opt.out_dir = angles_out;
        opt.force_2d = angles_2d;
        std::cout << v2v::write_scenario_angles(sc, opt) << "\n";
        return 0;
    }
    catch (const std::exception& ex)
    {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
