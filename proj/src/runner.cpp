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

#include "v2v/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "v2v/estimators.hpp"
#include "v2v/mev.hpp"
#include "v2v/reference_model.hpp"
#include "v2v/sos.hpp"

namespace v2v
{

namespace
{

using cplx = std::complex<double>;

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t h = 14695981039346656037ULL)
{
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; i++)
    {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)(h));
    return buf;
}

std::uint64_t hash_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot reopen output file '" + path + "'");
    std::uint64_t h = 14695981039346656037ULL;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h = fnv1a64(buf, std::size_t(in.gcount()), h);
    return h;
}

std::string config_hash(const ScenarioConfig& c)
{
    std::ostringstream os;
    auto d = [&](double v) { os << format_double(v) << '|'; };
    d(c.fc);
    d(c.f_tmax);
    d(c.f_rmax);
    d(c.gamma_t);
    d(c.gamma_r);
    d(c.d);
    d(c.r_t);
    d(c.r_r);
    d(c.a_ell);
    os << c.m_t << '|' << c.m_r << '|';
    d(c.delta_t);
    d(c.delta_r);
    d(c.theta_t);
    d(c.phi_t);
    d(c.theta_r);
    d(c.phi_r);
    d(c.k_rice);
    d(c.eta_sb1);
    d(c.eta_sb2);
    d(c.eta_sb3);
    d(c.eta_db);
    os << c.n1 << '|' << c.n2 << '|' << c.n3 << '|';
    for (const VmfParams* p : {&c.vmf_sb1, &c.vmf_sb2, &c.vmf_sb3})
    {
        d(p->alpha0);
        d(p->beta0);
        d(p->k);
    }
    os << (c.mode_2d ? "2d" : "3d");
    std::string s = os.str();
    return hex64(fnv1a64(s.data(), s.size()));
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> x(n);
    for (int i = 0; i < n; i++)
        x[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return x;
}

// evaluates f(i) for i in [0, n) in parallel; the first exception wins and
// is rethrown on the calling thread
template <typename F>
std::vector<cplx> eval_parallel(int n, F f)
{
    std::vector<cplx> out(n);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; i++)
    {
        try
        {
            out[i] = f(i);
        }
        catch (...)
        {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
    return out;
}

struct Context
{
    Scenario sc;
    RunResult result;
    std::filesystem::path dir;

    bool have_par = false;
    SosParameterization par;

    bool have_channel = false;
    ChannelRealization channel;

    const SosParameterization& parameterization()
    {
        if (!have_par)
        {
            par = parameterize(sc.config, sc.experiment.seed);
            have_par = true;
        }
        return par;
    }

    const ChannelRealization& realization()
    {
        const ExperimentConfig& e = sc.experiment;
        if (!have_channel)
        {
            double rate = e.sample_rate_factor * (sc.config.f_tmax + sc.config.f_rmax);
            UniformGrid grid{0.0, 1.0 / rate, int(e.samples)};
            channel = generate(parameterization(), sc.config, grid, 1, 1);
            have_channel = true;
        }
        return channel;
    }

    void emit(StatCurve curve, const std::string& file, bool estimator_schema)
    {
        curve.scenario_id = sc.id;
        std::string path = (dir / file).string();
        if (estimator_schema)
            write_estimator_csv(curve, path);
        else
            write_csv(curve, path);
        result.outputs.push_back(file);
    }

    std::vector<double> level_grid_db() const
    {
        const ExperimentConfig& e = sc.experiment;
        int n = int(std::lround((e.level_max_db - e.level_min_db) / e.level_step_db)) + 1;
        std::vector<double> g(n);
        for (int i = 0; i < n; i++)
            g[i] = e.level_min_db + i * e.level_step_db;
        return g;
    }
};

void run_acf(Context& ctx, const std::string& model)
{
    const ExperimentConfig& e = ctx.sc.experiment;
    if (model == "empirical")
    {
        const ChannelRealization& ch = ctx.realization();
        int max_lag = int(std::lround(e.acf_lag_max / ch.grid.step));
        max_lag = std::min<int>(max_lag, int(ch.h.size() / 4));
        StatCurve c = empirical_acf(ch, max_lag, e.segments);
        ctx.emit(std::move(c), "acf_empirical.csv", true);
        return;
    }

    StatCurve c;
    c.quantity = "acf";
    c.model_tag = model;
    c.complex_valued = true;
    c.x = linspace(0.0, e.acf_lag_max, e.acf_points);
    if (model == "reference")
        c.y = eval_parallel(e.acf_points, [&](int i) { return stcf_total(0.0, 0.0, c.x[i], ctx.sc.config); });
    else
        c.y = eval_parallel(e.acf_points,
                            [&](int i) { return sim_stcf(ctx.parameterization(), 0.0, 0.0, c.x[i], ctx.sc.config); });
    ctx.emit(std::move(c), "acf_" + model + ".csv", false);
}

void run_ccf(Context& ctx, const std::string& model)
{
    const ExperimentConfig& e = ctx.sc.experiment;
    const double wl = ctx.sc.config.wavelength();
    const double dt = e.ccf_tx_spacing_wl * wl;

    if (model == "empirical")
    {
        // measured between element pairs (1,1) and (2,2) of a 2x2 array
        // re-spaced per point; a shorter record keeps the sweep affordable
        ScenarioConfig cfg = ctx.sc.config;
        cfg.m_t = 2;
        cfg.m_r = 2;
        cfg.delta_t = dt;
        const long long samples = std::max<long long>(e.samples / 16, 65536);
        const double rate = e.sample_rate_factor * (cfg.f_tmax + cfg.f_rmax);
        const UniformGrid grid{0.0, 1.0 / rate, int(samples)};

        StatCurve c;
        c.quantity = "ccf";
        c.model_tag = model;
        c.complex_valued = true;
        c.x = linspace(0.0, e.ccf_rx_spacing_max_wl, e.ccf_empirical_points);
        c.y.resize(c.x.size());
        c.se.resize(c.x.size());
        for (std::size_t i = 0; i < c.x.size(); i++)
        {
            cfg.delta_r = c.x[i] * wl;
            SosParameterization par = parameterize(cfg, ctx.sc.experiment.seed);
            ChannelRealization h11 = generate(par, cfg, grid, 1, 1);
            ChannelRealization h22 = generate(par, cfg, grid, 2, 2);
            CorrelationEstimate est = empirical_crosscorr(h11, h22, e.segments);
            c.y[i] = est.value;
            c.se[i] = est.se;
        }
        ctx.emit(std::move(c), "ccf_empirical.csv", true);
        return;
    }

    StatCurve c;
    c.quantity = "ccf";
    c.model_tag = model;
    c.complex_valued = true;
    c.x = linspace(0.0, e.ccf_rx_spacing_max_wl, e.ccf_points);
    if (model == "reference")
        c.y = eval_parallel(e.ccf_points,
                            [&](int i) { return stcf_total(dt, c.x[i] * wl, 0.0, ctx.sc.config); });
    else
        c.y = eval_parallel(e.ccf_points, [&](int i) {
            return sim_stcf(ctx.parameterization(), dt, c.x[i] * wl, 0.0, ctx.sc.config);
        });
    ctx.emit(std::move(c), "ccf_" + model + ".csv", false);
}

void run_psd(Context& ctx, const std::string& model)
{
    const ExperimentConfig& e = ctx.sc.experiment;
    if (model == "empirical")
    {
        StatCurve c = empirical_psd(ctx.realization(), e.segments);
        ctx.emit(std::move(c), "psd_empirical.csv", true);
        return;
    }
    UniformGrid lag_grid = UniformGrid::centered(e.psd_lag_step, e.psd_lag_count);
    // long lags mean fast oscillation against the angular densities; give
    // the integrator room instead of failing the whole statistic
    QuadratureSpec spec;
    spec.max_subdivisions = 20000;
    StatCurve c = model == "reference" ? doppler_psd(ctx.sc.config, lag_grid, spec)
                                       : sim_doppler_psd(ctx.parameterization(), ctx.sc.config, lag_grid);
    ctx.emit(std::move(c), "psd_" + model + ".csv", false);
}

void run_level_stats(Context& ctx, const std::string& stat, const std::string& model)
{
    const std::vector<double> grid_db = ctx.level_grid_db();
    std::vector<double> levels(grid_db.size());
    for (std::size_t i = 0; i < grid_db.size(); i++)
        levels[i] = std::pow(10.0, grid_db[i] / 20.0);

    StatCurve c;
    c.quantity = stat;
    c.model_tag = model;
    c.complex_valued = false;
    c.x = grid_db;
    c.y.resize(grid_db.size());

    if (model == "empirical")
    {
        CrossingStats cs = empirical_crossings(ctx.realization(), levels);
        c.se.resize(grid_db.size(), 0.0);
        const double duration = ctx.realization().grid.step * double(ctx.realization().h.size() - 1);
        for (std::size_t i = 0; i < grid_db.size(); i++)
        {
            if (stat == "lcr")
            {
                c.y[i] = cs.lcr[i];
                c.se[i] = std::sqrt(double(cs.up_crossings[i])) / duration;
            }
            else
                c.y[i] = cs.afd[i];
        }
        ctx.emit(std::move(c), stat + "_empirical.csv", true);
        return;
    }

    SpectralMoments m = model == "reference" ? spectral_moments(ctx.sc.config)
                                             : sim_spectral_moments(ctx.parameterization(), ctx.sc.config);
    for (std::size_t i = 0; i < grid_db.size(); i++)
        c.y[i] = stat == "lcr" ? lcr(levels[i], ctx.sc.config.k_rice, m) : afd(levels[i], ctx.sc.config.k_rice, m);
    ctx.emit(std::move(c), stat + "_" + model + ".csv", false);
}

void run_pdf(Context& ctx, const std::string& model)
{
    const ExperimentConfig& e = ctx.sc.experiment;
    const RiceanParams rp = ricean_params(ctx.sc.config);
    const double z_max = rp.spec_amp + 6.0 * std::sqrt(rp.sigma0_sq);
    const int bins = e.pdf_bins;

    std::vector<double> z_centers(bins), th_centers(bins);
    for (int i = 0; i < bins; i++)
    {
        z_centers[i] = (i + 0.5) * z_max / bins;
        th_centers[i] = -M_PI + (i + 0.5) * 2.0 * M_PI / bins;
    }

    if (model == "empirical")
    {
        const ChannelRealization& ch = ctx.realization();
        HistogramDensity az = amplitude_histogram(ch, bins, z_max);
        HistogramDensity ph = phase_histogram(ch, bins);
        const double n = double(ch.h.size());
        auto hist_curve = [&](const HistogramDensity& hd, const std::string& quantity) {
            StatCurve c;
            c.quantity = quantity;
            c.model_tag = model;
            c.complex_valued = false;
            c.x = hd.center;
            c.y.assign(hd.center.size(), 0.0);
            c.se.assign(hd.center.size(), 0.0);
            for (std::size_t i = 0; i < hd.center.size(); i++)
            {
                double p = hd.density[i] * hd.bin_width;
                c.y[i] = hd.density[i];
                c.se[i] = std::sqrt(std::fmax(p * (1.0 - p), 0.0) / n) / hd.bin_width;
            }
            return c;
        };
        ctx.emit(hist_curve(az, "pdf_amplitude"), "pdf_amplitude_empirical.csv", true);
        ctx.emit(hist_curve(ph, "pdf_phase"), "pdf_phase_empirical.csv", true);
        return;
    }

    StatCurve ca;
    ca.quantity = "pdf_amplitude";
    ca.model_tag = model;
    ca.complex_valued = false;
    ca.x = z_centers;
    StatCurve cp;
    cp.quantity = "pdf_phase";
    cp.model_tag = model;
    cp.complex_valued = false;
    cp.x = th_centers;

    if (model == "reference")
    {
        ca.y = eval_parallel(bins, [&](int i) { return cplx(amplitude_pdf(z_centers[i], ctx.sc.config), 0.0); });
        cp.y = eval_parallel(bins, [&](int i) { return cplx(phase_pdf(th_centers[i], ctx.sc.config), 0.0); });
    }
    else
    {
        ca.y = eval_parallel(bins, [&](int i) { return cplx(sim_amplitude_pdf(z_centers[i], ctx.sc.config), 0.0); });
        cp.y = eval_parallel(bins, [&](int i) { return cplx(sim_phase_pdf(th_centers[i], ctx.sc.config), 0.0); });
    }
    ctx.emit(std::move(ca), "pdf_amplitude_" + model + ".csv", false);
    ctx.emit(std::move(cp), "pdf_phase_" + model + ".csv", false);
}

Scenario apply_options(const Scenario& scenario, const RunOptions& options)
{
    Scenario sc = scenario;
    if (options.force_2d)
    {
        sc.config.mode_2d = true;
        sc.id += "-2d";
    }
    if (options.seed)
        sc.experiment.seed = *options.seed;
    if (!options.stats.empty())
        sc.experiment.stats = options.stats;
    if (!options.models.empty())
        sc.experiment.models = options.models;
    if (!options.out_dir.empty())
        sc.experiment.out_dir = options.out_dir;
    return sc;
}

} // namespace

RunResult run_scenario(const Scenario& scenario, const RunOptions& options)
{
    const auto t_start = std::chrono::steady_clock::now();

    Context ctx;
    ctx.sc = apply_options(scenario, options);
    ensure_valid(ctx.sc.config);
    ctx.result.scenario_id = ctx.sc.id;
    ctx.dir = std::filesystem::path(ctx.sc.experiment.out_dir) / ctx.sc.id;
    std::filesystem::create_directories(ctx.dir);
    ctx.result.out_dir = ctx.dir.string();

    for (const std::string& stat : ctx.sc.experiment.stats)
        for (const std::string& model : ctx.sc.experiment.models)
        {
            try
            {
                if (stat == "acf")
                    run_acf(ctx, model);
                else if (stat == "ccf")
                    run_ccf(ctx, model);
                else if (stat == "psd")
                    run_psd(ctx, model);
                else if (stat == "lcr" || stat == "afd")
                    run_level_stats(ctx, stat, model);
                else if (stat == "pdf")
                    run_pdf(ctx, model);
                else
                    throw std::invalid_argument("unknown statistic '" + stat + "'");
            }
            catch (const std::exception& ex)
            {
                ctx.result.failures.push_back(stat + "/" + model + ": " + ex.what());
            }
        }

    std::sort(ctx.result.outputs.begin(), ctx.result.outputs.end());
    nlohmann::json manifest;
    manifest["tool"] = "v2vchan";
    manifest["format"] = 1;
    manifest["scenario_id"] = ctx.sc.id;
    manifest["seed"] = ctx.sc.experiment.seed;
    manifest["config_hash"] = config_hash(ctx.sc.config);
    manifest["outputs"] = nlohmann::json::array();
    for (const std::string& file : ctx.result.outputs)
    {
        std::string path = (ctx.dir / file).string();
        std::ifstream in(path);
        long long rows = -1; // header line does not count
        std::string line;
        while (std::getline(in, line))
            rows++;
        manifest["outputs"].push_back({{"file", file}, {"rows", rows}, {"fnv64", hex64(hash_file(path))}});
    }
    manifest["failures"] = ctx.result.failures;
    {
        std::ofstream out((ctx.dir / "manifest.json").string(), std::ios::binary);
        out << manifest.dump(2) << '\n';
        if (!out)
            throw std::runtime_error("cannot write manifest.json");
    }
    ctx.result.outputs.push_back("manifest.json");

    ctx.result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return ctx.result;
}

std::string write_scenario_angles(const Scenario& scenario, const RunOptions& options)
{
    Scenario sc = apply_options(scenario, options);
    ensure_valid(sc.config);
    std::filesystem::path dir = std::filesystem::path(sc.experiment.out_dir) / sc.id;
    std::filesystem::create_directories(dir);
    std::string path = (dir / "angles.csv").string();
    write_angles_csv(coupled_angle_sets(sc.config), path);
    return path;
}

} // namespace v2v
