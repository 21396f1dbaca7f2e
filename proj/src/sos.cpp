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

#include "v2v/sos.hpp"

#include <cmath>
#include <stdexcept>

#include "v2v/fft.hpp"
#include "v2v/quadrature.hpp"
#include "v2v/special.hpp"

namespace v2v
{

namespace
{

using cplx = std::complex<double>;

constexpr double two_pi = 6.283185307179586;
constexpr int block_samples = 2048;

cplx cis(double x)
{
    return {std::cos(x), std::sin(x)};
}

std::uint64_t mix64(std::uint64_t z)
{
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Uniform phase in [-pi, pi) from (seed, region, ray index); counter based,
// so any single phase is addressable without drawing the ones before it.
double ray_phase(std::uint64_t seed, std::uint32_t region_id, std::uint64_t index)
{
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL * (std::uint64_t(region_id) + 1));
    h = mix64(h + 0x9E3779B97F4A7C15ULL * (index + 1));
    double u = double(h >> 11) * 0x1.0p-53;
    return -M_PI + two_pi * u;
}

struct Ray
{
    double ar, ai; // complex amplitude
    double f;      // Doppler in Hz
};

std::vector<Ray> build_rays(const SosParameterization& par, const ScenarioConfig& cfg, int p, int q)
{
    const double kp1 = cfg.k_rice + 1.0;
    const double k0 = std::sqrt(cfg.k_rice / kp1);
    std::vector<Ray> rays;
    rays.reserve(std::size_t(1) + cfg.n1 + cfg.n2 + cfg.n3 + std::size_t(cfg.n1) * cfg.n2);

    {
        RayTerms t = los_terms(cfg);
        cplx amp = k0 * cis(-two_pi * cfg.fc * delay_los(p, q, cfg));
        rays.push_back({amp.real(), amp.imag(), cfg.f_tmax * t.b + cfg.f_rmax * t.c});
    }

    auto add_region = [&](const CoupledAngleSet& set, const std::vector<double>& psi, Region rg) {
        const double gain = std::sqrt(cfg.eta(rg) / (double(set.rays.size()) * kp1));
        for (std::size_t n = 0; n < set.rays.size(); n++)
        {
            const CoupledRay& ray = set.rays[n];
            RayTerms t = ray_terms(ray, cfg);
            double tau = delay(path_lengths(ray, p, q, cfg));
            cplx amp = gain * cis(psi[n] - two_pi * cfg.fc * tau);
            rays.push_back({amp.real(), amp.imag(), cfg.f_tmax * t.b + cfg.f_rmax * t.c});
        }
    };
    add_region(par.angles.sb1, par.psi_sb1, Region::sb1);
    add_region(par.angles.sb2, par.psi_sb2, Region::sb2);
    add_region(par.angles.sb3, par.psi_sb3, Region::sb3);

    const double gain_db = std::sqrt(cfg.eta_db / (double(cfg.n1) * double(cfg.n2) * kp1));
    for (int i = 0; i < cfg.n1; i++)
    {
        const CoupledRay& tx_ray = par.angles.sb1.rays[i];
        RayTerms tt = db_tx_terms(tx_ray.alpha_t, tx_ray.beta_t, cfg);
        for (int j = 0; j < cfg.n2; j++)
        {
            const CoupledRay& rx_ray = par.angles.sb2.rays[j];
            RayTerms rr = db_rx_terms(rx_ray.alpha_r, rx_ray.beta_r, cfg);
            double tau = delay(path_lengths_db(tx_ray, rx_ray, p, q, cfg));
            double psi = par.psi_db[std::size_t(i) * cfg.n2 + j];
            cplx amp = gain_db * cis(psi - two_pi * cfg.fc * tau);
            rays.push_back({amp.real(), amp.imag(), cfg.f_tmax * tt.b + cfg.f_rmax * rr.c});
        }
    }
    return rays;
}

void check_element(int idx, int m, const char* side)
{
    if (idx < 1 || idx > m)
        throw std::invalid_argument(std::string("generate: ") + side + " element index " + std::to_string(idx) +
                                    " outside array of " + std::to_string(m));
}

// One Bessel characteristic factor per ray group of the finite-ray channel.
struct RayGroup
{
    double gain;
    long long count;
};

std::vector<RayGroup> ray_groups(const ScenarioConfig& cfg)
{
    const double kp1 = cfg.k_rice + 1.0;
    std::vector<RayGroup> g;
    if (cfg.eta_sb1 > 0.0)
        g.push_back({std::sqrt(cfg.eta_sb1 / (cfg.n1 * kp1)), cfg.n1});
    if (cfg.eta_sb2 > 0.0)
        g.push_back({std::sqrt(cfg.eta_sb2 / (cfg.n2 * kp1)), cfg.n2});
    if (cfg.eta_sb3 > 0.0)
        g.push_back({std::sqrt(cfg.eta_sb3 / (cfg.n3 * kp1)), cfg.n3});
    if (cfg.eta_db > 0.0)
        g.push_back({std::sqrt(cfg.eta_db / (double(cfg.n1) * cfg.n2 * kp1)), (long long)(cfg.n1) * cfg.n2});
    return g;
}

double ipow(double base, long long e)
{
    double r = 1.0;
    while (e > 0)
    {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

double charfun(double x, const std::vector<RayGroup>& groups)
{
    double v = 1.0;
    for (const RayGroup& g : groups)
        v *= ipow(bessel_j0(two_pi * g.gain * x), g.count);
    return v;
}

// Truncation point where the envelope bound |J0(u)| <= sqrt(2 / (pi u))
// pushes the remaining integral mass of x * product(...) below tol.
// `singles` lists extra first-power factors (the level and the specular
// amplitude of the target transform).
double pick_xmax(const std::vector<RayGroup>& groups, const std::vector<double>& singles, double tol)
{
    std::vector<RayGroup> all = groups;
    for (double s : singles)
        if (s > 0.0)
            all.push_back({s, 1});

    double half_orders = 0.0;
    for (const RayGroup& g : all)
        half_orders += 0.5 * double(g.count);
    if (half_orders <= 2.2)
        throw ConvergenceError("pick_xmax: too few rays for the tail bound, set HankelOptions::x_max", 0.0, 0.0,
                               std::numeric_limits<double>::infinity());

    for (double x = 0.5; x <= 1e5; x *= 1.25)
    {
        bool active = true;
        for (const RayGroup& g : all)
            if (two_pi * g.gain * x < 2.0 / M_PI)
            {
                active = false;
                break;
            }
        if (!active)
            continue;
        double log_env = 0.0;
        for (const RayGroup& g : all)
            log_env += 0.5 * double(g.count) * std::log(2.0 / (M_PI * two_pi * g.gain * x));
        double log_tail = 2.0 * std::log(x) + log_env - std::log(half_orders - 2.0);
        if (log_tail < std::log(tol))
            return x;
    }
    throw ConvergenceError("pick_xmax: envelope tail bound does not reach tolerance, set HankelOptions::x_max", 0.0,
                           0.0, std::numeric_limits<double>::infinity());
}

} // namespace

SosParameterization parameterize(const ScenarioConfig& cfg, std::uint64_t seed)
{
    SosParameterization par;
    par.seed = seed;
    par.angles = coupled_angle_sets(cfg);

    par.psi_sb1.resize(cfg.n1);
    for (int n = 0; n < cfg.n1; n++)
        par.psi_sb1[n] = ray_phase(seed, 1, n);
    par.psi_sb2.resize(cfg.n2);
    for (int n = 0; n < cfg.n2; n++)
        par.psi_sb2[n] = ray_phase(seed, 2, n);
    par.psi_sb3.resize(cfg.n3);
    for (int n = 0; n < cfg.n3; n++)
        par.psi_sb3[n] = ray_phase(seed, 3, n);
    par.psi_db.resize(std::size_t(cfg.n1) * cfg.n2);
    for (std::size_t n = 0; n < par.psi_db.size(); n++)
        par.psi_db[n] = ray_phase(seed, 4, n);
    return par;
}

ChannelRealization generate(const SosParameterization& par, const ScenarioConfig& cfg, const UniformGrid& grid,
                            int p, int q, Kernel kernel)
{
    ensure_valid(cfg);
    check_element(p, cfg.m_t, "transmit");
    check_element(q, cfg.m_r, "receive");
    double rate = 1.0 / grid.step;
    if (rate < 8.0 * (cfg.f_tmax + cfg.f_rmax) * (1.0 - 1e-12))
        throw std::invalid_argument("generate: sample rate must be at least eight times f_tmax + f_rmax");

    const std::vector<Ray> rays = build_rays(par, cfg, p, q);
    const int nray = int(rays.size());
    const int count = grid.count;

    ChannelRealization out;
    out.grid = grid;
    out.p = p;
    out.q = q;
    out.seed = par.seed;
    out.h.resize(count);

    if (kernel == Kernel::serial_reference)
    {
        for (int s = 0; s < count; s++)
        {
            double t = grid.at(s);
            double re = 0.0, im = 0.0;
            for (int r = 0; r < nray; r++)
            {
                double ang = two_pi * rays[r].f * t;
                double c = std::cos(ang), sn = std::sin(ang);
                re += rays[r].ar * c - rays[r].ai * sn;
                im += rays[r].ar * sn + rays[r].ai * c;
            }
            out.h[s] = {re, im};
        }
        return out;
    }

    std::vector<double> wr(nray), wi(nray);
    for (int r = 0; r < nray; r++)
    {
        double ang = two_pi * rays[r].f * grid.step;
        wr[r] = std::cos(ang);
        wi[r] = std::sin(ang);
    }
    const int nblocks = (count + block_samples - 1) / block_samples;

#pragma omp parallel
    {
        std::vector<double> zr(nray), zi(nray);
#pragma omp for schedule(static)
        for (int blk = 0; blk < nblocks; blk++)
        {
            const int s0 = blk * block_samples;
            const int s1 = std::min(count, s0 + block_samples);
            const double t0 = grid.at(s0);
            for (int r = 0; r < nray; r++)
            {
                double ang = two_pi * rays[r].f * t0;
                double c = std::cos(ang), sn = std::sin(ang);
                zr[r] = rays[r].ar * c - rays[r].ai * sn;
                zi[r] = rays[r].ar * sn + rays[r].ai * c;
            }
            double* zrp = zr.data();
            double* zip = zi.data();
            const double* wrp = wr.data();
            const double* wip = wi.data();
            for (int s = s0; s < s1; s++)
            {
                double re = 0.0, im = 0.0;
                for (int r = 0; r < nray; r++)
                {
                    re += zrp[r];
                    im += zip[r];
                    double tr = zrp[r] * wrp[r] - zip[r] * wip[r];
                    zip[r] = zrp[r] * wip[r] + zip[r] * wrp[r];
                    zrp[r] = tr;
                }
                out.h[s] = {re, im};
            }
        }
    }
    return out;
}

double ray_power_total(const SosParameterization& par, const ScenarioConfig& cfg, int p, int q)
{
    double sum = 0.0;
    for (const Ray& r : build_rays(par, cfg, p, q))
        sum += r.ar * r.ar + r.ai * r.ai;
    return sum;
}

cplx sim_stcf_los(double dt, double dr, double tau, const ScenarioConfig& cfg)
{
    ensure_valid(cfg);
    RayTerms t = los_terms(cfg);
    double wl = cfg.wavelength();
    return cfg.k_rice * cis(two_pi / wl * (dt * t.a_t + dr * t.a_r) +
                            two_pi * tau * (cfg.f_tmax * t.b + cfg.f_rmax * t.c));
}

cplx sim_stcf_sb(const SosParameterization& par, Region region, double dt, double dr, double tau,
                 const ScenarioConfig& cfg)
{
    const CoupledAngleSet* set = nullptr;
    switch (region)
    {
    case Region::sb1:
        set = &par.angles.sb1;
        break;
    case Region::sb2:
        set = &par.angles.sb2;
        break;
    case Region::sb3:
        set = &par.angles.sb3;
        break;
    default:
        throw std::invalid_argument("sim_stcf_sb: double bounce handled by sim_stcf_db");
    }
    const double wl = cfg.wavelength();
    cplx sum(0.0, 0.0);
    for (const CoupledRay& ray : set->rays)
    {
        RayTerms t = ray_terms(ray, cfg);
        sum += cis(two_pi / wl * (dt * t.a_t + dr * t.a_r) + two_pi * tau * (cfg.f_tmax * t.b + cfg.f_rmax * t.c));
    }
    return cfg.eta(region) * sum / double(set->rays.size());
}

cplx sim_stcf_db(const SosParameterization& par, double dt, double dr, double tau, const ScenarioConfig& cfg)
{
    const double wl = cfg.wavelength();
    cplx tx_sum(0.0, 0.0);
    for (const CoupledRay& ray : par.angles.sb1.rays)
    {
        RayTerms t = db_tx_terms(ray.alpha_t, ray.beta_t, cfg);
        tx_sum += cis(two_pi / wl * dt * t.a_t + two_pi * tau * cfg.f_tmax * t.b);
    }
    cplx rx_sum(0.0, 0.0);
    for (const CoupledRay& ray : par.angles.sb2.rays)
    {
        RayTerms t = db_rx_terms(ray.alpha_r, ray.beta_r, cfg);
        rx_sum += cis(two_pi / wl * dr * t.a_r + two_pi * tau * cfg.f_rmax * t.c);
    }
    return cfg.eta_db * tx_sum / double(par.angles.sb1.rays.size()) * rx_sum / double(par.angles.sb2.rays.size());
}

cplx sim_stcf(const SosParameterization& par, double dt, double dr, double tau, const ScenarioConfig& cfg)
{
    cplx sum = sim_stcf_los(dt, dr, tau, cfg);
    sum += sim_stcf_sb(par, Region::sb1, dt, dr, tau, cfg);
    sum += sim_stcf_sb(par, Region::sb2, dt, dr, tau, cfg);
    sum += sim_stcf_sb(par, Region::sb3, dt, dr, tau, cfg);
    sum += sim_stcf_db(par, dt, dr, tau, cfg);
    return sum / (cfg.k_rice + 1.0);
}

StatCurve sim_doppler_psd(const SosParameterization& par, const ScenarioConfig& cfg, const UniformGrid& lag_grid)
{
    ensure_valid(cfg);
    double slow = std::fmin(cfg.f_tmax, cfg.f_rmax);
    if (lag_grid.back() * slow < 4.0 * (1.0 - 1e-9))
        throw std::invalid_argument(
            "sim_doppler_psd: lag grid must cover four periods of the slower Doppler component");

    std::vector<cplx> rho(lag_grid.count);
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < lag_grid.count; i++)
    {
        try
        {
            rho[i] = sim_stcf(par, 0.0, 0.0, lag_grid.at(i), cfg);
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

    StatCurve s = spectrum_from_correlation(rho, lag_grid, Taper::tukey_quarter);
    s.model_tag = "sos-analytic";
    return s;
}

double sim_amplitude_pdf(double z, const ScenarioConfig& cfg, const HankelOptions& opt)
{
    if (!(z >= 0.0) || !std::isfinite(z))
        throw std::domain_error("sim_amplitude_pdf: envelope level must be nonnegative");
    ensure_valid(cfg);
    if (z == 0.0)
        return 0.0;

    RiceanParams rp = ricean_params(cfg);
    std::vector<RayGroup> groups = ray_groups(cfg);
    double xm = opt.x_max > 0.0 ? opt.x_max : pick_xmax(groups, {z, rp.spec_amp}, opt.tail_tol);

    auto f = [&](double x) {
        return charfun(x, groups) * bessel_j0(two_pi * z * x) * bessel_j0(two_pi * rp.spec_amp * x) * x;
    };
    double integral = integrate_1d(f, 0.0, xm, opt.quad);
    return 4.0 * M_PI * M_PI * z * integral;
}

double sim_phase_pdf(double theta, const ScenarioConfig& cfg, const HankelOptions& opt)
{
    if (!std::isfinite(theta))
        throw std::domain_error("sim_phase_pdf: phase must be finite");
    ensure_valid(cfg);

    RiceanParams rp = ricean_params(cfg);
    std::vector<RayGroup> groups = ray_groups(cfg);
    const double xm = opt.x_max > 0.0 ? opt.x_max : pick_xmax(groups, {}, opt.tail_tol);

    double hard_max = rp.spec_amp;
    for (const RayGroup& g : groups)
        hard_max += double(g.count) * g.gain;
    const double zmax = std::fmin(rp.spec_amp + 12.0 * std::sqrt(rp.sigma0_sq), hard_max);
    const double cd = std::cos(theta - rp.spec_phase);

    auto outer = [&](double z) {
        double d2 = z * z + rp.spec_amp * rp.spec_amp - 2.0 * z * rp.spec_amp * cd;
        double d = std::sqrt(std::fmax(0.0, d2));
        auto inner = [&](double x) { return charfun(x, groups) * bessel_j0(two_pi * x * d) * x; };
        return z * integrate_1d(inner, 0.0, xm, opt.quad);
    };
    QuadratureSpec outer_spec;
    outer_spec.abs_tol = 1e-9;
    outer_spec.rel_tol = 1e-7;
    outer_spec.max_subdivisions = 800;
    return two_pi * integrate_1d(outer, 0.0, zmax, outer_spec);
}

SpectralMoments sim_spectral_moments(const SosParameterization& par, const ScenarioConfig& cfg)
{
    ensure_valid(cfg);
    const double kp1 = cfg.k_rice + 1.0;
    SpectralMoments m;
    m.b0 = 0.5 / kp1;

    auto region_means = [&](const CoupledAngleSet& set, double& mean1, double& mean2) {
        mean1 = 0.0;
        mean2 = 0.0;
        for (const CoupledRay& ray : set.rays)
        {
            RayTerms t = ray_terms(ray, cfg);
            double f = cfg.f_tmax * t.b + cfg.f_rmax * t.c;
            mean1 += f;
            mean2 += f * f;
        }
        mean1 /= double(set.rays.size());
        mean2 /= double(set.rays.size());
    };

    const CoupledAngleSet* sets[] = {&par.angles.sb1, &par.angles.sb2, &par.angles.sb3};
    const Region regions[] = {Region::sb1, Region::sb2, Region::sb3};
    for (int i = 0; i < 3; i++)
    {
        double e1, e2;
        region_means(*sets[i], e1, e2);
        double eta = cfg.eta(regions[i]);
        m.b1 += eta / (2.0 * kp1) * two_pi * e1;
        m.b2 += eta / (2.0 * kp1) * two_pi * two_pi * e2;
    }

    double mb = 0.0, mb2 = 0.0;
    for (const CoupledRay& ray : par.angles.sb1.rays)
    {
        double v = cfg.f_tmax * db_tx_terms(ray.alpha_t, ray.beta_t, cfg).b;
        mb += v;
        mb2 += v * v;
    }
    mb /= double(par.angles.sb1.rays.size());
    mb2 /= double(par.angles.sb1.rays.size());
    double mc = 0.0, mc2 = 0.0;
    for (const CoupledRay& ray : par.angles.sb2.rays)
    {
        double v = cfg.f_rmax * db_rx_terms(ray.alpha_r, ray.beta_r, cfg).c;
        mc += v;
        mc2 += v * v;
    }
    mc /= double(par.angles.sb2.rays.size());
    mc2 /= double(par.angles.sb2.rays.size());

    // the published simulator weight for the double bounce, eta_db/(K+1)
    m.b1 += cfg.eta_db / kp1 * two_pi * (mb + mc);
    m.b2 += cfg.eta_db / kp1 * two_pi * two_pi * (mb2 + 2.0 * mb * mc + mc2);
    return m;
}

double sim_lcr(double r, const SosParameterization& par, const ScenarioConfig& cfg)
{
    return lcr(r, cfg.k_rice, sim_spectral_moments(par, cfg));
}

double sim_lcr(double r, const ScenarioConfig& cfg, const SpectralMoments& m)
{
    return lcr(r, cfg.k_rice, m);
}

double sim_afd(double r, const SosParameterization& par, const ScenarioConfig& cfg)
{
    return afd(r, cfg.k_rice, sim_spectral_moments(par, cfg));
}

double sim_afd(double r, const ScenarioConfig& cfg, const SpectralMoments& m)
{
    return afd(r, cfg.k_rice, m);
}

PrefactorDiagnostic prefactor_diagnostic(const SosParameterization& par, const ScenarioConfig& cfg)
{
    ensure_valid(cfg);
    const double kp1 = cfg.k_rice + 1.0;

    double mb = 0.0, mb2 = 0.0;
    for (const CoupledRay& ray : par.angles.sb1.rays)
    {
        double v = cfg.f_tmax * db_tx_terms(ray.alpha_t, ray.beta_t, cfg).b;
        mb += v;
        mb2 += v * v;
    }
    mb /= double(par.angles.sb1.rays.size());
    mb2 /= double(par.angles.sb1.rays.size());
    double mc = 0.0, mc2 = 0.0;
    for (const CoupledRay& ray : par.angles.sb2.rays)
    {
        double v = cfg.f_rmax * db_rx_terms(ray.alpha_r, ray.beta_r, cfg).c;
        mc += v;
        mc2 += v * v;
    }
    mc /= double(par.angles.sb2.rays.size());
    mc2 /= double(par.angles.sb2.rays.size());

    PrefactorDiagnostic d;
    d.db_b1_published = cfg.eta_db / kp1 * two_pi * (mb + mc);
    d.db_b1_halved = 0.5 * d.db_b1_published;
    d.db_b2_published = cfg.eta_db / kp1 * two_pi * two_pi * (mb2 + 2.0 * mb * mc + mc2);
    d.db_b2_halved = 0.5 * d.db_b2_published;

    SpectralMoments m = sim_spectral_moments(par, cfg);
    d.total_b2_published = m.b2;
    d.total_b2_halved = m.b2 - d.db_b2_halved;
    d.note = "double-bounce moment weight eta_db/(K+1) is twice the single-bounce pattern "
             "eta/(2(K+1)); halved totals shown for comparison";
    return d;
}

} // namespace v2v
