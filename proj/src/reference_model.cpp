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

#include "v2v/reference_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "v2v/fft.hpp"
#include "v2v/special.hpp"

namespace v2v
{

namespace
{

using cplx = std::complex<double>;

constexpr double half_pi = 1.5707963267948966;
constexpr double two_pi = 6.283185307179586;

const GaussLegendre& gl64()
{
    static const GaussLegendre gl = gauss_legendre(64);
    return gl;
}

// Expectation of fn over the angular density of a single-bounce region. In
// 3-D the free direction integrates against the sphere density over the
// shifted azimuth window and the elevation band; in planar mode it
// integrates against the von Mises law with all elevations at zero.
template <class T, class Fn>
T region_expect(Region rg, const ScenarioConfig& cfg, Fn&& fn, const QuadratureSpec& spec)
{
    const VmfParams& p = cfg.vmf(rg);
    const double lo = p.alpha0 - M_PI;
    const double hi = p.alpha0 + M_PI;
    if (cfg.mode_2d)
    {
        auto f = [&](double alpha) -> T { return vm_pdf(alpha, p) * fn(couple(rg, alpha, 0.0, cfg)); };
        return detail::adaptive_1d<T>(f, lo, hi, spec, "region_expect");
    }
    auto f = [&](double alpha, double beta) -> T {
        if (rg == Region::sb3 && std::cos(beta) < 1e-12)
            return T{};
        return vmf_pdf(alpha, beta, p) * fn(couple(rg, alpha, beta, cfg));
    };
    return detail::adaptive_2d<T>(f, lo, hi, -half_pi, half_pi, spec, "region_expect");
}

// Expectation over one side of the double bounce, where no coupling applies
// and fn sees the raw direction.
template <class T, class Fn>
T side_expect(const VmfParams& p, const ScenarioConfig& cfg, Fn&& fn, const QuadratureSpec& spec)
{
    const double lo = p.alpha0 - M_PI;
    const double hi = p.alpha0 + M_PI;
    if (cfg.mode_2d)
    {
        auto f = [&](double alpha) -> T { return vm_pdf(alpha, p) * fn(alpha, 0.0); };
        return detail::adaptive_1d<T>(f, lo, hi, spec, "side_expect");
    }
    auto f = [&](double alpha, double beta) -> T { return vmf_pdf(alpha, beta, p) * fn(alpha, beta); };
    return detail::adaptive_2d<T>(f, lo, hi, -half_pi, half_pi, spec, "side_expect");
}

cplx cis(double x)
{
    return {std::cos(x), std::sin(x)};
}

} // namespace

RiceanParams ricean_params(const ScenarioConfig& cfg)
{
    ensure_valid(cfg);
    RiceanParams rp;
    rp.spec_amp = std::sqrt(cfg.k_rice / (cfg.k_rice + 1.0));
    rp.sigma0_sq = 0.5 / (cfg.k_rice + 1.0);
    rp.spec_phase = std::remainder(-two_pi * cfg.fc * delay_los(1, 1, cfg), two_pi);
    return rp;
}

double amplitude_pdf(double z, const ScenarioConfig& cfg)
{
    if (!(z >= 0.0))
        throw std::domain_error("amplitude_pdf: envelope level must be nonnegative");
    RiceanParams rp = ricean_params(cfg);
    double s2 = rp.sigma0_sq;
    double dz = z - rp.spec_amp;
    return z / s2 * std::exp(-0.5 * dz * dz / s2) * bessel_i0_scaled(z * rp.spec_amp / s2);
}

double phase_pdf(double theta, const ScenarioConfig& cfg)
{
    RiceanParams rp = ricean_params(cfg);
    double k = cfg.k_rice;
    double dl = theta - rp.spec_phase;
    double cd = std::cos(dl), sd = std::sin(dl);
    return std::exp(-k) / two_pi +
           0.5 * std::sqrt(k / M_PI) * cd * std::exp(-k * sd * sd) * (1.0 + erf(std::sqrt(k) * cd));
}

cplx stcf_los(double dt, double dr, double tau, const ScenarioConfig& cfg)
{
    ensure_valid(cfg);
    RayTerms t = los_terms(cfg);
    double wl = cfg.wavelength();
    return cfg.k_rice * cis(two_pi / wl * (dt * t.a_t + dr * t.a_r) +
                            two_pi * tau * (cfg.f_tmax * t.b + cfg.f_rmax * t.c));
}

cplx stcf_sb(Region region, double dt, double dr, double tau, const ScenarioConfig& cfg, const QuadratureSpec& spec)
{
    if (region == Region::db)
        throw std::invalid_argument("stcf_sb: double bounce handled by stcf_db");
    ensure_valid(cfg);
    const double wl = cfg.wavelength();
    auto fn = [&](const CoupledRay& ray) -> cplx {
        RayTerms t = ray_terms(ray, cfg);
        return cis(two_pi / wl * (dt * t.a_t + dr * t.a_r) +
                   two_pi * tau * (cfg.f_tmax * t.b + cfg.f_rmax * t.c));
    };
    return cfg.eta(region) * region_expect<cplx>(region, cfg, fn, spec);
}

cplx stcf_db(double dt, double dr, double tau, const ScenarioConfig& cfg, const QuadratureSpec& spec)
{
    ensure_valid(cfg);
    const double wl = cfg.wavelength();
    auto tx = [&](double alpha, double beta) -> cplx {
        RayTerms t = db_tx_terms(alpha, beta, cfg);
        return cis(two_pi / wl * dt * t.a_t + two_pi * tau * cfg.f_tmax * t.b);
    };
    auto rx = [&](double alpha, double beta) -> cplx {
        RayTerms t = db_rx_terms(alpha, beta, cfg);
        return cis(two_pi / wl * dr * t.a_r + two_pi * tau * cfg.f_rmax * t.c);
    };
    return cfg.eta_db * side_expect<cplx>(cfg.vmf_sb1, cfg, tx, spec) * side_expect<cplx>(cfg.vmf_sb2, cfg, rx, spec);
}

cplx stcf_total(double dt, double dr, double tau, const ScenarioConfig& cfg, const QuadratureSpec& spec)
{
    cplx sum = stcf_los(dt, dr, tau, cfg);
    sum += stcf_sb(Region::sb1, dt, dr, tau, cfg, spec);
    sum += stcf_sb(Region::sb2, dt, dr, tau, cfg, spec);
    sum += stcf_sb(Region::sb3, dt, dr, tau, cfg, spec);
    sum += stcf_db(dt, dr, tau, cfg, spec);
    return sum / (cfg.k_rice + 1.0);
}

StatCurve doppler_psd(const ScenarioConfig& cfg, const UniformGrid& lag_grid, const QuadratureSpec& spec)
{
    ensure_valid(cfg);
    double slow = std::fmin(cfg.f_tmax, cfg.f_rmax);
    if (lag_grid.back() * slow < 4.0 * (1.0 - 1e-9))
        throw std::invalid_argument("doppler_psd: lag grid must cover four periods of the slower Doppler component");

    std::vector<cplx> rho(lag_grid.count);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < lag_grid.count; i++)
    {
        try
        {
            rho[i] = stcf_total(0.0, 0.0, lag_grid.at(i), cfg, spec);
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
    s.model_tag = "reference";
    return s;
}

SpectralMoments spectral_moments(const ScenarioConfig& cfg, const QuadratureSpec& spec)
{
    ensure_valid(cfg);
    const double kp1 = cfg.k_rice + 1.0;
    SpectralMoments m;
    m.b0 = 0.5 / kp1;

    auto doppler = [&](const CoupledRay& ray) {
        RayTerms t = ray_terms(ray, cfg);
        return cfg.f_tmax * t.b + cfg.f_rmax * t.c;
    };
    const Region sb[] = {Region::sb1, Region::sb2, Region::sb3};
    for (Region rg : sb)
    {
        double eta = cfg.eta(rg);
        if (eta == 0.0)
            continue;
        double e1 = region_expect<double>(rg, cfg, [&](const CoupledRay& r) { return doppler(r); }, spec);
        double e2 = region_expect<double>(rg, cfg,
                                          [&](const CoupledRay& r) {
                                              double f = doppler(r);
                                              return f * f;
                                          },
                                          spec);
        m.b1 += eta / (2.0 * kp1) * two_pi * e1;
        m.b2 += eta / (2.0 * kp1) * two_pi * two_pi * e2;
    }

    if (cfg.eta_db > 0.0)
    {
        auto bt = [&](double a, double b) { return db_tx_terms(a, b, cfg).b; };
        auto cr = [&](double a, double b) { return db_rx_terms(a, b, cfg).c; };
        double eb = side_expect<double>(cfg.vmf_sb1, cfg, [&](double a, double b) { return bt(a, b); }, spec);
        double eb2 = side_expect<double>(cfg.vmf_sb1, cfg,
                                         [&](double a, double b) {
                                             double v = bt(a, b);
                                             return v * v;
                                         },
                                         spec);
        double ec = side_expect<double>(cfg.vmf_sb2, cfg, [&](double a, double b) { return cr(a, b); }, spec);
        double ec2 = side_expect<double>(cfg.vmf_sb2, cfg,
                                         [&](double a, double b) {
                                             double v = cr(a, b);
                                             return v * v;
                                         },
                                         spec);
        double f1 = cfg.f_tmax * eb + cfg.f_rmax * ec;
        double f2 = cfg.f_tmax * cfg.f_tmax * eb2 + 2.0 * cfg.f_tmax * cfg.f_rmax * eb * ec +
                    cfg.f_rmax * cfg.f_rmax * ec2;
        m.b1 += cfg.eta_db / (2.0 * kp1) * two_pi * f1;
        m.b2 += cfg.eta_db / (2.0 * kp1) * two_pi * two_pi * f2;
    }
    return m;
}

double lcr(double r, double k_rice, const SpectralMoments& m)
{
    if (!(r >= 0.0))
        throw std::domain_error("lcr: level must be nonnegative");
    if (r == 0.0)
        return 0.0;
    if (!(m.b0 > 0.0))
        throw std::domain_error("lcr: b0 must be positive");

    const double kp1 = k_rice + 1.0;
    const double denom = m.b0 * m.b2 - m.b1 * m.b1;
    const double arg = 2.0 * std::sqrt(k_rice * kp1) * r;
    const double expo = std::exp(-k_rice - kp1 * r * r);
    const GaussLegendre& gl = gl64();

    if (denom > 1e-14 * m.b0 * m.b2)
    {
        double sq = std::sqrt(std::fmax(0.0, m.b2 / m.b0 - (m.b1 / m.b0) * (m.b1 / m.b0)));
        double chi = std::sqrt(k_rice * m.b1 * m.b1 / denom);
        double integral = 0.0;
        for (int i = 0; i < 64; i++)
        {
            double th = 0.25 * M_PI * (gl.nodes[i] + 1.0);
            double st = std::sin(th), ct = std::cos(th);
            double cs = chi * st;
            double val = std::cosh(arg * ct) * (std::exp(-cs * cs) + std::sqrt(M_PI) * cs * erf(cs));
            integral += gl.weights[i] * val;
        }
        integral *= 0.25 * M_PI;
        return 2.0 * r * std::sqrt(kp1) / std::pow(M_PI, 1.5) * sq * expo * integral;
    }

    // b0 b2 -> b1^2: the slope spread collapses onto the mean Doppler drift
    // and the bracket degenerates to its linear term
    if (k_rice * m.b1 * m.b1 <= 0.0)
        return 0.0;
    double integral = 0.0;
    for (int i = 0; i < 64; i++)
    {
        double th = 0.25 * M_PI * (gl.nodes[i] + 1.0);
        integral += gl.weights[i] * std::cosh(arg * std::cos(th)) * std::sin(th);
    }
    integral *= 0.25 * M_PI;
    return 2.0 * r * std::sqrt(kp1) / std::pow(M_PI, 1.5) * expo * std::sqrt(M_PI) *
           (std::sqrt(k_rice) * std::fabs(m.b1) / m.b0) * integral;
}

double lcr(double r, const ScenarioConfig& cfg, const QuadratureSpec& spec)
{
    return lcr(r, cfg.k_rice, spectral_moments(cfg, spec));
}

double afd(double r, double k_rice, const SpectralMoments& m)
{
    if (!(r >= 0.0))
        throw std::domain_error("afd: level must be nonnegative");
    if (r == 0.0)
        return 0.0;
    double below = 1.0 - marcum_q1(std::sqrt(2.0 * k_rice), std::sqrt(2.0 * (k_rice + 1.0)) * r);
    double rate = lcr(r, k_rice, m);
    if (rate <= 0.0)
        return below <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return below / rate;
}

double afd(double r, const ScenarioConfig& cfg, const QuadratureSpec& spec)
{
    return afd(r, cfg.k_rice, spectral_moments(cfg, spec));
}

} // namespace v2v
