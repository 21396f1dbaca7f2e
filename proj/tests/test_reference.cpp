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

// Closed-form channel statistics against routes that share none of their
// machinery: Monte Carlo expectations over the sampler for the correlation
// integrals, textbook closed forms for the envelope laws, and an isotropic
// special case with a known product form.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include <v2v/reference_model.hpp>
#include <v2v/special.hpp>

#include "testkit/configs.hpp"
#include "testkit/oracles.hpp"

using namespace v2v;
namespace tk = v2v::testkit;

namespace
{

constexpr double two_pi = 6.283185307179586;

QuadratureSpec tight_spec()
{
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-9;
    spec.max_subdivisions = 6000;
    return spec;
}

} // namespace

TEST_CASE("component correlations at zero recover the power split")
{
    for (ScenarioConfig cfg : {tk::low_vtd_config(), tk::high_vtd_config()})
    {
        CHECK(std::abs(stcf_los(0.0, 0.0, 0.0, cfg) - std::complex<double>(cfg.k_rice, 0.0)) < 1e-12);

        for (Region r : {Region::sb1, Region::sb2, Region::sb3})
        {
            std::complex<double> v = stcf_sb(r, 0.0, 0.0, 0.0, cfg);
            CHECK(v.real() == doctest::Approx(cfg.eta(r)).epsilon(1e-9));
            CHECK(std::abs(v.imag()) < 1e-9);
        }

        std::complex<double> db = stcf_db(0.0, 0.0, 0.0, cfg);
        CHECK(db.real() == doctest::Approx(cfg.eta_db).epsilon(1e-9));

        std::complex<double> total = stcf_total(0.0, 0.0, 0.0, cfg);
        CHECK(total.real() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(total.imag()) < 1e-9);
    }
}

TEST_CASE("correlation obeys the conjugate reflection symmetry")
{
    ScenarioConfig cfg = tk::low_vtd_config();
    const double lam = cfg.wavelength();

    for (auto [dt, dr, tau] : {std::tuple{0.5 * lam, 0.25 * lam, 4.0e-4},
                               std::tuple{0.0, 1.5 * lam, 1.0e-3}})
    {
        std::complex<double> fwd = stcf_total(dt, dr, tau, cfg);
        std::complex<double> rev = stcf_total(-dt, -dr, -tau, cfg);
        CHECK(std::abs(fwd - std::conj(rev)) < 1e-9);
    }
}

TEST_CASE("single-bounce correlation matches a Monte Carlo expectation")
{
    ScenarioConfig cfg = tk::low_vtd_config();
    const double lam = cfg.wavelength();
    const double dt = 0.5 * lam;
    const double dr = 0.3 * lam;
    const double tau = 1.0e-3;
    const double wave = two_pi / lam;

    for (Region region : {Region::sb1, Region::sb3})
    {
        auto phase = [&](const CoupledRay& ray) {
            RayTerms t = ray_terms(ray, cfg);
            double arg = wave * (dt * t.a_t + dr * t.a_r) +
                         two_pi * tau * (cfg.f_tmax * t.b + cfg.f_rmax * t.c);
            return std::exp(std::complex<double>(0.0, arg));
        };

        double se = 0.0;
        std::complex<double> mc = tk::mc_region_expect(region, cfg, phase, 200000, 2024, &se);
        std::complex<double> closed = stcf_sb(region, dt, dr, tau, cfg, tight_spec());

        CHECK(std::abs(closed / cfg.eta(region) - mc) < 4.0 * se);
    }
}

TEST_CASE("double-bounce correlation is the product of independent sides")
{
    ScenarioConfig cfg = tk::high_vtd_config();
    const double lam = cfg.wavelength();
    const double dt = 0.5 * lam;
    const double dr = 1.0 * lam;
    const double tau = 6.0e-4;
    const double wave = two_pi / lam;

    auto tx_phase = [&](const CoupledRay& ray) {
        RayTerms t = db_tx_terms(ray.alpha_t, ray.beta_t, cfg);
        return std::exp(std::complex<double>(0.0, wave * dt * t.a_t + two_pi * tau * cfg.f_tmax * t.b));
    };
    auto rx_phase = [&](const CoupledRay& ray) {
        RayTerms t = db_rx_terms(ray.alpha_r, ray.beta_r, cfg);
        return std::exp(std::complex<double>(0.0, wave * dr * t.a_r + two_pi * tau * cfg.f_rmax * t.c));
    };

    double se_t = 0.0, se_r = 0.0;
    std::complex<double> mt = tk::mc_region_expect(Region::sb1, cfg, tx_phase, 200000, 7, &se_t);
    std::complex<double> mr = tk::mc_region_expect(Region::sb2, cfg, rx_phase, 200000, 8, &se_r);

    std::complex<double> closed = stcf_db(dt, dr, tau, cfg, tight_spec());
    std::complex<double> mc = cfg.eta_db * mt * mr;

    // first-order error propagation through the product
    double se = cfg.eta_db * (se_t * std::abs(mr) + se_r * std::abs(mt) + se_t * se_r);
    CHECK(std::abs(closed - mc) < 4.0 * se + 1e-9);
}

TEST_CASE("isotropic planar double bounce reduces to the Bessel product")
{
    ScenarioConfig cfg = tk::high_vtd_config();
    cfg.mode_2d = true;
    cfg.vmf_sb1.k = 0.0;
    cfg.vmf_sb2.k = 0.0;

    for (double tau : {1.0e-4, 7.0e-4, 1.6e-3})
    {
        std::complex<double> got = stcf_db(0.0, 0.0, tau, cfg, tight_spec());
        double want = cfg.eta_db * bessel_j0(two_pi * cfg.f_tmax * tau) * bessel_j0(two_pi * cfg.f_rmax * tau);
        CHECK(std::abs(got - std::complex<double>(want, 0.0)) < 1e-5);
    }
}

TEST_CASE("envelope density is a unit-power law")
{
    QuadratureSpec spec = tight_spec();
    for (ScenarioConfig cfg : {tk::low_vtd_config(), tk::high_vtd_config()})
    {
        RiceanParams rp = ricean_params(cfg);
        CHECK(rp.spec_amp == doctest::Approx(std::sqrt(cfg.k_rice / (cfg.k_rice + 1.0))).epsilon(1e-14));
        CHECK(rp.sigma0_sq == doctest::Approx(0.5 / (cfg.k_rice + 1.0)).epsilon(1e-14));

        double mass = integrate_1d([&](double z) { return amplitude_pdf(z, cfg); }, 0.0, 8.0, spec);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

        double power = integrate_1d([&](double z) { return z * z * amplitude_pdf(z, cfg); }, 0.0, 8.0, spec);
        CHECK(power == doctest::Approx(1.0).epsilon(1e-9));

        CHECK(amplitude_pdf(0.0, cfg) == 0.0);
    }
}

TEST_CASE("phase density integrates to one and flattens without a specular path")
{
    QuadratureSpec spec = tight_spec();

    ScenarioConfig cfg = tk::low_vtd_config();
    double mass = integrate_1d([&](double t) { return phase_pdf(t, cfg); }, -M_PI, M_PI, spec);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

    // concentration around the specular phase
    RiceanParams rp = ricean_params(cfg);
    CHECK(phase_pdf(rp.spec_phase, cfg) > phase_pdf(rp.spec_phase + 2.0, cfg));

    ScenarioConfig diffuse = tk::high_vtd_config();
    diffuse.k_rice = 0.0;
    for (double t : {-3.0, -1.1, 0.0, 0.7, 2.9})
        CHECK(phase_pdf(t, diffuse) == doctest::Approx(1.0 / two_pi).epsilon(1e-12));
}

TEST_CASE("crossing rate reduces to the classic isotropic form")
{
    // a diffuse channel whose quadrature slope spectrum is symmetric:
    // b1 = 0 and b2/b0 = (2 pi fm)^2 / 2 give sqrt(2 pi) fm r exp(-r^2)
    const double fm = 91.0;
    SpectralMoments m;
    m.b0 = 0.5;
    m.b1 = 0.0;
    m.b2 = 0.25 * two_pi * two_pi * fm * fm;

    for (double r : {0.2, 0.7, 1.0, 1.9})
    {
        double want = std::sqrt(two_pi) * fm * r * std::exp(-r * r);
        CHECK(lcr(r, 0.0, m) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("fade duration times crossing rate equals the below-level mass")
{
    ScenarioConfig cfg = tk::low_vtd_config();
    SpectralMoments m = spectral_moments(cfg);

    CHECK(m.b0 == doctest::Approx(0.5 / (cfg.k_rice + 1.0)).epsilon(1e-12));
    CHECK(m.b2 > 0.0);

    const double k = cfg.k_rice;
    for (double r : {0.3, 0.8, 1.2})
    {
        double below = 1.0 - marcum_q1(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0)) * r);
        CHECK(afd(r, k, m) * lcr(r, k, m) == doctest::Approx(below).epsilon(1e-9));
    }

    // levels below every sample are never crossed
    CHECK(lcr(0.0, k, m) == 0.0);

    // far above the envelope mean the dwell below the level approaches all of time
    double deep = afd(3.5, k, m);
    CHECK(std::isfinite(deep));
    CHECK(deep * lcr(3.5, k, m) > 0.999);
}

TEST_CASE("doppler spectrum conserves the zero-lag correlation")
{
    ScenarioConfig cfg = tk::low_vtd_config();
    UniformGrid lags = UniformGrid::centered(4.0e-4, 37);

    StatCurve psd = doppler_psd(cfg, lags);
    REQUIRE(int(psd.x.size()) == 37);

    const double df = psd.x[1] - psd.x[0];
    std::complex<double> total{0.0, 0.0};
    double max_imag = 0.0;
    int peak = 0;
    for (int i = 0; i < int(psd.y.size()); i++)
    {
        total += psd.y[i];
        max_imag = std::fmax(max_imag, std::fabs(psd.y[i].imag()));
        if (psd.y[i].real() > psd.y[peak].real())
            peak = i;
    }

    CHECK((total * df).real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_imag < 1e-12);

    // head-on motion with equal speeds puts the specular line at zero
    CHECK(std::fabs(psd.x[peak]) < df / 2.0);

    // frequency span covers both Doppler shifts
    CHECK(psd.x.back() > cfg.f_tmax + cfg.f_rmax);
}
