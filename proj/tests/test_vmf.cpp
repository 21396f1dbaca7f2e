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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <v2v/quadrature.hpp>
#include <v2v/special.hpp>
#include <v2v/vmf.hpp>

using namespace v2v;

namespace
{

const VmfParams sphere_sets[] = {
    {0.3787364476827443, 0.11693705988362009, 9.6},
    {2.5796453666431946, 0.3002196854904688, 3.6},
    {2.9950130270385663, 0.5515240436923533, 11.5},
    {0.3787364476827443, 0.11693705988362009, 0.6},
    {2.5796453666431946, 0.3002196854904688, 1.3},
    {0.0, 0.0, 0.0},
};

// chi-square critical value approximated per Wilson-Hilferty
double chi2_critical(int dof, double z)
{
    double c = 2.0 / (9.0 * dof);
    double t = 1.0 - c + z * std::sqrt(c);
    return dof * t * t * t;
}

} // namespace

TEST_CASE("sphere density integrates to one for every shipped concentration")
{
    QuadratureSpec spec;
    spec.abs_tol = 1e-9;
    spec.rel_tol = 1e-9;
    spec.max_subdivisions = 4000;

    for (const VmfParams& p : sphere_sets)
    {
        double mass = integrate_2d([&](double a, double b) { return vmf_pdf(a, b, p); },
                                   -M_PI, M_PI, -M_PI_2, M_PI_2, spec);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("density peaks at the mean direction and rejects bad arguments")
{
    VmfParams p{0.4, 0.2, 5.0};
    double peak = vmf_pdf(p.alpha0, p.beta0, p);
    for (double da : {-0.5, -0.1, 0.1, 0.5})
        CHECK(vmf_pdf(p.alpha0 + da, p.beta0, p) < peak);

    CHECK_THROWS_AS(vmf_pdf(0.0, 1.8, p), std::domain_error);
    CHECK_THROWS_AS(vmf_pdf(0.0, -1.8, p), std::domain_error);

    VmfParams bad{0.0, 0.0, -1.0};
    CHECK_THROWS_AS(validate_vmf(bad), std::exception);
}

TEST_CASE("zero concentration degenerates to the uniform sphere")
{
    VmfParams p{1.0, -0.4, 0.0}; // mean direction is irrelevant at k = 0
    for (double a : {-3.0, -1.0, 0.5, 2.0})
        for (double b : {-1.3, -0.2, 0.0, 0.8})
            CHECK(vmf_pdf(a, b, p) == doctest::Approx(std::cos(b) / (4.0 * M_PI)).epsilon(1e-12));

    CHECK(vm_pdf(2.2, p) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("planar law is the normalized conditional on the horizontal plane")
{
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-10;

    for (double k : {0.6, 3.6, 11.5})
    {
        VmfParams p{0.3, 0.0, k};
        double mass = integrate_1d([&](double a) { return vm_pdf(a, p); }, -M_PI, M_PI, spec);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

        // the planar density keeps the von Mises shape
        CHECK(vm_pdf(p.alpha0, p) ==
              doctest::Approx(std::exp(k) / (2.0 * M_PI * bessel_i0(k))).epsilon(1e-12));
    }
}

TEST_CASE("elevation marginal matches the numeric azimuth integral")
{
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-10;

    for (const VmfParams& p : {sphere_sets[0], sphere_sets[1], sphere_sets[4]})
    {
        VmfMarginals marg(p, false);
        CHECK(marg.mass_defect() < 1e-6);

        for (double b : {-0.9, -0.2, 0.1, 0.4, 1.1})
        {
            double numeric = integrate_1d([&](double a) { return vmf_pdf(a, b, p); }, -M_PI, M_PI, spec);
            CHECK(marg.elevation_pdf(b) == doctest::Approx(numeric).epsilon(1e-6));
        }
    }
}

TEST_CASE("marginal cdf inversion round trips")
{
    for (const VmfParams& p : {sphere_sets[0], sphere_sets[2], sphere_sets[3]})
    {
        VmfMarginals marg(p, false);
        auto [lo, hi] = marg.azimuth_domain();
        CHECK(hi - lo == doctest::Approx(2.0 * M_PI));

        for (double u : {1e-4, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0 - 1e-4})
        {
            double a = marg.azimuth_icdf(u);
            CHECK(a >= lo);
            CHECK(a <= hi);
            CHECK(marg.azimuth_cdf(a) == doctest::Approx(u).epsilon(1e-9));

            double b = marg.elevation_icdf(u);
            CHECK(std::fabs(b) <= M_PI_2);
            CHECK(marg.elevation_cdf(b) == doctest::Approx(u).epsilon(1e-9));
        }

        // cdf is monotone over the domain; the scan keeps a small inset from
        // the upper endpoint, which is the circular cut back onto lo
        const double top = hi - 1e-9 * (hi - lo);
        double prev = -1.0;
        for (int i = 0; i <= 40; i++)
        {
            double v = marg.azimuth_cdf(std::fmin(lo + (hi - lo) * i / 40.0, top));
            CHECK(v >= prev);
            prev = v;
        }
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-6));
    }

    VmfMarginals planar(sphere_sets[1], true);
    CHECK(planar.planar());
    CHECK(planar.elevation_icdf(0.3) == 0.0);
    CHECK(planar.elevation_icdf(0.9) == 0.0);
}

TEST_CASE("sampler follows the marginal laws")
{
    // push each draw through the marginal CDFs; uniformity of the images is
    // tested per coordinate with equal-mass bins
    const int n = 20000;
    const int bins = 20;

    for (const VmfParams& p : {sphere_sets[0], sphere_sets[3], sphere_sets[5]})
    {
        VmfMarginals marg(p, false);
        std::mt19937_64 rng(12345);

        std::vector<int> az_count(bins, 0), el_count(bins, 0);
        for (int i = 0; i < n; i++)
        {
            auto [alpha, beta] = vmf_sample(p, rng);
            CHECK(std::fabs(beta) <= M_PI_2);

            double ua = marg.azimuth_cdf(alpha);
            double ue = marg.elevation_cdf(beta);
            az_count[std::min(bins - 1, int(ua * bins))]++;
            el_count[std::min(bins - 1, int(ue * bins))]++;
        }

        const double expected = double(n) / bins;
        double chi_a = 0.0, chi_e = 0.0;
        for (int b = 0; b < bins; b++)
        {
            chi_a += (az_count[b] - expected) * (az_count[b] - expected) / expected;
            chi_e += (el_count[b] - expected) * (el_count[b] - expected) / expected;
        }

        // one percent level with z = 2.3263
        double critical = chi2_critical(bins - 1, 2.3263478740408408);
        CHECK(chi_a < critical);
        CHECK(chi_e < critical);
    }
}

TEST_CASE("sampler is reproducible for a fixed generator state")
{
    VmfParams p{0.5, 0.2, 3.6};
    std::mt19937_64 a(99), b(99);
    for (int i = 0; i < 50; i++)
    {
        auto [a1, b1] = vmf_sample(p, a);
        auto [a2, b2] = vmf_sample(p, b);
        CHECK(a1 == a2);
        CHECK(b1 == b2);
    }
}
