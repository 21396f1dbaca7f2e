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
#include <complex>
#include <random>
#include <vector>

#include <v2v/fft.hpp>
#include <v2v/grid.hpp>
#include <v2v/quadrature.hpp>
#include <v2v/special.hpp>
#include <v2v/statcurve.hpp>

#include "testkit/oracles.hpp"

using namespace v2v;
namespace tk = v2v::testkit;

TEST_CASE("bessel_j0 reproduces frozen values and the defining integral")
{
    CHECK(bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-15));

    // first positive root of J0
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-13);

    for (double x : {0.05, 0.7, 1.0, 2.5, 6.0, 11.0, 25.0, 60.0})
    {
        CHECK(bessel_j0(x) == doctest::Approx(tk::oracle_j0(x)).epsilon(1e-12));
        CHECK(bessel_j0(-x) == doctest::Approx(bessel_j0(x)).epsilon(1e-15));
    }

    CHECK_THROWS_AS(bessel_j0(std::nan("")), std::domain_error);
}

TEST_CASE("bessel_i0 reproduces frozen values and the series oracle")
{
    CHECK(bessel_i0(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520082).epsilon(1e-15));

    for (double x : {0.1, 0.6, 1.3, 3.6, 9.6, 11.5, 40.0, 120.0})
        CHECK(bessel_i0(x) == doctest::Approx(tk::oracle_i0(x)).epsilon(1e-13));

    CHECK_THROWS_AS(bessel_i0(800.0), std::range_error);
}

TEST_CASE("bessel_i0_scaled is continuous and consistent with bessel_i0")
{
    // the scaled form must agree with exp(-x) I0(x) wherever I0 is finite
    for (double x : {0.3, 2.0, 12.0, 19.5, 20.5, 50.0, 400.0})
    {
        if (x <= 700.0)
        {
            double direct = bessel_i0(x) * std::exp(-x);
            CHECK(bessel_i0_scaled(x) == doctest::Approx(direct).epsilon(1e-12));
        }
        CHECK(bessel_i0_scaled(-x) == doctest::Approx(bessel_i0_scaled(x)).epsilon(1e-14));
    }

    // no jump where the evaluation strategy may switch between series and
    // asymptotic forms: the function is smooth, so a fine difference
    // quotient stays bounded
    double prev = bessel_i0_scaled(18.0);
    for (double x = 18.0 + 1e-3; x <= 22.0; x += 1e-3)
    {
        double cur = bessel_i0_scaled(x);
        CHECK(std::abs(cur - prev) < 2e-4);
        prev = cur;
    }

    // large-argument check against the leading asymptotic term
    // I0(x) e^{-x} ~ 1/sqrt(2 pi x)
    double x = 5.0e4;
    CHECK(bessel_i0_scaled(x) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * x)).epsilon(1e-4));
}

TEST_CASE("erf matches the series oracle")
{
    CHECK(v2v::erf(0.0) == 0.0);
    CHECK(v2v::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-15));
    for (double x : {0.05, 0.4, 1.2, 2.1, 2.9})
    {
        CHECK(v2v::erf(x) == doctest::Approx(tk::oracle_erf(x)).epsilon(1e-13));
        CHECK(v2v::erf(-x) == doctest::Approx(-v2v::erf(x)).epsilon(1e-15));
    }
}

TEST_CASE("marcum_q1 boundary identities hold exactly")
{
    for (double a : {0.0, 0.3, 1.7, 9.0})
        CHECK(marcum_q1(a, 0.0) == 1.0);

    // zero noncentrality reduces to the Rayleigh tail
    for (double b : {0.2, 1.0, 2.5, 4.0})
        CHECK(marcum_q1(0.0, b) == doctest::Approx(std::exp(-0.5 * b * b)).epsilon(1e-14));

    CHECK_THROWS_AS(marcum_q1(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q1(1.0, -1.0), std::domain_error);
}

TEST_CASE("marcum_q1 agrees with the defining-integral oracle on a grid")
{
    for (double a : {0.5, 1.0, 2.0, 4.0})
        for (double b : {0.3, 1.0, 2.5, 5.0})
        {
            double got = marcum_q1(a, b);
            double want = tk::oracle_marcum_q1(a, b);
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }

    // monotonicity in both arguments
    CHECK(marcum_q1(2.0, 1.0) > marcum_q1(1.0, 1.0));
    CHECK(marcum_q1(1.0, 2.0) < marcum_q1(1.0, 1.0));
}

TEST_CASE("adaptive quadrature reproduces closed forms")
{
    QuadratureSpec tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-12;

    CHECK(integrate_1d([](double x) { return std::sin(x); }, 0.0, M_PI, tight) ==
          doctest::Approx(2.0).epsilon(1e-12));

    CHECK(integrate_1d([](double x) { return std::exp(-x * x); }, -6.0, 6.0, tight) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

    // oscillatory integrand that needs refinement
    CHECK(integrate_1d([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, tight) ==
          doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));

    auto sep = [](double x, double y) { return std::sin(x) * std::cos(y); };
    CHECK(integrate_2d(sep, 0.0, M_PI, -M_PI_2, M_PI_2, tight) == doctest::Approx(4.0).epsilon(1e-11));

    std::complex<double> rot = integrate_1d_complex(
        [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, M_PI, tight);
    CHECK(rot.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rot.imag() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadrature reports convergence failure with its best estimate")
{
    QuadratureSpec cramped;
    cramped.abs_tol = 1e-14;
    cramped.rel_tol = 1e-14;
    cramped.max_subdivisions = 3;

    auto spiky = [](double x) { return 1.0 / (1e-6 + x * x); };
    bool threw = false;
    try
    {
        integrate_1d(spiky, -1.0, 1.0, cramped);
    }
    catch (const ConvergenceError& e)
    {
        threw = true;
        CHECK(std::isfinite(e.estimate().real()));
        CHECK(e.error_bound() > 0.0);
    }
    CHECK(threw);

    CHECK_THROWS_AS(integrate_1d([](double x) { return x; }, 1.0, 0.0, cramped), std::invalid_argument);
}

TEST_CASE("gauss_legendre integrates the cosh identity to machine precision")
{
    // int_0^{pi/2} cosh(c cos t) dt = (pi/2) I0(c)
    GaussLegendre rule = gauss_legendre(64);
    REQUIRE(rule.nodes.size() == 64);

    for (double c : {0.5, 2.0, 6.0})
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); i++)
        {
            double t = 0.25 * M_PI * (rule.nodes[i] + 1.0);
            acc += rule.weights[i] * std::cosh(c * std::cos(t));
        }
        acc *= 0.25 * M_PI;
        CHECK(acc == doctest::Approx(0.5 * M_PI * bessel_i0(c)).epsilon(1e-14));
    }

    double wsum = 0.0;
    for (double w : rule.weights)
        wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("power-of-two fft round trips and inverts")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> a(256);
    for (auto& v : a)
        v = {g(rng), g(rng)};

    auto b = a;
    fft_pow2(b, false);
    fft_pow2(b, true);
    for (std::size_t i = 0; i < a.size(); i++)
        CHECK(std::abs(b[i] - a[i]) < 1e-12);
}

TEST_CASE("bluestein dft matches the direct transform at non-power sizes")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int n : {12, 37})
    {
        std::vector<std::complex<double>> x(n);
        for (auto& v : x)
            v = {g(rng), g(rng)};

        auto got = dft(x);
        REQUIRE(int(got.size()) == n);
        for (int k = 0; k < n; k++)
        {
            std::complex<double> want{0.0, 0.0};
            for (int m = 0; m < n; m++)
                want += x[m] * std::exp(std::complex<double>(0.0, -2.0 * M_PI * k * m / n));
            CHECK(std::abs(got[k] - want) < 1e-10);
        }
    }
}

TEST_CASE("spectrum_from_correlation locates a tone and conserves power")
{
    // rho(tau) = exp(j 2 pi f0 tau) has a line spectrum at f0
    const double step = 1e-4;
    const int count = 257;
    UniformGrid lags = UniformGrid::centered(step, count);
    const double df = 1.0 / (count * step);
    const double f0 = 16.0 * df; // on-bin tone

    std::vector<std::complex<double>> rho(count);
    for (int i = 0; i < count; i++)
        rho[i] = std::exp(std::complex<double>(0.0, 2.0 * M_PI * f0 * lags.at(i)));

    StatCurve s = spectrum_from_correlation(rho, lags, Taper::none);
    REQUIRE(int(s.x.size()) == count);

    int peak = 0;
    std::complex<double> total{0.0, 0.0};
    for (int i = 0; i < count; i++)
    {
        total += s.y[i];
        if (std::abs(s.y[i]) > std::abs(s.y[peak]))
            peak = i;
    }
    CHECK(s.x[peak] == doctest::Approx(f0).epsilon(1e-12));
    // sum(S) df = rho(0) for the untapered transform
    CHECK((total * df).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs((total * df).imag()) < 1e-12);

    // frequency axis ascending and symmetric
    for (int i = 1; i < count; i++)
        CHECK(s.x[i] > s.x[i - 1]);
}

TEST_CASE("format_double survives a parse round trip")
{
    for (double v : {0.0, 1.0, -3.5, 1.0 / 3.0, 6.283185307179586, 1e-17, -2.2250738585072014e-308})
    {
        double back = std::stod(format_double(v));
        CHECK(back == v);
    }
}

TEST_CASE("centered grids require an odd count")
{
    UniformGrid g = UniformGrid::centered(0.5, 5);
    CHECK(g.at(0) == doctest::Approx(-1.0));
    CHECK(g.at(2) == doctest::Approx(0.0));
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK(g.span() == doctest::Approx(2.0));

    CHECK_THROWS_AS(UniformGrid::centered(0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(UniformGrid(0.0, -1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(UniformGrid(0.0, 1.0, 0), std::invalid_argument);
}
