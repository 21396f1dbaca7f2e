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

#include "v2v/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace v2v
{

double bessel_j0(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("bessel_j0: argument must be finite");
    return ::j0(x);
}

namespace
{

// Power series about 0, accurate for |x| <= 20.
double i0_series(double ax)
{
    double t = 0.25 * ax * ax;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 120; k++)
    {
        term *= t / (double(k) * double(k));
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum;
}

// Asymptotic expansion, scaled by exp(-x); valid for x > 20.
double i0_asym_scaled(double ax)
{
    double term = 1.0, sum = 1.0;
    for (int m = 1; m <= 30; m++)
    {
        double f = (2.0 * m - 1.0);
        term *= f * f / (8.0 * double(m) * ax);
        if (term < 1e-17 * sum)
            break;
        sum += term;
    }
    return sum / std::sqrt(2.0 * M_PI * ax);
}

} // namespace

double bessel_i0(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("bessel_i0: argument must be finite");
    double ax = std::fabs(x);
    if (ax > 700.0)
        throw std::range_error("bessel_i0: |x| = " + std::to_string(ax) + " exceeds 700, exp(x) would overflow");
    if (ax <= 20.0)
        return i0_series(ax);
    return i0_asym_scaled(ax) * std::exp(ax);
}

double bessel_i0_scaled(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("bessel_i0_scaled: argument must be finite");
    double ax = std::fabs(x);
    if (ax <= 20.0)
        return i0_series(ax) * std::exp(-ax);
    return i0_asym_scaled(ax);
}

double marcum_q1(double a, double b)
{
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("marcum_q1: requires finite a >= 0 and b >= 0");
    if (b == 0.0)
        return 1.0;

    double x = 0.5 * a * a; // Poisson mixing rate
    double y = 0.5 * b * b;
    if (x > 700.0 || y > 700.0)
        throw std::range_error("marcum_q1: arguments too large for series evaluation");

    // Q1(a,b) = sum_n Pois(n; x) * P[chi2_{2(n+1)}/2 > y]
    //         = sum_n e^-x x^n/n! * e^-y sum_{m<=n} y^m/m!
    double pois = std::exp(-x);    // Pois(n; x), n = 0
    double cum_pois = pois;
    double yterm = std::exp(-y);   // y^m e^-y / m!, m = 0
    double inner = yterm;          // e^-y sum_{m<=n} y^m/m!
    double q = pois * inner;
    for (int n = 1; n <= 20000; n++)
    {
        pois *= x / double(n);
        yterm *= y / double(n);
        inner += yterm;
        q += pois * inner;
        cum_pois += pois;
        if (1.0 - cum_pois < 1e-17 && n > x)
            break;
    }
    if (q > 1.0)
        q = 1.0;
    return q;
}

double erf(double x)
{
    return std::erf(x);
}

} // namespace v2v
