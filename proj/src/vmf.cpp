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

#include "v2v/vmf.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "v2v/quadrature.hpp"
#include "v2v/special.hpp"

namespace v2v
{

namespace
{

constexpr double half_pi = 1.5707963267948966;
constexpr double two_pi = 6.283185307179586;
constexpr double k_tiny = 1e-14;

const GaussLegendre& gl16()
{
    static const GaussLegendre gl = gauss_legendre(16);
    return gl;
}

} // namespace

void validate_vmf(const VmfParams& p)
{
    if (!std::isfinite(p.alpha0) || !std::isfinite(p.beta0) || !std::isfinite(p.k))
        throw std::invalid_argument("VmfParams: parameters must be finite");
    if (p.k < 0.0)
        throw std::invalid_argument("VmfParams: concentration k must be nonnegative");
    if (std::fabs(p.beta0) > half_pi + 1e-12)
        throw std::invalid_argument("VmfParams: mean elevation beta0 must lie in [-pi/2, pi/2]");
}

double vmf_pdf(double alpha, double beta, const VmfParams& p)
{
    validate_vmf(p);
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw std::domain_error("vmf_pdf: angles must be finite");
    if (std::fabs(beta) > half_pi + 1e-12)
        throw std::domain_error("vmf_pdf: elevation outside [-pi/2, pi/2]");

    double cb = std::cos(beta);
    if (p.k < k_tiny)
        return cb / (4.0 * M_PI);

    // k cos(beta) exp(k (E - 1)) / (2 pi (1 - e^{-2k})) with E the cosine of
    // the angle to the mean direction; E - 1 <= 0 keeps the exponent safe for
    // any concentration.
    double e = std::cos(p.beta0) * cb * std::cos(alpha - p.alpha0) + std::sin(p.beta0) * std::sin(beta);
    return p.k * cb * std::exp(p.k * (e - 1.0)) / (two_pi * (1.0 - std::exp(-2.0 * p.k)));
}

double vm_pdf(double alpha, const VmfParams& p)
{
    validate_vmf(p);
    if (!std::isfinite(alpha))
        throw std::domain_error("vm_pdf: angle must be finite");
    if (p.k < k_tiny)
        return 1.0 / two_pi;
    double c = std::cos(alpha - p.alpha0);
    return std::exp(p.k * (c - 1.0)) / (two_pi * bessel_i0_scaled(p.k));
}

std::pair<double, double> vmf_sample(const VmfParams& p, std::mt19937_64& rng)
{
    validate_vmf(p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u1 = unit(rng);
    double u2 = unit(rng);

    // inverse CDF of the cosine of the polar angle around the mean direction,
    // written with log1p/expm1 so the k -> 0 limit stays exact
    double w;
    if (p.k < k_tiny)
        w = 2.0 * u1 - 1.0;
    else
        w = 1.0 + std::log1p((1.0 - u1) * std::expm1(-2.0 * p.k)) / p.k;
    w = std::fmin(1.0, std::fmax(-1.0, w));

    double mu_x = std::cos(p.beta0) * std::cos(p.alpha0);
    double mu_y = std::cos(p.beta0) * std::sin(p.alpha0);
    double mu_z = std::sin(p.beta0);

    // tangent frame around the mean direction
    double e1x, e1y, e1z;
    if (std::fabs(mu_z) < 0.999)
    {
        double nrm = std::hypot(mu_x, mu_y);
        e1x = mu_y / nrm;
        e1y = -mu_x / nrm;
        e1z = 0.0;
    }
    else
    {
        e1x = 1.0;
        e1y = 0.0;
        e1z = 0.0;
    }
    double e2x = mu_y * e1z - mu_z * e1y;
    double e2y = mu_z * e1x - mu_x * e1z;
    double e2z = mu_x * e1y - mu_y * e1x;

    double t = two_pi * u2;
    double s = std::sqrt(std::fmax(0.0, 1.0 - w * w));
    double ct = std::cos(t), st = std::sin(t);
    double vx = w * mu_x + s * (ct * e1x + st * e2x);
    double vy = w * mu_y + s * (ct * e1y + st * e2y);
    double vz = w * mu_z + s * (ct * e1z + st * e2z);

    double alpha = std::atan2(vy, vx);
    double beta = std::asin(std::fmin(1.0, std::fmax(-1.0, vz)));
    return {alpha, beta};
}

// --- monotone cubic interpolation (Fritsch-Carlson slopes) ----------------

double VmfMarginals::MonotoneCubic::eval(double v) const
{
    const std::size_t n = x.size();
    if (v <= x.front())
        return y.front();
    if (v >= x.back())
        return y.back();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1)
    {
        std::size_t mid = (lo + hi) / 2;
        if (x[mid] <= v)
            lo = mid;
        else
            hi = mid;
    }
    double h = x[lo + 1] - x[lo];
    double t = (v - x[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    return y[lo] * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d[lo] * (t3 - 2.0 * t2 + t) + y[lo + 1] * (-2.0 * t3 + 3.0 * t2) +
           h * d[lo + 1] * (t3 - t2);
}

double VmfMarginals::MonotoneCubic::inverse(double target, double lo, double hi) const
{
    for (int it = 0; it < 100 && hi - lo > 1e-12; it++)
    {
        double mid = 0.5 * (lo + hi);
        if (eval(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace
{

void pchip_slopes(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& d)
{
    const std::size_t n = x.size();
    d.assign(n, 0.0);
    if (n < 2)
        return;
    std::vector<double> del(n - 1);
    for (std::size_t i = 0; i + 1 < n; i++)
        del[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    d[0] = del[0];
    d[n - 1] = del[n - 2];
    for (std::size_t i = 1; i + 1 < n; i++)
    {
        if (del[i - 1] <= 0.0 || del[i] <= 0.0)
        {
            d[i] = 0.0;
            continue;
        }
        double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
        d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
}

// cumulative table of a density over [lo, hi] from 8-point Gauss cell sums
void build_cdf(const std::function<double(double)>& pdf, double lo, double hi, int cells, std::vector<double>& xs,
               std::vector<double>& ys, double& total)
{
    const GaussLegendre gl = gauss_legendre(8);
    const double h = (hi - lo) / double(cells);
    xs.resize(cells + 1);
    ys.resize(cells + 1);
    xs[0] = lo;
    ys[0] = 0.0;
    double cum = 0.0;
    for (int c = 0; c < cells; c++)
    {
        double a = lo + h * double(c);
        double mass = 0.0;
        for (int q = 0; q < 8; q++)
            mass += gl.weights[q] * pdf(a + 0.5 * h * (gl.nodes[q] + 1.0));
        cum += 0.5 * h * mass;
        xs[c + 1] = lo + h * double(c + 1);
        ys[c + 1] = cum;
    }
    total = cum;
    for (double& v : ys)
        v /= total;
    ys[cells] = 1.0;
}

} // namespace

VmfMarginals::VmfMarginals(const VmfParams& p, bool planar) : params_(p), planar_(planar)
{
    validate_vmf(p);
    az_lo_ = p.alpha0 - M_PI;
    az_hi_ = p.alpha0 + M_PI;

    const int cells = 2048;
    double az_total = 1.0, el_total = 1.0;

    std::function<double(double)> az = [this](double a) { return azimuth_pdf(a); };
    build_cdf(az, az_lo_, az_hi_, cells, az_cdf_.x, az_cdf_.y, az_total);
    pchip_slopes(az_cdf_.x, az_cdf_.y, az_cdf_.d);

    if (!planar_)
    {
        std::function<double(double)> el = [this](double b) { return elevation_pdf(b); };
        build_cdf(el, -half_pi, half_pi, cells, el_cdf_.x, el_cdf_.y, el_total);
        pchip_slopes(el_cdf_.x, el_cdf_.y, el_cdf_.d);
    }

    mass_defect_ = std::fmax(std::fabs(az_total - 1.0), std::fabs(el_total - 1.0));
}

double VmfMarginals::azimuth_pdf(double alpha) const
{
    const VmfParams& p = params_;
    if (planar_)
        return vm_pdf(alpha, p);

    // composite Gauss panels over elevation; panel count tracks the 1/sqrt(k)
    // width of the density
    const int panels = 8 + 2 * int(std::ceil(std::sqrt(p.k)));
    const GaussLegendre& gl = gl16();
    const double h = M_PI / double(panels);
    double sum = 0.0;
    for (int c = 0; c < panels; c++)
    {
        double b0 = -half_pi + h * double(c);
        double acc = 0.0;
        for (int q = 0; q < 16; q++)
            acc += gl.weights[q] * vmf_pdf(alpha, b0 + 0.5 * h * (gl.nodes[q] + 1.0), p);
        sum += 0.5 * h * acc;
    }
    return sum;
}

double VmfMarginals::elevation_pdf(double beta) const
{
    if (planar_)
        throw std::logic_error("VmfMarginals: no elevation density in planar mode");
    if (std::fabs(beta) > half_pi + 1e-12)
        throw std::domain_error("VmfMarginals: elevation outside [-pi/2, pi/2]");
    const VmfParams& p = params_;
    double cb = std::cos(beta);
    if (p.k < k_tiny)
        return 0.5 * cb;

    // k cos(b) / (2 sinh k) * I0(k cos(b0) cos(b)) * e^{k sin(b0) sin(b)},
    // assembled from the scaled Bessel so large k cannot overflow
    double z = p.k * std::cos(p.beta0) * cb;
    double expo = z + p.k * std::sin(p.beta0) * std::sin(beta) - p.k;
    return p.k * cb * bessel_i0_scaled(z) * std::exp(expo) / (1.0 - std::exp(-2.0 * p.k));
}

double VmfMarginals::azimuth_cdf(double alpha) const
{
    double a = alpha - two_pi * std::floor((alpha - az_lo_) / two_pi);
    return az_cdf_.eval(a);
}

double VmfMarginals::elevation_cdf(double beta) const
{
    if (planar_)
        return beta < 0.0 ? 0.0 : 1.0;
    return el_cdf_.eval(beta);
}

double VmfMarginals::azimuth_icdf(double u) const
{
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("VmfMarginals: quantile level outside [0, 1]");
    return az_cdf_.inverse(u, az_lo_, az_hi_);
}

double VmfMarginals::elevation_icdf(double u) const
{
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("VmfMarginals: quantile level outside [0, 1]");
    if (planar_)
        return 0.0;
    return el_cdf_.inverse(u, -half_pi, half_pi);
}

std::pair<double, double> VmfMarginals::azimuth_domain() const
{
    return {az_lo_, az_hi_};
}

} // namespace v2v
