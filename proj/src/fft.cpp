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

#include "v2v/fft.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace v2v
{

namespace
{

using cplx = std::complex<double>;

bool is_pow2(std::size_t n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t m = 1;
    while (m < n)
        m <<= 1;
    return m;
}

} // namespace

void fft_pow2(std::vector<cplx>& a, bool inverse)
{
    const std::size_t n = a.size();
    if (!is_pow2(n))
        throw std::invalid_argument("fft_pow2: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; i++)
    {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1)
    {
        double ang = 2.0 * M_PI / double(len) * (inverse ? 1.0 : -1.0);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len)
        {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; k++)
            {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    if (inverse)
        for (cplx& v : a)
            v /= double(n);
}

std::vector<cplx> dft(const std::vector<cplx>& x)
{
    const std::size_t n = x.size();
    if (n == 0)
        throw std::invalid_argument("dft: empty input");
    if (is_pow2(n))
    {
        std::vector<cplx> a = x;
        fft_pow2(a, false);
        return a;
    }

    // Bluestein: X_k = chirp_k * conv(x_n chirp_n, conj(chirp))_k with
    // chirp_n = exp(-i pi n^2 / N). The index n^2 is reduced mod 2N in
    // integer arithmetic before touching floating point.
    const std::int64_t nn = std::int64_t(n);
    auto chirp = [&](std::int64_t m) {
        std::int64_t r = (m % (2 * nn)) * m % (2 * nn);
        double ang = -M_PI * double(r) / double(nn);
        return cplx(std::cos(ang), std::sin(ang));
    };

    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> a(m, cplx(0.0, 0.0)), b(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; i++)
        a[i] = x[i] * chirp(std::int64_t(i));
    for (std::size_t i = 0; i < n; i++)
    {
        cplx c = std::conj(chirp(std::int64_t(i)));
        b[i] = c;
        if (i > 0)
            b[m - i] = c;
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; i++)
        a[i] *= b[i];
    fft_pow2(a, true);

    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; i++)
        out[i] = a[i] * chirp(std::int64_t(i));
    return out;
}

double taper_value(Taper taper, int i, int count)
{
    if (taper == Taper::none)
        return 1.0;
    if (count <= 1)
        return 1.0;
    const double r = 0.25;
    double u = double(i) / double(count - 1);
    double d = std::min(u, 1.0 - u);
    if (d >= 0.5 * r)
        return 1.0;
    return 0.5 * (1.0 + std::cos(M_PI * (2.0 * d / r - 1.0)));
}

StatCurve spectrum_from_correlation(const std::vector<cplx>& rho, const UniformGrid& lag_grid, Taper taper)
{
    const int n = lag_grid.count;
    if (int(rho.size()) != n)
        throw std::invalid_argument("spectrum_from_correlation: curve length does not match lag grid");
    if (n < 2)
        throw std::invalid_argument("spectrum_from_correlation: need at least 2 lags");
    if (std::fabs(lag_grid.start + lag_grid.back()) > 1e-9 * lag_grid.step)
        throw std::invalid_argument("spectrum_from_correlation: lag grid must be symmetric about zero");

    std::vector<cplx> windowed(rho);
    for (int i = 0; i < n; i++)
        windowed[i] *= taper_value(taper, i, n);
    std::vector<cplx> z = dft(windowed);

    StatCurve s;
    s.quantity = "psd";
    s.complex_valued = true;
    s.x.resize(n);
    s.y.resize(n);
    const double df = 1.0 / (double(n) * lag_grid.step);
    const int k0 = -(n / 2);
    for (int i = 0; i < n; i++)
    {
        int k = k0 + i;
        double f = double(k) * df;
        double ang = -2.0 * M_PI * f * lag_grid.start;
        int idx = ((k % n) + n) % n;
        s.x[i] = f;
        s.y[i] = lag_grid.step * cplx(std::cos(ang), std::sin(ang)) * z[idx];
    }
    return s;
}

} // namespace v2v
