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

#include "v2v/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "v2v/fft.hpp"

namespace v2v
{

namespace
{

using cplx = std::complex<double>;

// delete-one jackknife radius from per-block means; blocks carry equal
// weight, which holds because the callers cut equal sized blocks
double jackknife_se(const std::vector<cplx>& block_means)
{
    const int j = int(block_means.size());
    cplx total(0.0, 0.0);
    for (const cplx& m : block_means)
        total += m;
    double var = 0.0;
    cplx mean_loo_sum(0.0, 0.0);
    std::vector<cplx> loo(j);
    for (int i = 0; i < j; i++)
    {
        loo[i] = (total - block_means[i]) / double(j - 1);
        mean_loo_sum += loo[i];
    }
    cplx mean_loo = mean_loo_sum / double(j);
    for (int i = 0; i < j; i++)
        var += std::norm(loo[i] - mean_loo);
    return std::sqrt(var * double(j - 1) / double(j));
}

void check_blocks(long long usable, int segments, const char* who)
{
    if (segments < 2)
        throw std::invalid_argument(std::string(who) + ": need at least two jackknife segments");
    if (usable < (long long)(segments) * 8)
        throw std::invalid_argument(std::string(who) + ": record too short for the requested segment count");
}

} // namespace

StatCurve empirical_acf(const ChannelRealization& ch, int max_lag, int segments)
{
    const long long count = (long long)(ch.h.size());
    if (max_lag < 0 || count < 2 * (long long)(max_lag) + 2)
        throw std::invalid_argument("empirical_acf: lag range must fit twice into the record");
    const long long usable = count - max_lag;
    check_blocks(usable, segments, "empirical_acf");

    const long long block = usable / segments;
    const long long used = block * segments;
    const cplx* h = ch.h.data();

    StatCurve curve;
    curve.quantity = "acf";
    curve.model_tag = "empirical";
    curve.complex_valued = true;
    curve.x.resize(max_lag + 1);
    curve.y.resize(max_lag + 1);
    curve.se.resize(max_lag + 1);

#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k <= max_lag; k++)
    {
        std::vector<cplx> block_means(segments);
        cplx total(0.0, 0.0);
        for (int b = 0; b < segments; b++)
        {
            const long long t0 = b * block;
            double sr = 0.0, si = 0.0;
            for (long long t = t0; t < t0 + block; t++)
            {
                const cplx v = h[t + k] * std::conj(h[t]);
                sr += v.real();
                si += v.imag();
            }
            block_means[b] = cplx(sr, si) / double(block);
            total += cplx(sr, si);
        }
        curve.x[k] = ch.grid.step * k;
        curve.y[k] = total / double(used);
        curve.se[k] = jackknife_se(block_means);
    }
    return curve;
}

CorrelationEstimate empirical_crosscorr(const ChannelRealization& a, const ChannelRealization& b, int segments)
{
    if (a.h.size() != b.h.size() || a.h.empty())
        throw std::invalid_argument("empirical_crosscorr: realizations must share a nonempty time grid");
    if (std::abs(a.grid.step - b.grid.step) > 1e-15 * a.grid.step)
        throw std::invalid_argument("empirical_crosscorr: realizations must share the sample step");
    const long long count = (long long)(a.h.size());
    check_blocks(count, segments, "empirical_crosscorr");

    const long long block = count / segments;
    const long long used = block * segments;
    std::vector<cplx> block_means(segments);
    cplx total(0.0, 0.0);
    for (int s = 0; s < segments; s++)
    {
        const long long t0 = s * block;
        double sr = 0.0, si = 0.0;
        for (long long t = t0; t < t0 + block; t++)
        {
            const cplx v = a.h[t] * std::conj(b.h[t]);
            sr += v.real();
            si += v.imag();
        }
        block_means[s] = cplx(sr, si) / double(block);
        total += cplx(sr, si);
    }
    CorrelationEstimate est;
    est.value = total / double(used);
    est.se = jackknife_se(block_means);
    return est;
}

StatCurve empirical_psd(const ChannelRealization& ch, int segments)
{
    const long long count = (long long)(ch.h.size());
    if (segments < 1)
        throw std::invalid_argument("empirical_psd: segment count must be positive");
    std::size_t seg_len = 64;
    while (seg_len * 2 <= std::size_t(count / std::max(segments, 1)))
        seg_len *= 2;
    if ((long long)(seg_len) > count)
        throw std::invalid_argument("empirical_psd: record shorter than the minimum segment length of 64");

    std::vector<double> window(seg_len);
    double wpow = 0.0;
    for (std::size_t i = 0; i < seg_len; i++)
    {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * double(i) / double(seg_len));
        wpow += window[i] * window[i];
    }

    const std::size_t hop = seg_len / 2;
    const int nseg = int((count - (long long)(seg_len)) / (long long)(hop)) + 1;
    const double rate = 1.0 / ch.grid.step;
    const double scale = ch.grid.step / wpow;

    std::vector<double> mean(seg_len, 0.0), m2(seg_len, 0.0);
    std::vector<cplx> buf(seg_len);
    for (int s = 0; s < nseg; s++)
    {
        const std::size_t t0 = std::size_t(s) * hop;
        for (std::size_t i = 0; i < seg_len; i++)
            buf[i] = ch.h[t0 + i] * window[i];
        fft_pow2(buf, false);
        for (std::size_t i = 0; i < seg_len; i++)
        {
            const double p = std::norm(buf[i]) * scale;
            const double d = p - mean[i];
            mean[i] += d / double(s + 1);
            m2[i] += d * (p - mean[i]);
        }
    }

    StatCurve curve;
    curve.quantity = "psd";
    curve.model_tag = "empirical";
    curve.complex_valued = false;
    curve.x.resize(seg_len);
    curve.y.resize(seg_len);
    curve.se.resize(seg_len);
    const long long half = (long long)(seg_len) / 2;
    for (std::size_t i = 0; i < seg_len; i++)
    {
        const long long k = (long long)(i) - half;
        const std::size_t src = std::size_t((k + (long long)(seg_len)) % (long long)(seg_len));
        curve.x[i] = double(k) * rate / double(seg_len);
        curve.y[i] = mean[src];
        curve.se[i] = nseg > 1 ? std::sqrt(m2[src] / double(nseg - 1) / double(nseg)) : 0.0;
    }
    return curve;
}

CrossingStats empirical_crossings(const ChannelRealization& ch, const std::vector<double>& levels)
{
    const std::size_t count = ch.h.size();
    if (count < 2)
        throw std::invalid_argument("empirical_crossings: need at least two samples");
    for (double r : levels)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("empirical_crossings: levels must be positive");

    std::vector<double> env(count);
    for (std::size_t t = 0; t < count; t++)
        env[t] = std::abs(ch.h[t]);

    const double duration = ch.grid.step * double(count - 1);
    CrossingStats cs;
    cs.level = levels;
    cs.lcr.resize(levels.size());
    cs.afd.resize(levels.size());
    cs.below_fraction.resize(levels.size());
    cs.up_crossings.resize(levels.size());
    cs.down_crossings.resize(levels.size());

    for (std::size_t li = 0; li < levels.size(); li++)
    {
        const double r = levels[li];
        long long ups = 0, downs = 0;
        double below = 0.0;
        for (std::size_t t = 0; t + 1 < count; t++)
        {
            const double z0 = env[t], z1 = env[t + 1];
            const bool b0 = z0 < r, b1 = z1 < r;
            if (b0 && b1)
                below += 1.0;
            else if (b0 != b1)
            {
                const double frac = (r - z0) / (z1 - z0);
                below += b0 ? frac : 1.0 - frac;
                if (b0)
                    ups++;
                else
                    downs++;
            }
        }
        below *= ch.grid.step;
        cs.up_crossings[li] = ups;
        cs.down_crossings[li] = downs;
        cs.lcr[li] = double(ups) / duration;
        cs.below_fraction[li] = below / duration;
        cs.afd[li] = downs > 0 ? below / double(downs) : std::numeric_limits<double>::quiet_NaN();
    }
    return cs;
}

HistogramDensity amplitude_histogram(const ChannelRealization& ch, int bins, double z_max)
{
    if (bins < 4)
        throw std::invalid_argument("amplitude_histogram: need at least four bins");
    if (ch.h.empty())
        throw std::invalid_argument("amplitude_histogram: empty realization");
    double zm = z_max;
    if (zm <= 0.0)
    {
        for (const cplx& v : ch.h)
            zm = std::fmax(zm, std::abs(v));
        zm *= 1.0 + 1e-12;
    }

    HistogramDensity hd;
    hd.bin_width = zm / bins;
    hd.center.resize(bins);
    hd.density.assign(bins, 0.0);
    for (int i = 0; i < bins; i++)
        hd.center[i] = (i + 0.5) * hd.bin_width;
    for (const cplx& v : ch.h)
    {
        const double z = std::abs(v);
        if (z >= zm)
            continue;
        hd.density[std::size_t(z / hd.bin_width)] += 1.0;
        hd.total++;
    }
    for (double& d : hd.density)
        d /= double(ch.h.size()) * hd.bin_width;
    return hd;
}

HistogramDensity phase_histogram(const ChannelRealization& ch, int bins)
{
    if (bins < 4)
        throw std::invalid_argument("phase_histogram: need at least four bins");
    if (ch.h.empty())
        throw std::invalid_argument("phase_histogram: empty realization");

    HistogramDensity hd;
    hd.bin_width = 2.0 * M_PI / bins;
    hd.center.resize(bins);
    hd.density.assign(bins, 0.0);
    for (int i = 0; i < bins; i++)
        hd.center[i] = -M_PI + (i + 0.5) * hd.bin_width;
    for (const cplx& v : ch.h)
    {
        double a = std::arg(v);
        int idx = int((a + M_PI) / hd.bin_width);
        idx = std::clamp(idx, 0, bins - 1);
        hd.density[std::size_t(idx)] += 1.0;
        hd.total++;
    }
    for (double& d : hd.density)
        d /= double(ch.h.size()) * hd.bin_width;
    return hd;
}

} // namespace v2v
