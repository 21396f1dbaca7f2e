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

// Empirical statistics measured from generated channel realizations:
// time-average correlations with jackknife errors, Welch spectra, level
// crossing counts and histogram densities. These are the measurement side
// of the model/measurement comparisons; the closed forms live in
// reference_model.hpp and sos.hpp.

#ifndef v2vchan_estimators_H
#define v2vchan_estimators_H

#include <complex>
#include <vector>

#include "v2v/sos.hpp"
#include "v2v/statcurve.hpp"

namespace v2v
{

// Time-average autocorrelation r(k) = mean_t h[t+k] conj(h[t]) for lags
// k = 0..max_lag, evaluated over the fixed window t in [0, count-max_lag)
// so every lag sees the same samples. The standard error is a delete-one
// jackknife over `segments` contiguous blocks of that window, combining
// real and imaginary scatter into a single radius. x carries the lag in
// seconds. No normalization is applied; for a unit power parameterization
// r(0) is close to one by construction.
StatCurve empirical_acf(const ChannelRealization& ch, int max_lag, int segments = 16);

// Zero-lag cross-correlation mean_t a[t] conj(b[t]) between two
// realizations generated on the same time grid, with a jackknife standard
// error over contiguous blocks.
struct CorrelationEstimate
{
    std::complex<double> value{0.0, 0.0};
    double se = 0.0;
};

CorrelationEstimate empirical_crosscorr(const ChannelRealization& a, const ChannelRealization& b, int segments = 16);

// Welch power spectral density of the complex envelope. Segment length is
// the largest power of two not above count/segments (minimum 64), Hann
// windowed with 50 percent overlap. x is frequency in Hz over
// [-rate/2, rate/2), values are real densities in 1/Hz normalized so that
// the sum times the bin width estimates the mean square envelope. se is
// the standard error across segments.
StatCurve empirical_psd(const ChannelRealization& ch, int segments = 16);

// Level crossing statistics of the envelope |h| at the given absolute
// levels. lcr counts upward crossings per second; below_fraction is the
// fraction of time spent under the level, with linear interpolation of
// the envelope across threshold intervals; afd is below time divided by
// the number of downward crossings, and is NaN when the level is never
// crossed downward.
struct CrossingStats
{
    std::vector<double> level;
    std::vector<double> lcr;
    std::vector<double> afd;
    std::vector<double> below_fraction;
    std::vector<long long> up_crossings;
    std::vector<long long> down_crossings;
};

CrossingStats empirical_crossings(const ChannelRealization& ch, const std::vector<double>& levels);

// Histogram density estimates. density[i] is counts / (total * width), so
// the bins integrate to one over the covered range.
struct HistogramDensity
{
    std::vector<double> center;
    std::vector<double> density;
    double bin_width = 0.0;
    long long total = 0;
};

// Envelope histogram over [0, z_max]; z_max = 0 selects the sample maximum.
HistogramDensity amplitude_histogram(const ChannelRealization& ch, int bins = 48, double z_max = 0.0);

// Phase histogram over [-pi, pi).
HistogramDensity phase_histogram(const ChannelRealization& ch, int bins = 48);

} // namespace v2v

#endif
