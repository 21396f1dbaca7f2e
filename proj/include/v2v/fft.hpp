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

#ifndef v2vchan_fft_H
#define v2vchan_fft_H

#include <complex>
#include <vector>

#include "v2v/grid.hpp"
#include "v2v/statcurve.hpp"

namespace v2v
{

// In-place radix-2 transform; size must be a power of two.
// Forward uses kernel exp(-2*pi*i*k*n/N); inverse includes the 1/N factor.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

// Forward DFT of arbitrary length via Bluestein's chirp-z reformulation.
// Quadratic chirp phases are reduced modulo 2N in integer arithmetic so
// large transforms do not lose precision.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);

enum class Taper
{
    none,
    tukey_quarter // Tukey window, 25 percent cosine fraction
};

double taper_value(Taper taper, int i, int count);

// Spectral density from a correlation function sampled on a lag grid that is
// symmetric about zero: S(f_k) = step * sum_n w_n rho(tau_n) exp(-2*pi*i*f_k*tau_n)
// with f_k = k / (count * step) for k = -floor(count/2) .. ceil(count/2)-1.
// Output x is the frequency axis in ascending order, y the complex spectrum.
// For a Hermitian input curve the imaginary parts vanish to rounding noise
// and sum(S) * df reproduces the tapered rho(0) exactly.
StatCurve spectrum_from_correlation(const std::vector<std::complex<double>>& rho, const UniformGrid& lag_grid,
                                    Taper taper);

} // namespace v2v

#endif
