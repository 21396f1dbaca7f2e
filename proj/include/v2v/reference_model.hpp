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

#ifndef v2vchan_reference_model_H
#define v2vchan_reference_model_H

#include <complex>

#include "v2v/geometry.hpp"
#include "v2v/grid.hpp"
#include "v2v/quadrature.hpp"
#include "v2v/statcurve.hpp"

namespace v2v
{

// First-order envelope statistics of the normalised channel gain: the
// specular amplitude, the diffuse power per quadrature component and the
// phase of the specular term between the first element pair at time zero.
struct RiceanParams
{
    double spec_amp = 0.0;    // sqrt(K / (K + 1))
    double sigma0_sq = 0.0;   // 1 / (2 (K + 1))
    double spec_phase = 0.0;  // wrapped to (-pi, pi]
};

RiceanParams ricean_params(const ScenarioConfig& cfg);

// Ricean envelope density of |h_11|; the Bessel factor is evaluated in
// scaled form so arbitrarily large K cannot overflow.
double amplitude_pdf(double z, const ScenarioConfig& cfg);

// Phase density of arg(h_11), concentrated around the specular phase.
double phase_pdf(double theta, const ScenarioConfig& cfg);

// Space-time correlation between element pair (p, q) = (1, 1) shifted by
// (delta_t, delta_r) in array spacing and tau in time. Components carry
// their own power weights; stcf_total sums them and applies the 1 / (K + 1)
// normalisation so stcf_total(0, 0, 0) = 1.
std::complex<double> stcf_los(double dt, double dr, double tau, const ScenarioConfig& cfg);
std::complex<double> stcf_sb(Region region, double dt, double dr, double tau, const ScenarioConfig& cfg,
                             const QuadratureSpec& spec = {});
std::complex<double> stcf_db(double dt, double dr, double tau, const ScenarioConfig& cfg,
                             const QuadratureSpec& spec = {});
std::complex<double> stcf_total(double dt, double dr, double tau, const ScenarioConfig& cfg,
                                const QuadratureSpec& spec = {});

// Doppler spectrum: the temporal correlation on the symmetric lag grid,
// tapered and transformed. The grid must cover at least four periods of the
// slower Doppler component.
StatCurve doppler_psd(const ScenarioConfig& cfg, const UniformGrid& lag_grid, const QuadratureSpec& spec = {});

// Spectral moments of the diffuse part, b0 analytic and b1, b2 by
// expectation over the angular densities.
struct SpectralMoments
{
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};

SpectralMoments spectral_moments(const ScenarioConfig& cfg, const QuadratureSpec& spec = {});

// Level crossing rate at envelope level r (relative to unit RMS) from the
// Ricean factor and spectral moments; the degenerate b0 b2 = b1^2 case is
// taken through its analytic limit.
double lcr(double r, double k_rice, const SpectralMoments& m);
double lcr(double r, const ScenarioConfig& cfg, const QuadratureSpec& spec = {});

// Average fade duration below level r; returns +infinity when the level is
// never crossed.
double afd(double r, double k_rice, const SpectralMoments& m);
double afd(double r, const ScenarioConfig& cfg, const QuadratureSpec& spec = {});

} // namespace v2v

#endif
