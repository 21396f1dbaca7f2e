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

#ifndef v2vchan_sos_H
#define v2vchan_sos_H

#include <complex>
#include <cstdint>
#include <string>

#include "v2v/geometry.hpp"
#include "v2v/grid.hpp"
#include "v2v/mev.hpp"
#include "v2v/reference_model.hpp"
#include "v2v/statcurve.hpp"

namespace v2v
{

// Frozen discrete rays of one simulator instance: the deterministic angle
// sets plus one uniform phase per ray. Phases come from a counter-based hash
// of (seed, region, ray index), so any ray's phase is reproducible without
// sequential draws. The double-bounce phases are indexed row-major over
// (transmit ray, receive ray).
struct SosParameterization
{
    CoupledAngleSets angles;
    std::vector<double> psi_sb1, psi_sb2, psi_sb3, psi_db;
    std::uint64_t seed = 0;
};

SosParameterization parameterize(const ScenarioConfig& cfg, std::uint64_t seed);

struct ChannelRealization
{
    UniformGrid grid;
    int p = 1;
    int q = 1;
    std::uint64_t seed = 0;
    std::vector<std::complex<double>> h;
};

enum class Kernel
{
    serial_reference, // one sincos per ray and sample, kept as the correctness baseline
    blocked           // phase-rotator blocks with exact resynchronisation, OpenMP over blocks
};

// Complex gain series between elements p and q on a time grid whose rate is
// at least eight times f_tmax + f_rmax. The blocked kernel re-anchors its
// rotators with exact sincos at fixed 2048-sample block starts, so its
// output does not depend on the number of worker threads.
ChannelRealization generate(const SosParameterization& par, const ScenarioConfig& cfg, const UniformGrid& grid,
                            int p, int q, Kernel kernel = Kernel::blocked);

// Total power carried by the discrete rays plus the specular term of the
// exact table the generator uses; equals one for a valid configuration.
double ray_power_total(const SosParameterization& par, const ScenarioConfig& cfg, int p, int q);

// Correlation statistics of the finite-ray model, mirroring the reference
// expressions with region sums in place of expectations. sim_stcf applies
// the 1 / (K + 1) normalisation to the summed components.
std::complex<double> sim_stcf_los(double dt, double dr, double tau, const ScenarioConfig& cfg);
std::complex<double> sim_stcf_sb(const SosParameterization& par, Region region, double dt, double dr, double tau,
                                 const ScenarioConfig& cfg);
std::complex<double> sim_stcf_db(const SosParameterization& par, double dt, double dr, double tau,
                                 const ScenarioConfig& cfg);
std::complex<double> sim_stcf(const SosParameterization& par, double dt, double dr, double tau,
                              const ScenarioConfig& cfg);

StatCurve sim_doppler_psd(const SosParameterization& par, const ScenarioConfig& cfg, const UniformGrid& lag_grid);

// Controls for the Hankel-transform densities of the finite-ray envelope
// and phase. x_max = 0 lets the envelope tail bound pick the truncation
// point; configurations whose ray gains decay too slowly for the bound
// (very few rays) need an explicit x_max.
struct HankelOptions
{
    double tail_tol = 1e-10;
    double x_max = 0.0;
    QuadratureSpec quad{QuadratureSpec::Rule::adaptive, 1e-10, 1e-8, 4000};
};

// Envelope density of the finite-ray channel: a Hankel-type integral over
// the product of one Bessel characteristic factor per ray group.
double sim_amplitude_pdf(double z, const ScenarioConfig& cfg, const HankelOptions& opt = {});

// Phase density of the finite-ray channel by the same transform, taken
// through an amplitude-plane integral around the specular component.
double sim_phase_pdf(double theta, const ScenarioConfig& cfg, const HankelOptions& opt = {});

// Spectral moments of the finite-ray model. The double-bounce terms keep
// the published prefactor eta_db / (K + 1), twice the weight their
// reference-model counterparts carry; see prefactor_diagnostic.
SpectralMoments sim_spectral_moments(const SosParameterization& par, const ScenarioConfig& cfg);

double sim_lcr(double r, const SosParameterization& par, const ScenarioConfig& cfg);
double sim_lcr(double r, const ScenarioConfig& cfg, const SpectralMoments& m);
double sim_afd(double r, const SosParameterization& par, const ScenarioConfig& cfg);
double sim_afd(double r, const ScenarioConfig& cfg, const SpectralMoments& m);

// Side-by-side double-bounce moment terms under the published simulator
// prefactor and under the halved reference-model weight, with the resulting
// totals, for scenario reports.
struct PrefactorDiagnostic
{
    double db_b1_published = 0.0;
    double db_b1_halved = 0.0;
    double db_b2_published = 0.0;
    double db_b2_halved = 0.0;
    double total_b2_published = 0.0;
    double total_b2_halved = 0.0;
    std::string note;
};

PrefactorDiagnostic prefactor_diagnostic(const SosParameterization& par, const ScenarioConfig& cfg);

} // namespace v2v

#endif
