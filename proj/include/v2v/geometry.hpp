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

#ifndef v2vchan_geometry_H
#define v2vchan_geometry_H

#include <cmath>
#include <string>
#include <vector>

#include "v2v/vmf.hpp"

namespace v2v
{

constexpr double speed_of_light = 299792458.0;

// Scattering regions of the model: a sphere of local scatterers around the
// transmitter (sb1), one around the receiver (sb2), an elliptic cylinder of
// roadside scatterers with the terminals at its foci (sb3), and the
// double-bounce route over both spheres (db).
enum class Region
{
    sb1,
    sb2,
    sb3,
    db
};

const char* region_name(Region r);

// Full parameter set of one propagation scenario. Angles are radians,
// lengths metres, frequencies Hz. The transmitter sits at the origin, the
// receiver at (d, 0, 0); both element arrays may be tilted by an azimuth
// theta and elevation phi, and both terminals move with maximum Doppler
// f_tmax / f_rmax along azimuth gamma_t / gamma_r.
struct ScenarioConfig
{
    double fc = 5.9e9;
    double f_tmax = 570.0;
    double f_rmax = 570.0;
    double gamma_t = 0.0;
    double gamma_r = 0.0;

    double d = 300.0;
    double r_t = 15.0;
    double r_r = 15.0;
    double a_ell = 180.0;

    int m_t = 2;
    int m_r = 2;
    double delta_t = 0.0;
    double delta_r = 0.0;
    double theta_t = 0.0;
    double phi_t = 0.0;
    double theta_r = 0.0;
    double phi_r = 0.0;

    double k_rice = 0.0;
    double eta_sb1 = 0.0;
    double eta_sb2 = 0.0;
    double eta_sb3 = 0.0;
    double eta_db = 0.0;

    int n1 = 40;
    int n2 = 40;
    int n3 = 40;

    VmfParams vmf_sb1;
    VmfParams vmf_sb2;
    VmfParams vmf_sb3;

    // collapse all elevation angles to zero and switch the angular law to
    // the planar von Mises density
    bool mode_2d = false;

    double wavelength() const
    {
        return speed_of_light / fc;
    }

    double focal_length() const
    {
        return 0.5 * d;
    }

    double b_ell() const
    {
        return std::sqrt(a_ell * a_ell - focal_length() * focal_length());
    }

    double eta(Region r) const;
    const VmfParams& vmf(Region r) const;
    int rays(Region r) const;
};

struct Diagnostic
{
    bool is_error = false;
    std::string field;
    std::string message;
};

// Structural checks: positive lengths and frequencies, the ellipse enclosing
// both foci, terminal spacing clearing both spheres, power fractions summing
// to one, valid angular parameters. Ratio guidance (sphere radii small
// against d, array apertures small against the scatterer distances) comes
// back as warnings.
std::vector<Diagnostic> validate_config(const ScenarioConfig& cfg);

// Throws std::invalid_argument with the first error from validate_config.
void ensure_valid(const ScenarioConfig& cfg);

// Signed offset of element u in an m-element uniform array with the given
// spacing: (m - 2u + 1)/2 * spacing, u counted from 1.
double element_offset(int u, int m, double spacing);

// One scatterer direction with the dependent side filled in from the
// geometric coupling of its region. For the spheres the coupling keeps the
// small-tilt form (the folded elevation only ever enters through its
// cosine); for the cylinder the ellipse relations are exact, with the
// departure azimuth resolved to the correct quadrant. Auxiliary lengths:
// q is the horizontal distance of the scatterer from the far terminal,
// xi its slant distance from the far terminal, xi_t / xi_r the slant
// distances from transmitter / receiver for the cylinder.
struct CoupledRay
{
    Region region = Region::sb1;
    double alpha_t = 0.0;
    double beta_t = 0.0;
    double alpha_r = 0.0;
    double beta_r = 0.0;
    double q = 0.0;
    double xi = 0.0;
    double xi_t = 0.0;
    double xi_r = 0.0;
};

CoupledRay couple_sb1(double alpha_t, double beta_t, const ScenarioConfig& cfg);
CoupledRay couple_sb2(double alpha_r, double beta_r, const ScenarioConfig& cfg);
CoupledRay couple_sb3(double alpha_r, double beta_r, const ScenarioConfig& cfg);
CoupledRay couple(Region r, double alpha_free, double beta_free, const ScenarioConfig& cfg);

// Per-ray phase geometry shared by the correlation integrals and the
// simulator: the element-spacing factors of the spatial phase
//   A = delta_t * a_t + delta_r * a_r        (metres)
// and the Doppler factors of the temporal phase
//   f = f_tmax * b + f_rmax * c              (Hz).
struct RayTerms
{
    double a_t = 0.0;
    double a_r = 0.0;
    double b = 0.0;
    double c = 0.0;
};

RayTerms ray_terms(const CoupledRay& ray, const ScenarioConfig& cfg);

// Line-of-sight terms; the wave leaves along the axis and arrives from the
// opposite direction, so only the array tilts and motion azimuths remain.
RayTerms los_terms(const ScenarioConfig& cfg);

// Double-bounce factors split by side: the transmit side only constrains
// (a_t, b), the receive side only (a_r, c).
RayTerms db_tx_terms(double alpha_t, double beta_t, const ScenarioConfig& cfg);
RayTerms db_rx_terms(double alpha_r, double beta_r, const ScenarioConfig& cfg);

// Ray path lengths between element p of the transmit array and element q of
// the receive array, split into hops. eps_mid is the scatterer-to-scatterer
// hop of the double-bounce route and stays zero otherwise.
struct PathLengths
{
    double eps_direct = 0.0; // transmit element to receive element
    double eps_tx_hop = 0.0; // transmit element to first scatterer
    double eps_rx_hop = 0.0; // last scatterer to receive element
    double eps_mid = 0.0;

    double total() const
    {
        return eps_tx_hop + eps_mid + eps_rx_hop;
    }
};

PathLengths path_lengths_los(int p, int q, const ScenarioConfig& cfg);
PathLengths path_lengths(const CoupledRay& ray, int p, int q, const ScenarioConfig& cfg);
PathLengths path_lengths_db(const CoupledRay& tx_ray, const CoupledRay& rx_ray, int p, int q,
                            const ScenarioConfig& cfg);

// Propagation delays in seconds.
double delay_los(int p, int q, const ScenarioConfig& cfg);
double delay(const PathLengths& pl);

} // namespace v2v

#endif
