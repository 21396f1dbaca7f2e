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

// Independent reference computations for the test suite. Everything here
// deliberately avoids the code paths it is used to check: geometry is done
// with explicit cartesian coordinates, special functions with direct series
// or integral definitions, expectations with Monte Carlo draws instead of
// quadrature, and crossing counts with plain sample comparisons.

#ifndef v2vchan_testkit_oracles_H
#define v2vchan_testkit_oracles_H

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "v2v/geometry.hpp"

namespace v2v::testkit
{

struct Vec3
{
    double x = 0.0, y = 0.0, z = 0.0;
};

Vec3 operator+(Vec3 a, Vec3 b);
Vec3 operator-(Vec3 a, Vec3 b);
Vec3 operator*(double s, Vec3 v);
double norm(Vec3 v);

// Cartesian placement of the scene: transmitter reference point at the
// origin, receiver reference point at (d, 0, 0), both element axes given
// by their azimuth/elevation direction in the common frame.
Vec3 tx_element_pos(int p, const ScenarioConfig& cfg);
Vec3 rx_element_pos(int q, const ScenarioConfig& cfg);

// Scatterer positions from the free-side angles of each region: on the
// transmit sphere for sb1, on the receive sphere for sb2, and on the
// elliptic cylinder (horizontal range b^2 / (a + f cos(alpha)), height
// range*tan(beta)) for sb3.
Vec3 scatterer_pos_sb1(double alpha_t, double beta_t, const ScenarioConfig& cfg);
Vec3 scatterer_pos_sb2(double alpha_r, double beta_r, const ScenarioConfig& cfg);
Vec3 scatterer_pos_sb3(double alpha_r, double beta_r, const ScenarioConfig& cfg);

// Direct Bessel and error function evaluations from their defining
// integral/series, long double arithmetic, no shared code with v2v.
double oracle_j0(double x);
double oracle_i0(double x);
double oracle_erf(double x);

// First order Marcum Q through its defining integral, using the standard
// library Bessel function, integrated over [b, a + 40] by composite
// Gauss panels.
double oracle_marcum_q1(double a, double b);

// Monte Carlo estimate of E[f(coupled ray)] under the region's angular
// density, using the library sampler but no quadrature. Returns the mean;
// fills se with the standard error of each complex component combined in
// quadrature.
std::complex<double> mc_region_expect(Region region, const ScenarioConfig& cfg,
                                      const std::function<std::complex<double>(const CoupledRay&)>& fn,
                                      int n_samples, std::uint64_t seed, double* se);

// Exact discrete crossing counter over an envelope record: strict
// comparisons, sample hold below time, no interpolation.
struct CrossingCount
{
    long long ups = 0;
    long long downs = 0;
    double below_time = 0.0;
};

CrossingCount count_crossings(const std::vector<double>& envelope, double step, double level);

// Minimal CSV support for the acceptance binary: reads the whole table,
// exposes columns by header name.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

// One pass/fail line per acceptance criterion, plus a CSV report.
struct CriterionResult
{
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

void write_report(const std::vector<CriterionResult>& results, const std::string& path);

} // namespace v2v::testkit

#endif
