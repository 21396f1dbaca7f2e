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

#ifndef v2vchan_mev_H
#define v2vchan_mev_H

#include <string>
#include <vector>

#include "v2v/geometry.hpp"
#include "v2v/vmf.hpp"

namespace v2v
{

struct AnglePair
{
    double alpha = 0.0;
    double beta = 0.0;
};

// Deterministic ray directions for one region, drawn at the marginal
// quantile levels u_m = (m - 1/4) / n.
struct AngleSet
{
    Region region = Region::sb1;
    VmfParams source;
    std::vector<AnglePair> pairs;
};

// Method of exact volumes: place ray m at the (m - 1/4)/n quantile of the
// azimuth marginal and of the elevation marginal, pairing equal ranks, then
// wrap azimuths back to [-pi, pi). Adjacent azimuth quantiles enclose
// exactly 1/n of the marginal mass by construction. In planar mode all
// elevations are zero and the azimuth law is the von Mises density.
AngleSet mev_angles(const VmfParams& params, int n, Region region, bool planar);

// Angle set of one region together with the coupled rays that complete each
// direction at the other terminal.
struct CoupledAngleSet
{
    AngleSet angles;
    std::vector<CoupledRay> rays;
};

struct CoupledAngleSets
{
    CoupledAngleSet sb1, sb2, sb3;
};

// All three single-bounce regions of a scenario; the double-bounce route
// reuses the sb1 and sb2 sets.
CoupledAngleSets coupled_angle_sets(const ScenarioConfig& cfg);

// region,index,alpha_rad,beta_rad,alpha_coupled_rad,beta_coupled_rad
// where (alpha_rad, beta_rad) is the free side of each region.
void write_angles_csv(const CoupledAngleSets& sets, const std::string& path);

} // namespace v2v

#endif
