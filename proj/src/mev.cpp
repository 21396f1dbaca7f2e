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

#include "v2v/mev.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "v2v/statcurve.hpp"

namespace v2v
{

AngleSet mev_angles(const VmfParams& params, int n, Region region, bool planar)
{
    if (n < 1)
        throw std::invalid_argument("mev_angles: ray count must be at least 1");
    if (region == Region::db)
        throw std::invalid_argument("mev_angles: the double bounce has no angle set of its own");

    VmfMarginals marg(params, planar);
    AngleSet set;
    set.region = region;
    set.source = params;
    set.pairs.resize(n);
    for (int m = 1; m <= n; m++)
    {
        double u = (double(m) - 0.25) / double(n);
        double alpha = marg.azimuth_icdf(u);
        alpha -= 2.0 * M_PI * std::floor((alpha + M_PI) / (2.0 * M_PI));
        set.pairs[m - 1] = {alpha, marg.elevation_icdf(u)};
    }
    return set;
}

CoupledAngleSets coupled_angle_sets(const ScenarioConfig& cfg)
{
    ensure_valid(cfg);
    CoupledAngleSets out;

    out.sb1.angles = mev_angles(cfg.vmf_sb1, cfg.n1, Region::sb1, cfg.mode_2d);
    out.sb2.angles = mev_angles(cfg.vmf_sb2, cfg.n2, Region::sb2, cfg.mode_2d);
    out.sb3.angles = mev_angles(cfg.vmf_sb3, cfg.n3, Region::sb3, cfg.mode_2d);

    out.sb1.rays.reserve(cfg.n1);
    for (const AnglePair& ap : out.sb1.angles.pairs)
        out.sb1.rays.push_back(couple_sb1(ap.alpha, ap.beta, cfg));
    out.sb2.rays.reserve(cfg.n2);
    for (const AnglePair& ap : out.sb2.angles.pairs)
        out.sb2.rays.push_back(couple_sb2(ap.alpha, ap.beta, cfg));
    out.sb3.rays.reserve(cfg.n3);
    for (const AnglePair& ap : out.sb3.angles.pairs)
        out.sb3.rays.push_back(couple_sb3(ap.alpha, ap.beta, cfg));
    return out;
}

void write_angles_csv(const CoupledAngleSets& sets, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_angles_csv: cannot open '" + path + "' for writing");
    out << "region,index,alpha_rad,beta_rad,alpha_coupled_rad,beta_coupled_rad\n";

    auto dump = [&out](const CoupledAngleSet& cs) {
        for (std::size_t i = 0; i < cs.rays.size(); i++)
        {
            const CoupledRay& r = cs.rays[i];
            bool tx_free = cs.angles.region == Region::sb1;
            double af = tx_free ? r.alpha_t : r.alpha_r;
            double bf = tx_free ? r.beta_t : r.beta_r;
            double ac = tx_free ? r.alpha_r : r.alpha_t;
            double bc = tx_free ? r.beta_r : r.beta_t;
            out << region_name(cs.angles.region) << ',' << (i + 1) << ',' << format_double(af) << ','
                << format_double(bf) << ',' << format_double(ac) << ',' << format_double(bc) << '\n';
        }
    };
    dump(sets.sb1);
    dump(sets.sb2);
    dump(sets.sb3);
    if (!out.good())
        throw std::runtime_error("write_angles_csv: write to '" + path + "' failed");
}

} // namespace v2v
