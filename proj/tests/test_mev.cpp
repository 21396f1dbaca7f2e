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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <v2v/mev.hpp>

#include "testkit/configs.hpp"

using namespace v2v;
namespace tk = v2v::testkit;

TEST_CASE("deterministic rays sit at shifted equal-mass quantiles")
{
    const int n = 40;
    VmfParams p{0.3787364476827443, 0.11693705988362009, 9.6};
    VmfMarginals marg(p, false);

    AngleSet set = mev_angles(p, n, Region::sb1, false);
    REQUIRE(int(set.pairs.size()) == n);

    // each marginal CDF lands on (m - 1/4)/n, so consecutive rays enclose
    // exactly 1/n of the marginal mass
    double prev_a = 0.0, prev_e = 0.0;
    for (int m = 1; m <= n; m++)
    {
        double want = (double(m) - 0.25) / n;
        double ua = marg.azimuth_cdf(set.pairs[m - 1].alpha);
        double ue = marg.elevation_cdf(set.pairs[m - 1].beta);
        CHECK(ua == doctest::Approx(want).epsilon(1e-9));
        CHECK(ue == doctest::Approx(want).epsilon(1e-9));
        if (m > 1)
        {
            CHECK(ua - prev_a == doctest::Approx(1.0 / n).epsilon(1e-7));
            CHECK(ue - prev_e == doctest::Approx(1.0 / n).epsilon(1e-7));
        }
        prev_a = ua;
        prev_e = ue;
    }
}

TEST_CASE("azimuths come back wrapped and rank paired")
{
    // a mean near the seam forces the quantile window across +-pi
    VmfParams p{2.9950130270385663, 0.5515240436923533, 11.5};
    AngleSet set = mev_angles(p, 25, Region::sb3, false);

    VmfMarginals marg(p, false);
    for (std::size_t i = 0; i < set.pairs.size(); i++)
    {
        CHECK(set.pairs[i].alpha >= -M_PI);
        CHECK(set.pairs[i].alpha < M_PI);

        // pairing is by rank: the m-th azimuth quantile goes with the m-th
        // elevation quantile, so both CDF images must be equal
        double ua = marg.azimuth_cdf(set.pairs[i].alpha < marg.azimuth_domain().first
                                         ? set.pairs[i].alpha + 2.0 * M_PI
                                         : set.pairs[i].alpha);
        double ue = marg.elevation_cdf(set.pairs[i].beta);
        CHECK(ua == doctest::Approx(ue).epsilon(1e-9));
    }
}

TEST_CASE("planar mode produces a flat fan")
{
    VmfParams p{0.5, 0.3, 3.6};
    AngleSet set = mev_angles(p, 16, Region::sb2, true);
    for (const AnglePair& ap : set.pairs)
        CHECK(ap.beta == 0.0);

    // azimuths strictly increasing in quantile order once unwrapped into
    // the marginal window around the mean
    auto [dlo, dhi] = VmfMarginals(p, true).azimuth_domain();
    double prev = dlo - 1.0;
    for (const AnglePair& ap : set.pairs)
    {
        double a = ap.alpha < dlo ? ap.alpha + 2.0 * M_PI : ap.alpha;
        CHECK(a <= dhi);
        CHECK(a > prev);
        prev = a;
    }
}

TEST_CASE("ray construction rejects impossible requests")
{
    VmfParams p{0.0, 0.0, 1.0};
    CHECK_THROWS_AS(mev_angles(p, 0, Region::sb1, false), std::invalid_argument);
    CHECK_THROWS_AS(mev_angles(p, -3, Region::sb1, false), std::invalid_argument);
    CHECK_THROWS_AS(mev_angles(p, 10, Region::db, false), std::invalid_argument);
}

TEST_CASE("scenario angle sets couple every region consistently")
{
    ScenarioConfig cfg = tk::low_vtd_config();
    cfg.n1 = 12;
    cfg.n2 = 9;
    cfg.n3 = 7;

    CoupledAngleSets sets = coupled_angle_sets(cfg);
    REQUIRE(int(sets.sb1.rays.size()) == 12);
    REQUIRE(int(sets.sb2.rays.size()) == 9);
    REQUIRE(int(sets.sb3.rays.size()) == 7);

    for (std::size_t i = 0; i < sets.sb1.rays.size(); i++)
    {
        CHECK(sets.sb1.rays[i].region == Region::sb1);
        CHECK(sets.sb1.rays[i].alpha_t == sets.sb1.angles.pairs[i].alpha);
        CHECK(sets.sb1.rays[i].beta_t == sets.sb1.angles.pairs[i].beta);
    }
    for (std::size_t i = 0; i < sets.sb2.rays.size(); i++)
    {
        CHECK(sets.sb2.rays[i].region == Region::sb2);
        CHECK(sets.sb2.rays[i].alpha_r == sets.sb2.angles.pairs[i].alpha);
    }
    for (std::size_t i = 0; i < sets.sb3.rays.size(); i++)
    {
        CHECK(sets.sb3.rays[i].region == Region::sb3);
        CHECK(sets.sb3.rays[i].alpha_r == sets.sb3.angles.pairs[i].alpha);
    }

    // invalid scene parameters surface before any coupling happens
    ScenarioConfig bad = cfg;
    bad.eta_db = 0.5;
    CHECK_THROWS_AS(coupled_angle_sets(bad), std::invalid_argument);
}

TEST_CASE("angle table writes one row per ray")
{
    ScenarioConfig cfg = tk::high_vtd_config();
    cfg.n1 = 5;
    cfg.n2 = 6;
    cfg.n3 = 4;

    const std::string path = "mev_angles_test.csv";
    write_angles_csv(coupled_angle_sets(cfg), path);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    REQUIRE(bool(std::getline(in, line)));
    CHECK(line == "region,index,alpha_rad,beta_rad,alpha_coupled_rad,beta_coupled_rad");
    while (std::getline(in, line))
        if (!line.empty())
            rows++;
    CHECK(rows == 15);
    in.close();
    std::remove(path.c_str());
}
