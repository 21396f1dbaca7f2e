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

#ifndef v2vchan_vmf_H
#define v2vchan_vmf_H

#include <random>
#include <utility>
#include <vector>

namespace v2v
{

// Mean direction and concentration of a von Mises-Fisher distribution on the
// unit sphere, parameterised by azimuth alpha0, elevation beta0 and k >= 0.
// k = 0 degenerates to the uniform sphere.
struct VmfParams
{
    double alpha0 = 0.0;
    double beta0 = 0.0;
    double k = 0.0;
};

void validate_vmf(const VmfParams& p);

// Joint density in (azimuth, elevation) coordinates with elevation restricted
// to [-pi/2, pi/2]; the cos(beta) area factor is included, so the density
// integrates to one over alpha in any 2*pi window and beta in [-pi/2, pi/2].
// Throws std::domain_error for |beta| > pi/2.
double vmf_pdf(double alpha, double beta, const VmfParams& p);

// Planar von Mises density exp(k cos(alpha - alpha0)) / (2 pi I0(k)); this is
// the conditional azimuth law of the sphere model on the horizontal plane and
// is the angular law used when the geometry runs in 2-D mode.
double vm_pdf(double alpha, const VmfParams& p);

// Draw (azimuth, elevation) by exact inversion: the cosine of the polar angle
// around the mean direction has CDF (e^{k w} - e^{-k}) / (e^k - e^{-k}).
std::pair<double, double> vmf_sample(const VmfParams& p, std::mt19937_64& rng);

// Cached marginal CDFs and their inverses for one parameter set.
//
// The elevation marginal of the sphere density has the closed form
//   g(beta) = k cos(beta) / (2 sinh k) * I0(k cos(beta0) cos(beta)) * e^{k sin(beta0) sin(beta)}
// while the azimuth marginal needs one numeric elevation integral per
// abscissa. Both CDFs are tabulated on 2048 uniform cells with Gauss panel
// integrals and interpolated with a monotone cubic, so inversion by bisection
// is well defined. The azimuth domain is the shifted window
// [alpha0 - pi, alpha0 + pi) which keeps the density peak away from the seam.
//
// In planar mode the azimuth marginal is the von Mises law and the elevation
// is degenerate at zero.
class VmfMarginals
{
  public:
    VmfMarginals(const VmfParams& p, bool planar);

    double azimuth_pdf(double alpha) const;
    double elevation_pdf(double beta) const;

    double azimuth_cdf(double alpha) const;
    double elevation_cdf(double beta) const;

    // u in [0, 1]; inverse to an abscissa tolerance of 1e-12
    double azimuth_icdf(double u) const;
    double elevation_icdf(double u) const;

    std::pair<double, double> azimuth_domain() const;
    bool planar() const
    {
        return planar_;
    }

    // |raw marginal mass - 1| before normalisation, a build-time self check
    double mass_defect() const
    {
        return mass_defect_;
    }

    const VmfParams& params() const
    {
        return params_;
    }

  private:
    struct MonotoneCubic
    {
        std::vector<double> x, y, d;
        double eval(double v) const;
        double inverse(double target, double lo, double hi) const;
    };

    VmfParams params_;
    bool planar_ = false;
    double az_lo_ = 0.0, az_hi_ = 0.0;
    double mass_defect_ = 0.0;
    MonotoneCubic az_cdf_, el_cdf_;
};

} // namespace v2v

#endif
