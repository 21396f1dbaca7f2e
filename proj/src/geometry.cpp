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

#include "v2v/geometry.hpp"

#include <stdexcept>

namespace v2v
{

namespace
{

double clamp_unit(double v)
{
    return std::fmin(1.0, std::fmax(-1.0, v));
}

} // namespace

const char* region_name(Region r)
{
    switch (r)
    {
    case Region::sb1:
        return "sb1";
    case Region::sb2:
        return "sb2";
    case Region::sb3:
        return "sb3";
    case Region::db:
        return "db";
    }
    return "?";
}

double ScenarioConfig::eta(Region r) const
{
    switch (r)
    {
    case Region::sb1:
        return eta_sb1;
    case Region::sb2:
        return eta_sb2;
    case Region::sb3:
        return eta_sb3;
    case Region::db:
        return eta_db;
    }
    return 0.0;
}

const VmfParams& ScenarioConfig::vmf(Region r) const
{
    switch (r)
    {
    case Region::sb2:
        return vmf_sb2;
    case Region::sb3:
        return vmf_sb3;
    default:
        return vmf_sb1;
    }
}

int ScenarioConfig::rays(Region r) const
{
    switch (r)
    {
    case Region::sb1:
        return n1;
    case Region::sb2:
        return n2;
    case Region::sb3:
        return n3;
    case Region::db:
        return n1 * n2;
    }
    return 0;
}

std::vector<Diagnostic> validate_config(const ScenarioConfig& cfg)
{
    std::vector<Diagnostic> out;
    auto err = [&out](const std::string& field, const std::string& msg) {
        out.push_back({true, field, msg});
    };
    auto warn = [&out](const std::string& field, const std::string& msg) {
        out.push_back({false, field, msg});
    };

    const double scalars[] = {cfg.fc,      cfg.f_tmax,  cfg.f_rmax,  cfg.gamma_t, cfg.gamma_r, cfg.d,
                              cfg.r_t,     cfg.r_r,     cfg.a_ell,   cfg.delta_t, cfg.delta_r, cfg.theta_t,
                              cfg.phi_t,   cfg.theta_r, cfg.phi_r,   cfg.k_rice,  cfg.eta_sb1, cfg.eta_sb2,
                              cfg.eta_sb3, cfg.eta_db};
    for (double v : scalars)
        if (!std::isfinite(v))
        {
            err("config", "all scalar parameters must be finite");
            return out;
        }

    if (cfg.fc <= 0.0)
        err("fc", "carrier frequency must be positive");
    if (cfg.f_tmax <= 0.0)
        err("f_tmax", "transmit Doppler must be positive");
    if (cfg.f_rmax <= 0.0)
        err("f_rmax", "receive Doppler must be positive");
    if (cfg.d <= 0.0)
        err("d", "terminal spacing must be positive");
    if (cfg.r_t <= 0.0)
        err("r_t", "transmit scatterer radius must be positive");
    if (cfg.r_r <= 0.0)
        err("r_r", "receive scatterer radius must be positive");
    if (cfg.a_ell <= cfg.focal_length())
        err("a_ell", "ellipse semi-major axis must exceed half the terminal spacing");
    if (cfg.d <= std::fmax(cfg.r_t, cfg.r_r))
        err("d", "terminal spacing must exceed both scatterer radii");

    if (cfg.m_t < 1)
        err("m_t", "transmit array needs at least one element");
    if (cfg.m_r < 1)
        err("m_r", "receive array needs at least one element");
    if (cfg.delta_t < 0.0)
        err("delta_t", "element spacing cannot be negative");
    if (cfg.delta_r < 0.0)
        err("delta_r", "element spacing cannot be negative");

    double clearance = std::fmin(std::fmin(cfg.r_t, cfg.r_r), cfg.a_ell - cfg.focal_length());
    double spacing = std::fmax(cfg.delta_t, cfg.delta_r);
    if (spacing > 0.0 && clearance <= spacing)
        err("delta_t", "element spacing must stay below every scatterer clearance");
    else if (spacing > 0.0 && clearance < 10.0 * spacing)
        warn("delta_t", "element spacing within a tenth of the scatterer clearance, first-order path "
                        "lengths degrade");
    if (cfg.d < 10.0 * std::fmax(cfg.r_t, cfg.r_r))
        warn("d", "terminal spacing under ten sphere radii, the sphere couplings lose accuracy");

    if (cfg.k_rice < 0.0)
        err("k_rice", "Ricean factor cannot be negative");
    const double etas[] = {cfg.eta_sb1, cfg.eta_sb2, cfg.eta_sb3, cfg.eta_db};
    for (double e : etas)
        if (e < 0.0)
        {
            err("eta", "power fractions cannot be negative");
            break;
        }
    double eta_sum = cfg.eta_sb1 + cfg.eta_sb2 + cfg.eta_sb3 + cfg.eta_db;
    if (std::fabs(eta_sum - 1.0) > 1e-9)
        err("eta", "power fractions must sum to one, got " + std::to_string(eta_sum));

    if (cfg.n1 < 1 || cfg.n2 < 1 || cfg.n3 < 1)
        err("rays", "every region needs at least one ray");

    const Region regions[] = {Region::sb1, Region::sb2, Region::sb3};
    for (Region r : regions)
    {
        try
        {
            validate_vmf(cfg.vmf(r));
        }
        catch (const std::exception& e)
        {
            err(std::string("vmf_") + region_name(r), e.what());
        }
    }
    return out;
}

void ensure_valid(const ScenarioConfig& cfg)
{
    for (const Diagnostic& d : validate_config(cfg))
        if (d.is_error)
            throw std::invalid_argument("ScenarioConfig: " + d.field + ": " + d.message);
}

double element_offset(int u, int m, double spacing)
{
    if (m < 1 || u < 1 || u > m)
        throw std::invalid_argument("element_offset: element index " + std::to_string(u) + " outside array of " +
                                    std::to_string(m));
    return 0.5 * double(m - 2 * u + 1) * spacing;
}

CoupledRay couple_sb1(double alpha_t, double beta_t, const ScenarioConfig& cfg)
{
    CoupledRay ray;
    ray.region = Region::sb1;
    ray.alpha_t = alpha_t;
    ray.beta_t = beta_t;
    ray.q = cfg.d - cfg.r_t * std::cos(beta_t) * std::cos(alpha_t);
    ray.xi = std::sqrt(ray.q * ray.q + cfg.r_t * cfg.r_t * std::sin(beta_t) * std::sin(beta_t));
    ray.alpha_r = M_PI - (cfg.r_t / cfg.d) * std::sin(alpha_t);
    ray.beta_r = std::acos(clamp_unit(ray.q / ray.xi));
    return ray;
}

CoupledRay couple_sb2(double alpha_r, double beta_r, const ScenarioConfig& cfg)
{
    CoupledRay ray;
    ray.region = Region::sb2;
    ray.alpha_r = alpha_r;
    ray.beta_r = beta_r;
    ray.q = cfg.d + cfg.r_r * std::cos(beta_r) * std::cos(alpha_r);
    ray.xi = std::sqrt(ray.q * ray.q + cfg.r_r * cfg.r_r * std::sin(beta_r) * std::sin(beta_r));
    ray.alpha_t = (cfg.r_r / cfg.d) * std::sin(alpha_r);
    ray.beta_t = std::acos(clamp_unit(ray.q / ray.xi));
    return ray;
}

CoupledRay couple_sb3(double alpha_r, double beta_r, const ScenarioConfig& cfg)
{
    double cb = std::cos(beta_r);
    if (cb < 1e-12)
        throw std::domain_error("couple_sb3: cylinder elevation too close to +-pi/2");

    const double a = cfg.a_ell;
    const double f = cfg.focal_length();
    const double b2 = a * a - f * f;
    const double den = a + f * std::cos(alpha_r);

    CoupledRay ray;
    ray.region = Region::sb3;
    ray.alpha_r = alpha_r;
    ray.beta_r = beta_r;
    double rr = b2 / den; // horizontal range from the receiver
    ray.q = (a * a + f * f + 2.0 * a * f * std::cos(alpha_r)) / den;
    ray.xi_r = (2.0 * a - ray.q) / cb;
    ray.xi_t = std::sqrt(ray.q * ray.q + ray.xi_r * ray.xi_r * std::sin(beta_r) * std::sin(beta_r));
    ray.alpha_t = std::atan2(rr * std::sin(alpha_r), cfg.d + rr * std::cos(alpha_r));
    ray.beta_t = std::acos(clamp_unit(ray.q / ray.xi_t));
    return ray;
}

CoupledRay couple(Region r, double alpha_free, double beta_free, const ScenarioConfig& cfg)
{
    switch (r)
    {
    case Region::sb1:
        return couple_sb1(alpha_free, beta_free, cfg);
    case Region::sb2:
        return couple_sb2(alpha_free, beta_free, cfg);
    case Region::sb3:
        return couple_sb3(alpha_free, beta_free, cfg);
    default:
        throw std::invalid_argument("couple: double bounce uses one sb1 and one sb2 ray");
    }
}

RayTerms ray_terms(const CoupledRay& ray, const ScenarioConfig& cfg)
{
    RayTerms t;
    t.b = std::cos(ray.alpha_t - cfg.gamma_t) * std::cos(ray.beta_t);
    t.c = std::cos(ray.alpha_r - cfg.gamma_r) * std::cos(ray.beta_r);
    switch (ray.region)
    {
    case Region::sb1:
        t.a_t = std::sin(ray.beta_t) * std::sin(cfg.phi_t) +
                std::cos(ray.beta_t) * std::cos(cfg.phi_t) * std::cos(cfg.theta_t - ray.alpha_t);
        t.a_r = (cfg.r_t * std::sin(ray.beta_t) * std::sin(cfg.phi_r) -
                 ray.q * std::cos(cfg.phi_r) * std::cos(ray.alpha_r - cfg.theta_r)) /
                ray.xi;
        break;
    case Region::sb2:
        t.a_t = (cfg.r_r * std::sin(ray.beta_r) * std::sin(cfg.phi_t) +
                 ray.q * std::cos(cfg.phi_t) * std::cos(ray.alpha_t - cfg.theta_t)) /
                ray.xi;
        t.a_r = std::sin(ray.beta_r) * std::sin(cfg.phi_r) +
                std::cos(ray.beta_r) * std::cos(cfg.phi_r) * std::cos(cfg.theta_r - ray.alpha_r);
        break;
    case Region::sb3:
        t.a_t = (ray.xi_r * std::sin(ray.beta_r) * std::sin(cfg.phi_t) +
                 ray.q * std::cos(cfg.phi_t) * std::cos(ray.alpha_t - cfg.theta_t)) /
                ray.xi_t;
        t.a_r = std::sin(ray.beta_r) * std::sin(cfg.phi_r) +
                std::cos(ray.beta_r) * std::cos(cfg.phi_r) * std::cos(ray.alpha_r - cfg.theta_r);
        break;
    case Region::db:
        throw std::invalid_argument("ray_terms: double bounce splits into db_tx_terms and db_rx_terms");
    }
    return t;
}

RayTerms los_terms(const ScenarioConfig& cfg)
{
    RayTerms t;
    t.a_t = std::cos(cfg.phi_t) * std::cos(cfg.theta_t);
    t.a_r = -std::cos(cfg.phi_r) * std::cos(cfg.theta_r);
    t.b = std::cos(cfg.gamma_t);
    t.c = -std::cos(cfg.gamma_r);
    return t;
}

RayTerms db_tx_terms(double alpha_t, double beta_t, const ScenarioConfig& cfg)
{
    RayTerms t;
    t.a_t = std::sin(beta_t) * std::sin(cfg.phi_t) +
            std::cos(beta_t) * std::cos(cfg.phi_t) * std::cos(cfg.theta_t - alpha_t);
    t.b = std::cos(alpha_t - cfg.gamma_t) * std::cos(beta_t);
    return t;
}

RayTerms db_rx_terms(double alpha_r, double beta_r, const ScenarioConfig& cfg)
{
    RayTerms t;
    t.a_r = std::sin(beta_r) * std::sin(cfg.phi_r) +
            std::cos(beta_r) * std::cos(cfg.phi_r) * std::cos(cfg.theta_r - alpha_r);
    t.c = std::cos(alpha_r - cfg.gamma_r) * std::cos(beta_r);
    return t;
}

PathLengths path_lengths_los(int p, int q, const ScenarioConfig& cfg)
{
    double ot = element_offset(p, cfg.m_t, cfg.delta_t);
    double orx = element_offset(q, cfg.m_r, cfg.delta_r);
    double xi = cfg.d - ot * std::cos(cfg.phi_t) * std::cos(cfg.theta_t);
    PathLengths pl;
    pl.eps_direct = xi - (orx / xi) * (ot * std::sin(cfg.phi_t) * std::sin(cfg.phi_r) -
                                       xi * std::cos(cfg.phi_r) * std::cos(cfg.theta_r));
    return pl;
}

PathLengths path_lengths(const CoupledRay& ray, int p, int q, const ScenarioConfig& cfg)
{
    double ot = element_offset(p, cfg.m_t, cfg.delta_t);
    double orx = element_offset(q, cfg.m_r, cfg.delta_r);
    RayTerms t = ray_terms(ray, cfg);
    PathLengths pl;
    switch (ray.region)
    {
    case Region::sb1:
        pl.eps_tx_hop = cfg.r_t - ot * t.a_t;
        pl.eps_rx_hop = ray.xi - orx * t.a_r;
        break;
    case Region::sb2:
        pl.eps_tx_hop = ray.xi - ot * t.a_t;
        pl.eps_rx_hop = cfg.r_r - orx * t.a_r;
        break;
    case Region::sb3:
        pl.eps_tx_hop = ray.xi_t - ot * t.a_t;
        // the cylinder hop towards the receiver carries the full element
        // spacing rather than half of it
        pl.eps_rx_hop = ray.xi_r - 2.0 * orx * t.a_r;
        break;
    default:
        throw std::invalid_argument("path_lengths: double bounce uses path_lengths_db");
    }
    return pl;
}

PathLengths path_lengths_db(const CoupledRay& tx_ray, const CoupledRay& rx_ray, int p, int q,
                            const ScenarioConfig& cfg)
{
    if (tx_ray.region != Region::sb1 || rx_ray.region != Region::sb2)
        throw std::invalid_argument("path_lengths_db: expects an sb1 ray and an sb2 ray");
    double ot = element_offset(p, cfg.m_t, cfg.delta_t);
    double orx = element_offset(q, cfg.m_r, cfg.delta_r);
    RayTerms tt = db_tx_terms(tx_ray.alpha_t, tx_ray.beta_t, cfg);
    RayTerms rr = db_rx_terms(rx_ray.alpha_r, rx_ray.beta_r, cfg);

    PathLengths pl;
    pl.eps_tx_hop = cfg.r_t - ot * tt.a_t;
    pl.eps_rx_hop = cfg.r_r - orx * rr.a_r;
    double horiz = cfg.d - cfg.r_t * std::cos(tx_ray.alpha_t) - cfg.r_r * std::cos(tx_ray.alpha_r - rx_ray.alpha_r);
    double vert = cfg.r_t * std::cos(tx_ray.beta_t) - cfg.r_r * std::cos(rx_ray.beta_r);
    pl.eps_mid = std::sqrt(horiz * horiz + vert * vert);
    return pl;
}

double delay_los(int p, int q, const ScenarioConfig& cfg)
{
    return path_lengths_los(p, q, cfg).eps_direct / speed_of_light;
}

double delay(const PathLengths& pl)
{
    return pl.total() / speed_of_light;
}

} // namespace v2v
