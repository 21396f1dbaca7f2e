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

#include "v2v/scenario.hpp"

#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace v2v
{

namespace
{

constexpr double deg = M_PI / 180.0;

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct ParseState
{
    std::vector<LineDiagnostic> diags;
    std::map<std::string, int> field_line;
    bool ok = true;

    void error(int line, const std::string& msg)
    {
        diags.push_back({true, line, msg});
        ok = false;
    }

    void warn(int line, const std::string& msg)
    {
        diags.push_back({false, line, msg});
    }
};

bool parse_double(const std::string& v, double& out)
{
    const char* s = v.c_str();
    char* end = nullptr;
    double x = std::strtod(s, &end);
    if (end == s || *end != '\0' || !std::isfinite(x))
        return false;
    out = x;
    return true;
}

bool parse_ll(const std::string& v, long long& out)
{
    const char* s = v.c_str();
    char* end = nullptr;
    long long x = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0')
        return false;
    out = x;
    return true;
}

bool parse_u64(const std::string& v, std::uint64_t& out)
{
    if (v.empty() || v[0] == '-')
        return false;
    const char* s = v.c_str();
    char* end = nullptr;
    unsigned long long x = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        return false;
    out = x;
    return true;
}

bool parse_bool(const std::string& v, bool& out)
{
    if (v == "true" || v == "yes" || v == "1")
    {
        out = true;
        return true;
    }
    if (v == "false" || v == "no" || v == "0")
    {
        out = false;
        return true;
    }
    return false;
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> items;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            items.push_back(item);
    }
    return items;
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& id, std::vector<LineDiagnostic>* diags)
{
    Scenario sc;
    sc.id = id;
    ParseState st;

    // spacings arrive in wavelengths and can precede the carrier section,
    // so they are converted only after the whole file is read
    double tx_spacing_wl = 0.0, rx_spacing_wl = 0.0;

    static const std::set<std::string> known_stats{"acf", "ccf", "psd", "lcr", "afd", "pdf"};
    static const std::set<std::string> known_models{"reference", "sos-analytic", "empirical"};

    std::string section;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw))
    {
        line++;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';')
            continue;

        if (s.front() == '[')
        {
            if (s.back() != ']')
            {
                st.error(line, "unterminated section header");
                continue;
            }
            section = trim(s.substr(1, s.size() - 2));
            static const std::set<std::string> known_sections{
                "geometry", "antenna", "motion",        "carrier",      "power", "vmf.tx_sphere",
                "sos",      "model",   "vmf.rx_sphere", "vmf.cylinder", "experiment"};
            if (!known_sections.count(section))
                st.error(line, "unknown section [" + section + "]");
            continue;
        }

        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
        {
            st.error(line, "expected key = value");
            continue;
        }
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty())
        {
            st.error(line, "empty key");
            continue;
        }
        if (section.empty())
        {
            st.error(line, "key '" + key + "' before any section header");
            continue;
        }
        std::string qual = section + "." + key;
        if (!seen.insert(qual).second)
            st.warn(line, "duplicate key '" + qual + "' overrides the earlier value");
        st.field_line[qual] = line;

        auto num = [&](double& target) {
            if (!parse_double(val, target))
                st.error(line, "'" + key + "' needs a finite number, got '" + val + "'");
        };
        auto num_deg = [&](double& target) {
            double x;
            if (parse_double(val, x))
                target = x * deg;
            else
                st.error(line, "'" + key + "' needs a finite number of degrees, got '" + val + "'");
        };
        auto integer = [&](int& target) {
            long long x;
            if (parse_ll(val, x) && x >= INT_MIN && x <= INT_MAX)
                target = int(x);
            else
                st.error(line, "'" + key + "' needs an integer, got '" + val + "'");
        };
        auto unknown = [&]() { st.error(line, "unknown key '" + key + "' in section [" + section + "]"); };

        ScenarioConfig& c = sc.config;
        ExperimentConfig& e = sc.experiment;
        if (section == "geometry")
        {
            if (key == "distance_m")
                num(c.d);
            else if (key == "tx_sphere_radius_m")
                num(c.r_t);
            else if (key == "rx_sphere_radius_m")
                num(c.r_r);
            else if (key == "cylinder_semi_major_m")
                num(c.a_ell);
            else
                unknown();
        }
        else if (section == "antenna")
        {
            if (key == "tx_elements")
                integer(c.m_t);
            else if (key == "rx_elements")
                integer(c.m_r);
            else if (key == "tx_spacing_wavelengths")
                num(tx_spacing_wl);
            else if (key == "rx_spacing_wavelengths")
                num(rx_spacing_wl);
            else if (key == "tx_azimuth_deg")
                num_deg(c.theta_t);
            else if (key == "tx_elevation_deg")
                num_deg(c.phi_t);
            else if (key == "rx_azimuth_deg")
                num_deg(c.theta_r);
            else if (key == "rx_elevation_deg")
                num_deg(c.phi_r);
            else
                unknown();
        }
        else if (section == "motion")
        {
            if (key == "tx_doppler_max_hz")
                num(c.f_tmax);
            else if (key == "rx_doppler_max_hz")
                num(c.f_rmax);
            else if (key == "tx_heading_deg")
                num_deg(c.gamma_t);
            else if (key == "rx_heading_deg")
                num_deg(c.gamma_r);
            else
                unknown();
        }
        else if (section == "carrier")
        {
            if (key == "frequency_hz")
                num(c.fc);
            else
                unknown();
        }
        else if (section == "power")
        {
            if (key == "rice_factor")
                num(c.k_rice);
            else if (key == "eta_sb1")
                num(c.eta_sb1);
            else if (key == "eta_sb2")
                num(c.eta_sb2);
            else if (key == "eta_sb3")
                num(c.eta_sb3);
            else if (key == "eta_db")
                num(c.eta_db);
            else
                unknown();
        }
        else if (section.rfind("vmf.", 0) == 0)
        {
            VmfParams* p = nullptr;
            if (section == "vmf.tx_sphere")
                p = &c.vmf_sb1;
            else if (section == "vmf.rx_sphere")
                p = &c.vmf_sb2;
            else
                p = &c.vmf_sb3;
            if (key == "mean_azimuth_deg")
                num_deg(p->alpha0);
            else if (key == "mean_elevation_deg")
                num_deg(p->beta0);
            else if (key == "concentration")
                num(p->k);
            else
                unknown();
        }
        else if (section == "sos")
        {
            if (key == "rays_sb1")
                integer(c.n1);
            else if (key == "rays_sb2")
                integer(c.n2);
            else if (key == "rays_sb3")
                integer(c.n3);
            else
                unknown();
        }
        else if (section == "model")
        {
            if (key == "planar")
            {
                if (!parse_bool(val, c.mode_2d))
                    st.error(line, "'planar' needs true or false, got '" + val + "'");
            }
            else
                unknown();
        }
        else if (section == "experiment")
        {
            if (key == "seed")
            {
                if (!parse_u64(val, e.seed))
                    st.error(line, "'seed' needs an unsigned integer, got '" + val + "'");
            }
            else if (key == "output_dir")
                e.out_dir = val;
            else if (key == "stats")
            {
                e.stats = split_list(val);
                for (const std::string& item : e.stats)
                    if (!known_stats.count(item))
                        st.error(line, "unknown statistic '" + item + "'");
            }
            else if (key == "models")
            {
                e.models = split_list(val);
                for (const std::string& item : e.models)
                    if (!known_models.count(item))
                        st.error(line, "unknown model '" + item + "'");
            }
            else if (key == "acf_lag_max_s")
                num(e.acf_lag_max);
            else if (key == "acf_points")
                integer(e.acf_points);
            else if (key == "ccf_rx_spacing_max_wavelengths")
                num(e.ccf_rx_spacing_max_wl);
            else if (key == "ccf_points")
                integer(e.ccf_points);
            else if (key == "ccf_tx_spacing_wavelengths")
                num(e.ccf_tx_spacing_wl);
            else if (key == "ccf_empirical_points")
                integer(e.ccf_empirical_points);
            else if (key == "psd_lag_step_s")
                num(e.psd_lag_step);
            else if (key == "psd_lag_count")
                integer(e.psd_lag_count);
            else if (key == "level_min_db")
                num(e.level_min_db);
            else if (key == "level_max_db")
                num(e.level_max_db);
            else if (key == "level_step_db")
                num(e.level_step_db);
            else if (key == "samples")
            {
                long long v = 0;
                if (parse_ll(val, v) && v > 0)
                    e.samples = v;
                else
                    st.error(line, "'samples' needs a positive integer, got '" + val + "'");
            }
            else if (key == "sample_rate_factor")
                num(e.sample_rate_factor);
            else if (key == "segments")
                integer(e.segments);
            else if (key == "pdf_bins")
                integer(e.pdf_bins);
            else
                unknown();
        }
        else
        {
            // section already reported as unknown; swallow its keys
        }
    }

    sc.config.delta_t = tx_spacing_wl * sc.config.wavelength();
    sc.config.delta_r = rx_spacing_wl * sc.config.wavelength();

    for (const Diagnostic& d : validate_config(sc.config))
    {
        if (d.is_error)
            st.error(0, "invalid configuration: " + d.field + ": " + d.message);
        else
            st.warn(0, d.field + ": " + d.message);
    }

    ExperimentConfig& e = sc.experiment;
    if (e.acf_points < 2 || !(e.acf_lag_max > 0.0))
        st.error(0, "invalid experiment: acf grid needs acf_points >= 2 and a positive lag range");
    if (e.ccf_points < 2 || !(e.ccf_rx_spacing_max_wl > 0.0) || e.ccf_empirical_points < 2)
        st.error(0, "invalid experiment: ccf grid needs at least two points and a positive spacing range");
    if (e.psd_lag_count < 9 || e.psd_lag_count % 2 == 0 || !(e.psd_lag_step > 0.0))
        st.error(0, "invalid experiment: psd lag grid needs an odd count of at least 9 and a positive step");
    if (!(e.level_step_db > 0.0) || e.level_max_db < e.level_min_db)
        st.error(0, "invalid experiment: level grid needs level_step_db > 0 and level_max_db >= level_min_db");
    if (e.samples < 4096)
        st.error(0, "invalid experiment: need at least 4096 samples");
    if (!(e.sample_rate_factor >= 8.0))
        st.error(0, "invalid experiment: sample_rate_factor must be at least 8");
    if (e.segments < 2 || e.pdf_bins < 4)
        st.error(0, "invalid experiment: need segments >= 2 and pdf_bins >= 4");

    if (diags)
        *diags = st.diags;
    if (!st.ok)
    {
        for (const LineDiagnostic& d : st.diags)
            if (d.is_error)
                throw std::invalid_argument("scenario '" + id + "' line " + std::to_string(d.line) + ": " + d.message);
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path, std::vector<LineDiagnostic>* diags)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    std::string base = path;
    std::size_t slash = base.find_last_of("/\\");
    if (slash != std::string::npos)
        base = base.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0)
        base = base.substr(0, dot);
    return parse_scenario_text(buf.str(), base, diags);
}

} // namespace v2v
