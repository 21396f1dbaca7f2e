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

#include "v2v/statcurve.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace v2v
{

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace
{

void check_sizes(const StatCurve& c, const char* who)
{
    if (c.x.size() != c.y.size())
        throw std::invalid_argument(std::string(who) + ": x and y size mismatch for quantity '" + c.quantity + "'");
    if (!c.se.empty() && c.se.size() != c.x.size())
        throw std::invalid_argument(std::string(who) + ": se size mismatch for quantity '" + c.quantity + "'");
}

std::ofstream open_out(const std::string& path, const char* who)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(std::string(who) + ": cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_csv(const StatCurve& curve, const std::string& path)
{
    check_sizes(curve, "write_csv");
    std::ofstream out = open_out(path, "write_csv");
    if (curve.complex_valued)
    {
        out << "x,value_real,value_imag,model_tag,scenario_id\n";
        for (std::size_t i = 0; i < curve.x.size(); i++)
            out << format_double(curve.x[i]) << ',' << format_double(curve.y[i].real()) << ','
                << format_double(curve.y[i].imag()) << ',' << curve.model_tag << ',' << curve.scenario_id << '\n';
    }
    else
    {
        out << "x,value,model_tag,scenario_id\n";
        for (std::size_t i = 0; i < curve.x.size(); i++)
            out << format_double(curve.x[i]) << ',' << format_double(curve.y[i].real()) << ',' << curve.model_tag
                << ',' << curve.scenario_id << '\n';
    }
    if (!out.good())
        throw std::runtime_error("write_csv: write to '" + path + "' failed");
}

void write_estimator_csv(const StatCurve& curve, const std::string& path)
{
    check_sizes(curve, "write_estimator_csv");
    std::ofstream out = open_out(path, "write_estimator_csv");
    const bool have_se = !curve.se.empty();
    if (curve.complex_valued)
    {
        out << "x,value_real,value_imag,stderr,model_tag\n";
        for (std::size_t i = 0; i < curve.x.size(); i++)
            out << format_double(curve.x[i]) << ',' << format_double(curve.y[i].real()) << ','
                << format_double(curve.y[i].imag()) << ',' << format_double(have_se ? curve.se[i] : 0.0) << ','
                << curve.model_tag << '\n';
    }
    else
    {
        out << "x,value,stderr,model_tag\n";
        for (std::size_t i = 0; i < curve.x.size(); i++)
            out << format_double(curve.x[i]) << ',' << format_double(curve.y[i].real()) << ','
                << format_double(have_se ? curve.se[i] : 0.0) << ',' << curve.model_tag << '\n';
    }
    if (!out.good())
        throw std::runtime_error("write_estimator_csv: write to '" + path + "' failed");
}

} // namespace v2v
