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

#ifndef v2vchan_statcurve_H
#define v2vchan_statcurve_H

#include <complex>
#include <string>
#include <vector>

namespace v2v
{

// One named statistic sampled on an axis: correlation functions, spectra,
// crossing rates, fade durations, densities. Complex-valued curves keep both
// parts; real curves leave the imaginary part zero. `se` holds a standard
// error per point when an estimator provides one, otherwise stays empty.
struct StatCurve
{
    std::string quantity;
    std::string model_tag;   // "reference", "sos-analytic" or "empirical"
    std::string scenario_id;
    bool complex_valued = false;
    std::vector<double> x;
    std::vector<std::complex<double>> y;
    std::vector<double> se;
};

// Model-curve schema: x,value_real,value_imag,model_tag,scenario_id for
// complex curves, x,value,model_tag,scenario_id for real ones.
void write_csv(const StatCurve& curve, const std::string& path);

// Estimator schema: x,value,stderr,model_tag. Complex curves write the two
// parts as value_real,value_imag before stderr.
void write_estimator_csv(const StatCurve& curve, const std::string& path);

// Numbers are formatted with 17 significant digits so a curve survives a
// write/read round trip bit for bit.
std::string format_double(double v);

} // namespace v2v

#endif
