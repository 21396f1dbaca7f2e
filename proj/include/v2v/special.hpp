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

#ifndef v2vchan_special_H
#define v2vchan_special_H

namespace v2v
{

// Bessel function of the first kind, order zero.
// Finite x required; throws std::domain_error otherwise.
double bessel_j0(double x);

// Modified Bessel function of the first kind, order zero.
// Throws std::range_error for |x| > 700 where exp(x) would overflow.
double bessel_i0(double x);

// exp(-|x|) * I0(x), usable for arbitrarily large arguments.
double bessel_i0_scaled(double x);

// First-order Marcum Q function Q1(a, b), the complement of the
// noncentral chi-square CDF with two degrees of freedom.
// Requires a >= 0 and b >= 0; marcum_q1(a, 0) returns exactly 1.
double marcum_q1(double a, double b);

// Error function. Thin wrapper kept so every special function used by the
// model goes through one audited interface.
double erf(double x);

} // namespace v2v

#endif
