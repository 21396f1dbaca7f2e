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

#include "v2v/quadrature.hpp"

namespace v2v
{

GaussLegendre gauss_legendre(int n)
{
    if (n < 1 || n > 4096)
        throw std::invalid_argument("gauss_legendre: order must be in [1, 4096]");

    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);

    for (int i = 0; i < (n + 1) / 2; i++)
    {
        // Tricomi initial guess for the i-th root of P_n, then Newton.
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; it++)
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; k++)
            {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[i] = -x;
        gl.weights[i] = w;
        gl.nodes[n - 1 - i] = x;
        gl.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        gl.nodes[n / 2] = 0.0;
    return gl;
}

} // namespace v2v
