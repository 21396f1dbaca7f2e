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

#ifndef v2vchan_grid_H
#define v2vchan_grid_H

#include <stdexcept>
#include <string>

namespace v2v
{

// Uniformly spaced sample axis, x_i = start + i * step for i in [0, count).
// Used for time series, lag axes, frequency axes and level sweeps.
struct UniformGrid
{
    double start = 0.0;
    double step = 1.0;
    int count = 0;

    UniformGrid() = default;

    UniformGrid(double start_, double step_, int count_) : start(start_), step(step_), count(count_)
    {
        if (!(step > 0.0))
            throw std::invalid_argument("UniformGrid: step must be positive, got " + std::to_string(step));
        if (count < 1)
            throw std::invalid_argument("UniformGrid: count must be at least 1, got " + std::to_string(count));
    }

    double at(int i) const
    {
        return start + step * double(i);
    }

    double back() const
    {
        return at(count - 1);
    }

    double span() const
    {
        return step * double(count - 1);
    }

    // Odd-count grid symmetric about zero, x_0 = -half * step ... x_{2*half} = +half * step
    static UniformGrid centered(double step, int count)
    {
        if (count < 1 || count % 2 == 0)
            throw std::invalid_argument("UniformGrid::centered: count must be odd and positive");
        int half = (count - 1) / 2;
        return UniformGrid(-step * double(half), step, count);
    }
};

} // namespace v2v

#endif
