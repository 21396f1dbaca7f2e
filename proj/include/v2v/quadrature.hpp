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

#ifndef v2vchan_quadrature_H
#define v2vchan_quadrature_H

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace v2v
{

struct QuadratureSpec
{
    enum class Rule
    {
        adaptive, // refine the worst cell until the global error bound meets tolerance
        fixed     // single Gauss-Kronrod panel, no refinement
    };

    Rule rule = Rule::adaptive;
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int max_subdivisions = 2000;
};

// Raised when the refinement budget is exhausted. Carries the best estimate
// so callers can degrade gracefully or report the residual error bound.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(const std::string& msg, double est_re, double est_im, double bound)
        : std::runtime_error(msg), est_re_(est_re), est_im_(est_im), bound_(bound)
    {
    }

    std::complex<double> estimate() const
    {
        return {est_re_, est_im_};
    }

    double error_bound() const
    {
        return bound_;
    }

  private:
    double est_re_, est_im_, bound_;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending. Computed on first use by
// Newton iteration on the Legendre recurrence rather than from tables.
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

namespace detail
{

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
// nodes[i] are the nonnegative abscissae in descending order, nodes[7] = 0.
inline constexpr double gk15_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};

inline constexpr double gk15_kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};

// Weights of the embedded Gauss rule; gk15_gauss_w[j] pairs with nodes[2j+1],
// gk15_gauss_w[3] with the centre.
inline constexpr double gk15_gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class T> inline double magnitude(const T& v)
{
    return std::abs(v);
}

template <class T, class F> void gk15_cell(F& f, double a, double b, T& value, double& err)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T sk = gk15_kron_w[7] * fc;
    T sg = gk15_gauss_w[3] * fc;
    for (int i = 0; i < 7; i++)
    {
        double dx = h * gk15_nodes[i];
        T fl = f(c - dx);
        T fr = f(c + dx);
        sk += gk15_kron_w[i] * (fl + fr);
        if (i % 2 == 1)
            sg += gk15_gauss_w[(i - 1) / 2] * (fl + fr);
    }
    value = sk * h;
    err = magnitude<T>(sk - sg) * h;
}

// Tensor-product Gauss-Kronrod panel on a rectangle. The error estimate
// compares against the embedded 7x7 Gauss rule.
template <class T, class F> void gk15_cell_2d(F& f, double ax, double bx, double ay, double by, T& value, double& err)
{
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);

    auto coord = [](int k) {
        if (k < 7)
            return -gk15_nodes[k];
        if (k == 7)
            return 0.0;
        return gk15_nodes[14 - k];
    };
    auto kw = [](int k) { return gk15_kron_w[k <= 7 ? k : 14 - k]; };
    auto gw = [](int k) {
        if (k % 2 == 0)
            return 0.0; // not an embedded Gauss abscissa
        int j = k <= 7 ? k : 14 - k;
        return gk15_gauss_w[(j - 1) / 2];
    };

    T sk{};
    T sg{};
    for (int i = 0; i < 15; i++)
    {
        double x = cx + hx * coord(i);
        T row_k{};
        T row_g{};
        for (int j = 0; j < 15; j++)
        {
            T v = f(x, cy + hy * coord(j));
            row_k += kw(j) * v;
            if (gw(j) != 0.0)
                row_g += gw(j) * v;
        }
        sk += kw(i) * row_k;
        if (gw(i) != 0.0)
            sg += gw(i) * row_g;
    }
    value = sk * (hx * hy);
    err = magnitude<T>(sk - sg) * (hx * hy);
}

inline void check_spec(const QuadratureSpec& spec, const char* who)
{
    if (!(spec.abs_tol > 0.0) && !(spec.rel_tol > 0.0))
        throw std::invalid_argument(std::string(who) + ": at least one of abs_tol, rel_tol must be positive");
    if (spec.max_subdivisions < 1)
        throw std::invalid_argument(std::string(who) + ": max_subdivisions must be at least 1");
}

inline void check_bounds(double a, double b, const char* who)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument(std::string(who) + ": requires finite bounds with a < b");
}

template <class T, class F> T adaptive_1d(F& f, double a, double b, const QuadratureSpec& spec, const char* who)
{
    check_bounds(a, b, who);
    check_spec(spec, who);

    struct Cell
    {
        double a, b;
        T val;
        double err;
    };
    std::vector<Cell> cells;
    cells.reserve(64);
    auto make = [&f](double x0, double x1) {
        Cell c{x0, x1, T{}, 0.0};
        gk15_cell<T>(f, x0, x1, c.val, c.err);
        return c;
    };
    cells.push_back(make(a, b));
    if (spec.rule == QuadratureSpec::Rule::fixed)
        return cells[0].val;

    for (;;)
    {
        T total{};
        double err_total = 0.0;
        for (const Cell& c : cells)
        {
            total += c.val;
            err_total += c.err;
        }
        double tol = std::max(spec.abs_tol, spec.rel_tol * magnitude<T>(total));
        if (err_total <= tol)
            break;
        if (int(cells.size()) >= spec.max_subdivisions)
        {
            std::complex<double> est(total);
            throw ConvergenceError(std::string(who) + ": error bound " + std::to_string(err_total) +
                                       " above tolerance " + std::to_string(tol) + " after " +
                                       std::to_string(cells.size()) + " subdivisions",
                                   est.real(), est.imag(), err_total);
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < cells.size(); i++)
            if (cells[i].err > cells[worst].err)
                worst = i;
        double a0 = cells[worst].a, b0 = cells[worst].b;
        double m = 0.5 * (a0 + b0);
        cells[worst] = make(a0, m);
        cells.push_back(make(m, b0));
    }

    // Sum in left-endpoint order so the result does not depend on the
    // refinement history representation.
    std::sort(cells.begin(), cells.end(), [](const Cell& u, const Cell& v) { return u.a < v.a; });
    T total{};
    for (const Cell& c : cells)
        total += c.val;
    return total;
}

template <class T, class F>
T adaptive_2d(F& f, double ax, double bx, double ay, double by, const QuadratureSpec& spec, const char* who)
{
    check_bounds(ax, bx, who);
    check_bounds(ay, by, who);
    check_spec(spec, who);

    struct Cell
    {
        double ax, bx, ay, by;
        T val;
        double err;
    };
    std::vector<Cell> cells;
    cells.reserve(64);
    auto make = [&f](double x0, double x1, double y0, double y1) {
        Cell c{x0, x1, y0, y1, T{}, 0.0};
        gk15_cell_2d<T>(f, x0, x1, y0, y1, c.val, c.err);
        return c;
    };
    cells.push_back(make(ax, bx, ay, by));
    if (spec.rule == QuadratureSpec::Rule::fixed)
        return cells[0].val;

    for (;;)
    {
        T total{};
        double err_total = 0.0;
        for (const Cell& c : cells)
        {
            total += c.val;
            err_total += c.err;
        }
        double tol = std::max(spec.abs_tol, spec.rel_tol * magnitude<T>(total));
        if (err_total <= tol)
            break;
        if (int(cells.size()) >= spec.max_subdivisions)
        {
            std::complex<double> est(total);
            throw ConvergenceError(std::string(who) + ": error bound " + std::to_string(err_total) +
                                       " above tolerance " + std::to_string(tol) + " after " +
                                       std::to_string(cells.size()) + " subdivisions",
                                   est.real(), est.imag(), err_total);
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < cells.size(); i++)
            if (cells[i].err > cells[worst].err)
                worst = i;
        Cell w = cells[worst];
        // halve the longer edge to keep cells close to square
        if (w.bx - w.ax >= w.by - w.ay)
        {
            double m = 0.5 * (w.ax + w.bx);
            cells[worst] = make(w.ax, m, w.ay, w.by);
            cells.push_back(make(m, w.bx, w.ay, w.by));
        }
        else
        {
            double m = 0.5 * (w.ay + w.by);
            cells[worst] = make(w.ax, w.bx, w.ay, m);
            cells.push_back(make(w.ax, w.bx, m, w.by));
        }
    }

    std::sort(cells.begin(), cells.end(), [](const Cell& u, const Cell& v) {
        if (u.ax != v.ax)
            return u.ax < v.ax;
        return u.ay < v.ay;
    });
    T total{};
    for (const Cell& c : cells)
        total += c.val;
    return total;
}

} // namespace detail

template <class F> double integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    return detail::adaptive_1d<double>(f, a, b, spec, "integrate_1d");
}

template <class F> std::complex<double> integrate_1d_complex(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    return detail::adaptive_1d<std::complex<double>>(f, a, b, spec, "integrate_1d_complex");
}

template <class F>
double integrate_2d(F&& f, double ax, double bx, double ay, double by, const QuadratureSpec& spec = {})
{
    return detail::adaptive_2d<double>(f, ax, bx, ay, by, spec, "integrate_2d");
}

template <class F>
std::complex<double> integrate_2d_complex(F&& f, double ax, double bx, double ay, double by,
                                          const QuadratureSpec& spec = {})
{
    return detail::adaptive_2d<std::complex<double>>(f, ax, bx, ay, by, spec, "integrate_2d_complex");
}

} // namespace v2v

#endif
