#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep {

using cdouble = std::complex<double>;

struct Grid2D {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0; // coordinates of node (0,0)
    double hx = 0.0, hy = 0.0;

    double x(int i) const { return x0 + i * hx; }
    double y(int j) const { return y0 + j * hy; }
    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(j) * nx + i;
    }
    std::size_t size() const
    {
        return static_cast<std::size_t>(nx) * ny;
    }
};

inline Grid2D make_grid(int nx, int ny, double xmin, double xmax, double ymin,
                        double ymax)
{
    if (nx < 16 || ny < 16)
        throw DomainViolationError("grid must be at least 16x16");
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = xmin;
    g.y0 = ymin;
    g.hx = (xmax - xmin) / (nx - 1);
    g.hy = (ymax - ymin) / (ny - 1);
    return g;
}

struct GridFunction {
    Grid2D grid;
    std::vector<cdouble> values;

    cdouble& at(int i, int j) { return values[grid.index(i, j)]; }
    const cdouble& at(int i, int j) const { return values[grid.index(i, j)]; }
};

inline GridFunction make_grid_function(const Grid2D& g)
{
    return {g, std::vector<cdouble>(g.size(), cdouble{0.0, 0.0})};
}

inline GridFunction sample(const Grid2D& g,
                           const std::function<cdouble(double, double)>& fn)
{
    GridFunction out = make_grid_function(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = fn(g.x(i), g.y(j));
    return out;
}

/// L2 inner product with the cell measure, over the interior with the given
/// margin (margin 0 = full grid).
inline cdouble inner(const GridFunction& a, const GridFunction& b,
                     int margin = 0)
{
    const Grid2D& g = a.grid;
    cdouble s{0.0, 0.0};
    for (int j = margin; j < g.ny - margin; ++j)
        for (int i = margin; i < g.nx - margin; ++i)
            s += std::conj(a.at(i, j)) * b.at(i, j);
    return s * (g.hx * g.hy);
}

inline double l2_norm(const GridFunction& a, int margin = 0)
{
    return std::sqrt(std::abs(inner(a, a, margin)));
}

inline double max_abs(const GridFunction& a, int margin = 0)
{
    const Grid2D& g = a.grid;
    double m = 0.0;
    for (int j = margin; j < g.ny - margin; ++j)
        for (int i = margin; i < g.nx - margin; ++i)
            m = std::max(m, std::abs(a.at(i, j)));
    return m;
}

/// Largest |value| on the outermost ring of nodes.
inline double boundary_max(const GridFunction& a)
{
    const Grid2D& g = a.grid;
    double m = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        m = std::max(m, std::abs(a.at(i, 0)));
        m = std::max(m, std::abs(a.at(i, g.ny - 1)));
    }
    for (int j = 0; j < g.ny; ++j) {
        m = std::max(m, std::abs(a.at(0, j)));
        m = std::max(m, std::abs(a.at(g.nx - 1, j)));
    }
    return m;
}

inline GridFunction linear_combination(cdouble ca, const GridFunction& a,
                                       cdouble cb, const GridFunction& b)
{
    GridFunction out = make_grid_function(a.grid);
    for (std::size_t n = 0; n < out.values.size(); ++n)
        out.values[n] = ca * a.values[n] + cb * b.values[n];
    return out;
}

} // namespace qsep
