#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/fields.hpp"
#include "qsep/grid.hpp"

namespace qsep {

namespace detail {

// 4th-order central stencils
inline cdouble d1x(const GridFunction& u, int i, int j, double h)
{
    return (u.at(i - 2, j) - 8.0 * u.at(i - 1, j) + 8.0 * u.at(i + 1, j) -
            u.at(i + 2, j)) /
           (12.0 * h);
}

inline cdouble d1y(const GridFunction& u, int i, int j, double h)
{
    return (u.at(i, j - 2) - 8.0 * u.at(i, j - 1) + 8.0 * u.at(i, j + 1) -
            u.at(i, j + 2)) /
           (12.0 * h);
}

inline cdouble d2x(const GridFunction& u, int i, int j, double h)
{
    return (-u.at(i - 2, j) + 16.0 * u.at(i - 1, j) - 30.0 * u.at(i, j) +
            16.0 * u.at(i + 1, j) - u.at(i + 2, j)) /
           (12.0 * h * h);
}

inline cdouble d2y(const GridFunction& u, int i, int j, double h)
{
    return (-u.at(i, j - 2) + 16.0 * u.at(i, j - 1) - 30.0 * u.at(i, j) +
            16.0 * u.at(i, j + 1) - u.at(i, j + 2)) /
           (12.0 * h * h);
}

inline void require_decayed(const GridFunction& psi, double threshold)
{
    const double m = max_abs(psi);
    if (m > 0.0 && boundary_max(psi) > threshold * m)
        throw BoundaryContaminationError(
            "wavefunction does not decay at the grid boundary");
}

} // namespace detail

/// Symmetrized Hamiltonian action
///   H psi = -hbar^2/2 lap(psi) - i hbar (A dx + B dy) psi
///           - i hbar/2 (A_x + B_y) psi + V psi
/// on the interior (2-node stencil margin); the outer two rings are zero.
inline GridFunction apply_H(const FieldSet& fs, const GridFunction& psi,
                            bool check_boundary = true,
                            double boundary_threshold = 1e-8)
{
    if (check_boundary)
        detail::require_decayed(psi, boundary_threshold);
    const Grid2D& g = psi.grid;
    GridFunction out = make_grid_function(g);
    const double hb = fs.hbar;
    const cdouble ih{0.0, hb};
    for (int j = 2; j < g.ny - 2; ++j) {
        const double y = g.y(j);
        for (int i = 2; i < g.nx - 2; ++i) {
            const double x = g.x(i);
            const cdouble lap =
                detail::d2x(psi, i, j, g.hx) + detail::d2y(psi, i, j, g.hy);
            const cdouble px = detail::d1x(psi, i, j, g.hx);
            const cdouble py = detail::d1y(psi, i, j, g.hy);
            out.at(i, j) = -0.5 * hb * hb * lap -
                           ih * (fs.a_pot(x, y) * px + fs.b_pot(x, y) * py) -
                           0.5 * ih * (fs.a_x(x, y) + fs.b_y(x, y)) *
                               psi.at(i, j) +
                           fs.v_pot(x, y) * psi.at(i, j);
        }
    }
    return out;
}

struct FirstOrderCoeffs {
    double alpha = 0.0; // coefficient of L3 + yA - xB
    double beta = 0.0;  // coefficient of P1 + A
    double gamma = 0.0; // coefficient of P2 + B
};

/// First-order integral action
///   X = alpha (L3 + yA - xB) + beta (P1 + A) + gamma (P2 + B) + m
inline GridFunction apply_X_first_order(const FieldSet& fs,
                                        const IntegralData& data,
                                        const FirstOrderCoeffs& c,
                                        const GridFunction& psi,
                                        bool check_boundary = true)
{
    if (check_boundary)
        detail::require_decayed(psi, 1e-8);
    const Grid2D& g = psi.grid;
    GridFunction out = make_grid_function(g);
    const cdouble ih{0.0, fs.hbar};
    for (int j = 2; j < g.ny - 2; ++j) {
        const double y = g.y(j);
        for (int i = 2; i < g.nx - 2; ++i) {
            const double x = g.x(i);
            const cdouble px = detail::d1x(psi, i, j, g.hx);
            const cdouble py = detail::d1y(psi, i, j, g.hy);
            const double av = fs.a_pot(x, y);
            const double bv = fs.b_pot(x, y);
            cdouble v{0.0, 0.0};
            if (c.alpha != 0.0)
                v += c.alpha * (-ih * (y * px - x * py) +
                                (y * av - x * bv) * psi.at(i, j));
            if (c.beta != 0.0)
                v += c.beta * (-ih * px + av * psi.at(i, j));
            if (c.gamma != 0.0)
                v += c.gamma * (-ih * py + bv * psi.at(i, j));
            v += data.m_fn(x, y) * psi.at(i, j);
            out.at(i, j) = v;
        }
    }
    return out;
}

/// Second-order Cartesian integral action
///   X = -hbar^2/2 dxx - i hbar [(A + k1) dx + k2 dy]
///       - i hbar/2 (A_x + k1_x + k2_y) + A^2/2 + m + k1 A + k2 B
/// with k1 = k1(y), k2 = k2(x), so k1_x = k2_y = 0.
inline GridFunction apply_X_cartesian(const FieldSet& fs,
                                      const IntegralData& data,
                                      const GridFunction& psi,
                                      bool check_boundary = true)
{
    if (check_boundary)
        detail::require_decayed(psi, 1e-8);
    const Grid2D& g = psi.grid;
    GridFunction out = make_grid_function(g);
    const double hb = fs.hbar;
    const cdouble ih{0.0, hb};
    for (int j = 2; j < g.ny - 2; ++j) {
        const double y = g.y(j);
        for (int i = 2; i < g.nx - 2; ++i) {
            const double x = g.x(i);
            const cdouble px = detail::d1x(psi, i, j, g.hx);
            const cdouble py = detail::d1y(psi, i, j, g.hy);
            const double av = fs.a_pot(x, y);
            const double bv = fs.b_pot(x, y);
            const double k1 = data.k1_fn(x, y);
            const double k2 = data.k2_fn(x, y);
            out.at(i, j) = -0.5 * hb * hb * detail::d2x(psi, i, j, g.hx) -
                           ih * ((av + k1) * px + k2 * py) -
                           0.5 * ih * fs.a_x(x, y) * psi.at(i, j) +
                           (0.5 * av * av + data.m_fn(x, y) + k1 * av +
                            k2 * bv) *
                               psi.at(i, j);
        }
    }
    return out;
}

using OperatorAction = std::function<GridFunction(const GridFunction&)>;

/// Max over the test functions of ||(XH - HX) psi|| / (||psi|| scale) with
/// scale = (||H psi|| + ||X psi||) / ||psi||, all norms on the interior
/// (double application widens the stencil margin).
inline double commutator_residual(const OperatorAction& apply_h,
                                  const OperatorAction& apply_x,
                                  const std::vector<GridFunction>& tests,
                                  int margin = 6)
{
    double worst = 0.0;
    for (const GridFunction& psi : tests) {
        const GridFunction hp = apply_h(psi);
        const GridFunction xp = apply_x(psi);
        const GridFunction xh = apply_x(hp);
        const GridFunction hx = apply_h(xp);
        const GridFunction comm =
            linear_combination({1.0, 0.0}, xh, {-1.0, 0.0}, hx);
        const double scale = l2_norm(hp, margin) + l2_norm(xp, margin);
        if (scale == 0.0)
            continue;
        worst = std::max(worst, l2_norm(comm, margin) / scale);
    }
    return worst;
}

struct ClassicalState {
    double x = 0.0, y = 0.0;
    double vx = 0.0, vy = 0.0;
    double t = 0.0;
};

/// RK4 integration of  x'' = Omega y' - W_x,  y'' = -Omega x' - W_y.
inline std::vector<ClassicalState> classical_trajectory(
    const Fn2& omega_field, const Fn2& w_x, const Fn2& w_y,
    const ClassicalState& s0, double dt, double total_time)
{
    if (dt <= 0.0 || total_time <= 0.0)
        throw DomainViolationError("trajectory needs dt > 0 and T > 0");
    struct Deriv {
        double dx, dy, dvx, dvy;
    };
    auto rhs = [&](const ClassicalState& s) -> Deriv {
        const double om = omega_field(s.x, s.y);
        return {s.vx, s.vy, om * s.vy - w_x(s.x, s.y),
                -om * s.vx - w_y(s.x, s.y)};
    };
    auto step = [&](const ClassicalState& s, const Deriv& d,
                    double h) -> ClassicalState {
        return {s.x + h * d.dx, s.y + h * d.dy, s.vx + h * d.dvx,
                s.vy + h * d.dvy, s.t + h};
    };
    const int nsteps = static_cast<int>(std::llround(total_time / dt));
    std::vector<ClassicalState> path;
    path.reserve(nsteps + 1);
    ClassicalState s = s0;
    path.push_back(s);
    for (int n = 0; n < nsteps; ++n) {
        const Deriv k1 = rhs(s);
        const Deriv k2 = rhs(step(s, k1, 0.5 * dt));
        const Deriv k3 = rhs(step(s, k2, 0.5 * dt));
        const Deriv k4 = rhs(step(s, k3, dt));
        s = {s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
             s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
             s.vx + dt / 6.0 * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx),
             s.vy + dt / 6.0 * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy),
             s.t + dt};
        if (!std::isfinite(s.x) || !std::isfinite(s.y))
            throw SingularPointError("trajectory diverged");
        path.push_back(s);
    }
    return path;
}

} // namespace qsep
