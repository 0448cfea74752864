#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/fields.hpp"
#include "qsep/hermite.hpp"
#include "qsep/linalg.hpp"

namespace qsep {

using Fn1 = std::function<double(double)>;

/// Cartesian first-order system: m = m(x), W = W(x), Omega = m'(x), with the
/// y-direction plane wave carrying the X eigenvalue k.
struct CartesianFirstOrder {
    Fn1 m_profile;
    Fn1 m_deriv;
    Fn1 w_profile;
    double k = 0.0;
    double hbar = 1.0;
};

/// Polar first-order system: m = m(r), W = W(r), angular quantum number M.
struct PolarFirstOrder {
    Fn1 m_radial;
    Fn1 w_radial;
    int m_quantum = 0;
    double hbar = 1.0;
};

namespace detail {

/// Lowest eigenvalues of -hbar^2/2 u'' + U u = E u on (a, b), Dirichlet,
/// 2nd-order finite differences with n interior points.
inline std::vector<double> solve_1d(const Fn1& U, double hbar, double a,
                                    double b, int n, int count)
{
    const double h = (b - a) / (n + 1);
    const double t = 0.5 * hbar * hbar / (h * h);
    std::vector<double> diag(n), off(n - 1, -t);
    for (int i = 0; i < n; ++i)
        diag[i] = 2.0 * t + U(a + (i + 1) * h);
    return tridiag_lowest_eigenvalues(diag, off, count);
}

/// Same, Richardson-extrapolated over grids with spacings h and h/2.
inline std::vector<double> solve_1d_richardson(const Fn1& U, double hbar,
                                               double a, double b, int n,
                                               int count)
{
    const std::vector<double> coarse = solve_1d(U, hbar, a, b, n, count);
    const std::vector<double> fine =
        solve_1d(U, hbar, a, b, 2 * n + 1, count);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

inline void require_confining(const Fn1& U, double a, double b, double e_top,
                              double hbar, int count)
{
    const double scale =
        std::max(1.0, std::fabs(e_top) / std::max(1, count));
    const double margin = 10.0 * hbar * scale;
    if (U(a) < e_top + margin || U(b) < e_top + margin)
        throw NotConfiningError(
            "effective 1D potential too shallow at the domain ends");
}

} // namespace detail

/// Lowest eigenvalues of the separated x-equation with effective potential
/// U = k^2/2 + k m + W + m^2/2.
inline std::vector<double> cartesian_spectrum(const CartesianFirstOrder& c,
                                              int count, double a, double b,
                                              int grid_n)
{
    const Fn1 U = [c](double x) {
        const double m = c.m_profile(x);
        return 0.5 * c.k * c.k + c.k * m + c.w_profile(x) + 0.5 * m * m;
    };
    const auto e = detail::solve_1d_richardson(U, c.hbar, a, b, grid_n, count);
    detail::require_confining(U, a, b, e.back(), c.hbar, count);
    return e;
}

/// The exact Hermite family for m = omega^2 x^2, W = 0.
inline std::pair<double, HermiteGaussian> cartesian_exact_hermite(
    double omega, double k, int n, double hbar)
{
    if (k <= 0.0)
        throw InvalidWavenumberError("exact Hermite family needs k > 0");
    const double tau = std::sqrt(omega / hbar) * std::pow(2.0 * k, 0.25);
    const double energy =
        0.5 * k * k + (2.0 * n + 1.0) * 0.5 * hbar * omega * std::sqrt(2.0 * k);
    return {energy, HermiteGaussian{n, tau}};
}

struct RadialResult {
    std::vector<double> energies;
    double rmin_sensitivity = 0.0; // max |dE| under halving of r_min
};

/// Lowest eigenvalues of the radial equation for R(r) (the psi = e^{-iM
/// Theta} R/sqrt(r) reduction), Dirichlet on (r_min, r_max).
inline RadialResult radial_spectrum(const PolarFirstOrder& p, int count,
                                    double r_max, int grid_n,
                                    double r_min = 0.0)
{
    if (r_min <= 0.0)
        r_min = 1e-3 * r_max;
    const double hb = p.hbar;
    const double M = p.m_quantum;
    const Fn1 U = [p, hb, M](double r) {
        const double m = p.m_radial(r);
        return p.w_radial(r) +
               (0.5 * hb * hb * M * M + 0.5 * m * m - hb * m * M -
                0.125 * hb * hb) /
                   (r * r);
    };
    RadialResult out;
    out.energies =
        detail::solve_1d_richardson(U, hb, r_min, r_max, grid_n, count);
    // only the outer wall confines; r_min is a regularity cutoff
    detail::require_confining(U, r_max, r_max, out.energies.back(), hb, count);
    const auto half =
        detail::solve_1d_richardson(U, hb, 0.5 * r_min, r_max, grid_n, count);
    for (int i = 0; i < count; ++i)
        out.rmin_sensitivity = std::max(
            out.rmin_sensitivity, std::fabs(half[i] - out.energies[i]));
    return out;
}

/// The 2D FieldSet of the Cartesian first-order gauge A = 0, B = -m(x):
/// Omega = m'(x), V = W + m^2/2.
inline FieldSet cartesian_field_set(const CartesianFirstOrder& c)
{
    FieldSet fs;
    fs.hbar = c.hbar;
    const Fn1 m = c.m_profile, md = c.m_deriv, w = c.w_profile;
    fs.omega_field = [md](double x, double) { return md(x); };
    fs.w_eff = [w](double x, double) { return w(x); };
    fs.a_pot = [](double, double) { return 0.0; };
    fs.b_pot = [m](double x, double) { return -m(x); };
    fs.v_pot = [w, m](double x, double) {
        const double mv = m(x);
        return w(x) + 0.5 * mv * mv;
    };
    fs.a_x = fs.a_y = fs.b_y = [](double, double) { return 0.0; };
    fs.b_x = [md](double x, double) { return -md(x); };
    return fs;
}

} // namespace qsep
