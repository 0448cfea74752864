#pragma once

#include <cmath>
#include <functional>

#include "qsep/errors.hpp"
#include "qsep/params.hpp"
#include "qsep/profile.hpp"

namespace qsep {

using Fn2 = std::function<double(double, double)>;

/// Gauge-dependent field data: the potentials and their analytic partials
/// (the partials feed the symmetrized operator discretizations).
struct FieldSet {
    double hbar = 1.0;
    Fn2 omega_field; // magnetic field Omega = A_y - B_x
    Fn2 w_eff;       // effective potential W = V - (A^2+B^2)/2
    Fn2 a_pot, b_pot, v_pot;
    Fn2 a_x, a_y, b_x, b_y;
};

/// The functions entering the second-order Cartesian integral.
struct IntegralData {
    Fn2 m_fn;
    Fn2 k1_fn; // k1 = -g'(y)
    Fn2 k2_fn; // k2 = -f'(x)
};

/// Gauge-invariant output of build_fields.
struct FieldData {
    Fn2 omega_field;
    Fn2 w_eff;
    Fn2 w_x, w_y; // analytic gradient of W (classical force terms)
    IntegralData data;
};

/// Vector potential choice plus the separation multiplier phi.
struct GaugePotentials {
    Fn2 a, b;
    Fn2 a_x, a_y, b_x, b_y;
    Fn2 phi;
};

/// A gauge function with enough derivatives to transform a FieldSet.
struct GaugeFunction {
    Fn2 chi;
    Fn2 chi_x, chi_y;
    Fn2 chi_xx, chi_xy, chi_yy;
};

enum class Theorem1Case {
    Case1_LinearG,
    Case2_ExpG,
    Case3_Quadratic,
    Case4_Tables,
    NotQuasiseparable,
};

/// Gauge-invariant data Omega, W and the integral's m, k1, k2 built from the
/// two profiles.
inline FieldData build_fields(const CubicParams& p, const Profile& fp,
                              const Profile& gp)
{
    FieldData out;
    out.omega_field = [fp, gp](double x, double y) {
        return fp.eval(x).d2 + gp.eval(y).d2;
    };
    out.w_eff = [p, fp, gp](double x, double y) {
        const double u = fp.eval(x).value - gp.eval(y).value;
        return -(p.alpha / 3.0) * u * u * u -
               0.5 * (p.beta + p.delta) * u * u +
               (p.xi - p.gamma + p.mu) * u;
    };
    // W = P(f-g) with P a cubic, so grad W follows from P' and the profile
    // derivatives.
    auto wprime = [p](double u) {
        return -p.alpha * u * u - (p.beta + p.delta) * u +
               (p.xi - p.gamma + p.mu);
    };
    out.w_x = [wprime, fp, gp](double x, double y) {
        const ProfileEval fe = fp.eval(x);
        return fe.d1 * wprime(fe.value - gp.eval(y).value);
    };
    out.w_y = [wprime, fp, gp](double x, double y) {
        const ProfileEval ge = gp.eval(y);
        return -ge.d1 * wprime(fp.eval(x).value - ge.value);
    };
    out.data.m_fn = [p, fp, gp](double x, double y) {
        const double f = fp.eval(x).value;
        const double g = gp.eval(y).value;
        return -(p.alpha / 3.0) * (g * g * g + 2.0 * f * f * f -
                                   3.0 * g * f * f) +
               p.beta * (f * g - f * f) -
               0.5 * p.delta * (f * f - g * g) - p.gamma * (2.0 * f - g) +
               p.mu * f + p.xi * g;
    };
    out.data.k1_fn = [gp](double, double y) { return -gp.eval(y).d1; };
    out.data.k2_fn = [fp](double x, double) { return -fp.eval(x).d1; };
    return out;
}

/// Assemble a full FieldSet from gauge-invariant data and a chosen gauge.
inline FieldSet make_field_set(double hbar, const FieldData& fd,
                               const GaugePotentials& gauge)
{
    FieldSet fs;
    fs.hbar = hbar;
    fs.omega_field = fd.omega_field;
    fs.w_eff = fd.w_eff;
    fs.a_pot = gauge.a;
    fs.b_pot = gauge.b;
    fs.a_x = gauge.a_x;
    fs.a_y = gauge.a_y;
    fs.b_x = gauge.b_x;
    fs.b_y = gauge.b_y;
    const Fn2 w = fd.w_eff;
    const Fn2 a = gauge.a;
    const Fn2 b = gauge.b;
    fs.v_pot = [w, a, b](double x, double y) {
        const double av = a(x, y), bv = b(x, y);
        return w(x, y) + 0.5 * (av * av + bv * bv);
    };
    return fs;
}

/// A + grad(chi) gauge transformation; Omega and W are untouched.
inline FieldSet gauge_transform(const FieldSet& fs, const GaugeFunction& chi)
{
    FieldSet out = fs;
    const Fn2 a = fs.a_pot, b = fs.b_pot, v = fs.v_pot;
    out.a_pot = [a, cx = chi.chi_x](double x, double y) {
        return a(x, y) + cx(x, y);
    };
    out.b_pot = [b, cy = chi.chi_y](double x, double y) {
        return b(x, y) + cy(x, y);
    };
    out.v_pot = [a, b, v, cx = chi.chi_x, cy = chi.chi_y](double x, double y) {
        const double gx = cx(x, y), gy = cy(x, y);
        return v(x, y) + a(x, y) * gx + b(x, y) * gy +
               0.5 * (gx * gx + gy * gy);
    };
    out.a_x = [ax = fs.a_x, cxx = chi.chi_xx](double x, double y) {
        return ax(x, y) + cxx(x, y);
    };
    out.a_y = [ay = fs.a_y, cxy = chi.chi_xy](double x, double y) {
        return ay(x, y) + cxy(x, y);
    };
    out.b_x = [bx = fs.b_x, cxy = chi.chi_xy](double x, double y) {
        return bx(x, y) + cxy(x, y);
    };
    out.b_y = [by = fs.b_y, cyy = chi.chi_yy](double x, double y) {
        return by(x, y) + cyy(x, y);
    };
    return out;
}

/// Convenience: polynomial-free gauge functions used in tests/CLI.
inline GaugeFunction gauge_xy()
{
    GaugeFunction g;
    g.chi = [](double x, double y) { return x * y; };
    g.chi_x = [](double, double y) { return y; };
    g.chi_y = [](double x, double) { return x; };
    g.chi_xx = [](double, double) { return 0.0; };
    g.chi_xy = [](double, double) { return 1.0; };
    g.chi_yy = [](double, double) { return 0.0; };
    return g;
}

namespace detail {

/// 1 + phi of the separation ansatz, evaluated with |f'|, |g'|; the sign
/// bookkeeping lives in eps1/eps2 and the monotonicity branch.
inline double one_plus_phi(const Profile& fp, const Profile& gp,
                           const SeparationConstants& sc, double x, double y)
{
    const ProfileEval fe = fp.eval(x);
    const ProfileEval ge = gp.eval(y);
    const double r1 = sc.c1 - 2.0 * sc.k * fe.value;
    const double r2 = sc.c2 + 2.0 * sc.k * ge.value;
    if (r1 <= 0.0 || r2 <= 0.0)
        throw DomainViolationError("separation radicand non-positive");
    if (fe.d1 == 0.0)
        throw DerivativeZeroError("f'(x) = 0 in phi evaluation");
    return static_cast<double>(sc.eps1 * sc.eps2) * std::sqrt(r1 / r2) *
           std::fabs(ge.d1) / std::fabs(fe.d1);
}

inline std::pair<double, double> phi_partials(const Profile& fp,
                                              const Profile& gp,
                                              const SeparationConstants& sc,
                                              double x, double y)
{
    const ProfileEval fe = fp.eval(x);
    const ProfileEval ge = gp.eval(y);
    const double op = one_plus_phi(fp, gp, sc, x, y);
    const double px = op * (-sc.k * fe.d1 / (sc.c1 - 2.0 * sc.k * fe.value) -
                            fe.d2 / fe.d1);
    const double py = op * (ge.d2 / ge.d1 -
                            sc.k * ge.d1 / (sc.c2 + 2.0 * sc.k * ge.value));
    return {px, py};
}

} // namespace detail

/// The Theorem-1 vector potential and multiplier for the given case.
inline GaugePotentials theorem1_gauge(Theorem1Case tcase, const CubicParams& p,
                                      const Profile& fp, const Profile& gp,
                                      const SeparationConstants& sc = {})
{
    GaugePotentials out;
    const Fn2 zero = [](double, double) { return 0.0; };
    switch (tcase) {
    case Theorem1Case::Case1_LinearG:
    case Theorem1Case::Case2_ExpG:
        // phi = -1, A = g', B = -f'
        out.a = [gp](double, double y) { return gp.eval(y).d1; };
        out.b = [fp](double x, double) { return -fp.eval(x).d1; };
        out.a_x = zero;
        out.a_y = [gp](double, double y) { return gp.eval(y).d2; };
        out.b_x = [fp](double x, double) { return -fp.eval(x).d2; };
        out.b_y = zero;
        out.phi = [](double, double) { return -1.0; };
        return out;
    case Theorem1Case::Case3_Quadratic: {
        if (p.gamma * p.xi >= 0.0)
            throw NotQuasiseparableError("quadratic case needs gamma*xi < 0");
        // 1 + phi = sqrt(-xi/gamma), constant
        const double op = std::sqrt(-p.xi / p.gamma);
        const double phi = op - 1.0;
        out.a = [gp, phi, op](double, double y) {
            return phi / op * gp.eval(y).d1;
        };
        out.b = [fp, phi](double x, double) { return phi * fp.eval(x).d1; };
        out.a_x = zero;
        out.a_y = [gp, phi, op](double, double y) {
            return phi / op * gp.eval(y).d2;
        };
        out.b_x = [fp, phi](double x, double) { return phi * fp.eval(x).d2; };
        out.b_y = zero;
        out.phi = [phi](double, double) { return phi; };
        return out;
    }
    case Theorem1Case::Case4_Tables: {
        if (sc.k == 0.0)
            throw NotQuasiseparableError("table case needs k != 0");
        out.phi = [fp, gp, sc](double x, double y) {
            return detail::one_plus_phi(fp, gp, sc, x, y) - 1.0;
        };
        out.a = [fp, gp, sc](double x, double y) {
            const double op = detail::one_plus_phi(fp, gp, sc, x, y);
            return (op - 1.0) / op * gp.eval(y).d1;
        };
        out.b = [fp, gp, sc](double x, double y) {
            return (detail::one_plus_phi(fp, gp, sc, x, y) - 1.0) *
                   fp.eval(x).d1;
        };
        out.a_x = [fp, gp, sc](double x, double y) {
            const double op = detail::one_plus_phi(fp, gp, sc, x, y);
            const auto [px, py] = detail::phi_partials(fp, gp, sc, x, y);
            (void)py;
            return px / (op * op) * gp.eval(y).d1;
        };
        out.a_y = [fp, gp, sc](double x, double y) {
            const double op = detail::one_plus_phi(fp, gp, sc, x, y);
            const auto [px, py] = detail::phi_partials(fp, gp, sc, x, y);
            (void)px;
            const ProfileEval ge = gp.eval(y);
            return (op - 1.0) / op * ge.d2 + py / (op * op) * ge.d1;
        };
        out.b_x = [fp, gp, sc](double x, double y) {
            const double op = detail::one_plus_phi(fp, gp, sc, x, y);
            const auto [px, py] = detail::phi_partials(fp, gp, sc, x, y);
            (void)py;
            const ProfileEval fe = fp.eval(x);
            return px * fe.d1 + (op - 1.0) * fe.d2;
        };
        out.b_y = [fp, gp, sc](double x, double y) {
            const auto [px, py] = detail::phi_partials(fp, gp, sc, x, y);
            (void)px;
            return py * fp.eval(x).d1;
        };
        return out;
    }
    default:
        throw NotQuasiseparableError("no Theorem-1 gauge for this case");
    }
}

} // namespace qsep
