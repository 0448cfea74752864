#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "qsep/errors.hpp"

namespace qsep {

/// Triple of Jacobi elliptic function values at a common argument.
struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

/// Complete elliptic integral K(k) via the arithmetic-geometric mean.
/// Modulus convention: k (not the parameter m = k^2).
inline double elliptic_k(double k)
{
    if (k < 0.0 || k > 1.0)
        throw DomainViolationError("elliptic_k: modulus outside [0,1]");
    if (k == 1.0)
        return std::numeric_limits<double>::infinity();
    double a = 1.0;
    double b = std::sqrt(1.0 - k * k);
    for (int i = 0; i < 40 && std::fabs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a);
}

/// sn, cn, dn by the descending Landen (AGM) recursion.
/// The k=0 and k=1 degeneracies are returned in closed form.
inline JacobiTriple jacobi_sn_cn_dn(double u, double k)
{
    if (k < 0.0 || k > 1.0)
        throw DomainViolationError("jacobi_sn_cn_dn: modulus outside [0,1]");
    if (k < 1e-14)
        return {std::sin(u), std::cos(u), 1.0};
    if (1.0 - k < 1e-14) {
        const double s = 1.0 / std::cosh(u);
        return {std::tanh(u), s, s};
    }

    // AGM ladder
    constexpr int kMaxIter = 32;
    double a[kMaxIter], c[kMaxIter];
    a[0] = 1.0;
    c[0] = k;
    double b = std::sqrt(1.0 - k * k);
    int n = 0;
    while (std::fabs(c[n]) > 1e-16 * a[n]) {
        if (n + 1 >= kMaxIter)
            break;
        const double an = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        a[n + 1] = an;
        ++n;
    }

    // backward phi recursion
    double phi = std::ldexp(1.0, n) * a[n] * u;
    for (int j = n; j > 0; --j)
        phi = 0.5 * (phi + std::asin(std::clamp(c[j] / a[j] * std::sin(phi), -1.0, 1.0)));

    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = std::sqrt(1.0 - k * k * sn * sn);
    return {sn, cn, dn};
}

} // namespace qsep
