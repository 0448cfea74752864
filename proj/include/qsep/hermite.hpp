#pragma once

#include <cmath>

namespace qsep {

/// Physicists' Hermite polynomial H_n(u) by the three-term recursion
/// H_{m+1} = 2u H_m - 2m H_{m-1}.
inline double hermite_h(int n, double u)
{
    double hm1 = 0.0, h = 1.0;
    for (int m = 0; m < n; ++m) {
        const double hp = 2.0 * u * h - 2.0 * m * hm1;
        hm1 = h;
        h = hp;
    }
    return h;
}

/// Value and first two derivatives (in x) of the Hermite-Gaussian
/// phi_n(x) = exp(-tau^2 x^2 / 2) H_n(tau x).
struct HermiteGaussian {
    int n;
    double tau;

    double value(double x) const
    {
        const double u = tau * x;
        return std::exp(-0.5 * u * u) * hermite_h(n, u);
    }

    double d1(double x) const
    {
        // phi_n' = tau (n phi_{n-1} - phi_{n+1}/2)
        const double u = tau * x;
        const double g = std::exp(-0.5 * u * u);
        const double lower = (n > 0) ? n * hermite_h(n - 1, u) : 0.0;
        return tau * g * (lower - 0.5 * hermite_h(n + 1, u));
    }

    double d2(double x) const
    {
        // oscillator equation: phi_n'' = tau^2 (tau^2 x^2 - (2n+1)) phi_n
        const double u = tau * x;
        return tau * tau * (u * u - (2.0 * n + 1.0)) * value(x);
    }
};

} // namespace qsep
