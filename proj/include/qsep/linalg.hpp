#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep {

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below x, by the Sturm sequence count.
inline int sturm_count(const std::vector<double>& diag,
                       const std::vector<double>& off, double x)
{
    const std::size_t n = diag.size();
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < n; ++i) {
        double denom = q;
        if (std::fabs(denom) < 1e-300)
            denom = (denom < 0.0) ? -1e-300 : 1e-300;
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if (q < 0.0)
            ++count;
    }
    return count;
}

/// Lowest `count` eigenvalues of a symmetric tridiagonal matrix by
/// bisection on the Sturm count. off has size n-1.
inline std::vector<double> tridiag_lowest_eigenvalues(
    const std::vector<double>& diag, const std::vector<double>& off,
    int count, double tol = 1e-13)
{
    const std::size_t n = diag.size();
    count = std::min<int>(count, static_cast<int>(n));

    // Gershgorin bounds
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0)
            r += std::fabs(off[i - 1]);
        if (i + 1 < n)
            r += std::fabs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }

    const double scale = std::max(std::fabs(lo), std::fabs(hi));
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        while (b - a > tol * std::max(1.0, scale)) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(diag, off, mid) > k)
                b = mid;
            else
                a = mid;
        }
        out[k] = 0.5 * (a + b);
    }
    return out;
}

} // namespace qsep
