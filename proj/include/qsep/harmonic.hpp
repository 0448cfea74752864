#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qsep/errors.hpp"
#include "qsep/hermite.hpp"
#include "qsep/linalg.hpp"
#include "qsep/params.hpp"
#include "qsep/profile.hpp"

namespace qsep {

/// Constant-field anisotropic oscillator setup: W = (w1^2 x^2 + w2^2 y^2)/2,
/// Omega = Omega0, with the derived separation constants.
struct HarmonicSetup {
    double omega1, omega2, Omega0, hbar;
    double P;    // (w1+w2)^2 + Omega0^2
    double R;    // hbar sqrt(P) / (2 (w1+w2))
    double S_im; // S = i * S_im, S_im = hbar Omega0 sqrt(w1 w2)/(w1+w2)
    double tau1, tau2;
    double phi; // (w2-w1)/w1

    HarmonicSetup(double w1, double w2, double field, double hb = 1.0)
        : omega1(w1), omega2(w2), Omega0(field), hbar(hb)
    {
        if (w1 <= 0.0 || w2 <= 0.0)
            throw DomainViolationError("harmonic setup needs omega1, omega2 > 0");
        if (w1 == w2)
            throw DegenerateFrequenciesError("harmonic setup needs omega1 != omega2");
        if (hb <= 0.0)
            throw DomainViolationError("harmonic setup needs hbar > 0");
        const double ws = w1 + w2;
        P = ws * ws + field * field;
        R = hb * std::sqrt(P) / (2.0 * ws);
        S_im = hb * field * std::sqrt(w1 * w2) / ws;
        tau1 = std::sqrt(w1 / (hb * ws)) * std::pow(P, 0.25);
        tau2 = std::sqrt(w2 / (hb * ws)) * std::pow(P, 0.25);
        phi = (w2 - w1) / w1;
    }
};

/// One exact level of the n-block: energy, integral eigenvalue and the
/// superposition coefficients A_{n1, n-n1}, indexed by n1.
struct HarmonicLevel {
    int n = 0;
    double energy = 0.0;
    double lambda = 0.0;
    std::vector<std::complex<double>> coefficients;
};

struct SeparatedSolution {
    HermiteGaussian v, w;
    double k0, energy, lambda;
};

/// The pure product solution v(x) w(y) of the separated pair of oscillator
/// equations, with its (k0, E, lambda).
inline SeparatedSolution separated_solution(const HarmonicSetup& s, int n1,
                                            int n2)
{
    if (n1 < 0 || n2 < 0)
        throw DomainViolationError("quantum numbers must be non-negative");
    const double lambda = s.R * s.omega1 * (2.0 * n1 + 1.0);
    const double energy =
        s.R * (s.omega1 * (2.0 * n1 + 1.0) + s.omega2 * (2.0 * n2 + 1.0));
    return {HermiteGaussian{n1, s.tau1}, HermiteGaussian{n2, s.tau2}, lambda,
            energy, lambda};
}

/// The E-independent part of the block matrix: M(E) = build_M(...) - E*I.
/// Row j (1-based) corresponds to n1 = j-1.
inline Eigen::MatrixXcd build_M(const HarmonicSetup& s, int n)
{
    if (n < 0)
        throw DomainViolationError("block index must be non-negative");
    const int dim = n + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> S{0.0, s.S_im};
    for (int j = 1; j <= dim; ++j) {
        m(j - 1, j - 1) = s.R * ((2.0 * j - 1.0) * s.omega1 +
                                 (2.0 * (n - j) + 3.0) * s.omega2);
        if (j < dim) {
            m(j - 1, j) = -static_cast<double>(j) * S;
            m(j, j - 1) = static_cast<double>(dim - j) * S;
        }
    }
    return m;
}

/// The n+1 real energies of the n-block, ascending.  The complex tridiagonal
/// block is similar to a real symmetric one because the sub/super products
/// -j(n+1-j) S^2 are positive.
inline std::vector<double> spectrum(const HarmonicSetup& s, int n)
{
    const int dim = n + 1;
    std::vector<double> diag(dim), off(dim > 1 ? dim - 1 : 0);
    for (int j = 1; j <= dim; ++j)
        diag[j - 1] = s.R * ((2.0 * j - 1.0) * s.omega1 +
                             (2.0 * (n - j) + 3.0) * s.omega2);
    for (int j = 1; j < dim; ++j)
        off[j - 1] =
            std::fabs(s.S_im) * std::sqrt(static_cast<double>(j) * (dim - j));
    if (dim == 1)
        return {diag[0]};
    return tridiag_lowest_eigenvalues(diag, off, dim);
}

/// lambda from the block relation E w1 + lambda (w2 - w1) =
/// hbar w1 w2 sqrt(P) (n+1) / (w1 + w2).
inline double lambda_for(const HarmonicSetup& s, int n, double energy)
{
    if (s.omega1 == s.omega2)
        throw DegenerateFrequenciesError("lambda undefined for omega1 == omega2");
    const double rhs = s.hbar * s.omega1 * s.omega2 * std::sqrt(s.P) *
                       (n + 1.0) / (s.omega1 + s.omega2);
    return (rhs - energy * s.omega1) / (s.omega2 - s.omega1);
}

/// Unit-norm nullspace vector of M(E), first nonzero entry made real
/// positive.
inline std::vector<std::complex<double>> eigen_coefficients(
    const HarmonicSetup& s, int n, double energy)
{
    const int dim = n + 1;
    Eigen::MatrixXcd m = build_M(s, n);
    m -= energy * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(sv(0), 1.0);
    int null_dim = 0;
    for (int i = 0; i < dim; ++i)
        if (sv(i) < 1e-8 * scale)
            ++null_dim;
    if (null_dim != 1)
        throw RankDeficiencyError("nullspace dimension is " +
                                  std::to_string(null_dim) +
                                  ", expected 1 (is E a block root?)");
    Eigen::VectorXcd v = svd.matrixV().col(dim - 1);
    // phase convention
    double vmax = 0.0;
    for (int i = 0; i < dim; ++i)
        vmax = std::max(vmax, std::abs(v(i)));
    for (int i = 0; i < dim; ++i) {
        if (std::abs(v(i)) > 1e-12 * vmax) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    }
    v.normalize();
    return {v.data(), v.data() + dim};
}

/// All exact levels of the n-block.
inline std::vector<HarmonicLevel> levels(const HarmonicSetup& s, int n)
{
    std::vector<HarmonicLevel> out;
    for (double e : spectrum(s, n)) {
        HarmonicLevel lvl;
        lvl.n = n;
        lvl.energy = e;
        lvl.lambda = lambda_for(s, n, e);
        lvl.coefficients = eigen_coefficients(s, n, e);
        out.push_back(std::move(lvl));
    }
    return out;
}

/// The superposed wavefunction of a level at one point.
inline std::complex<double> wavefunction(const HarmonicSetup& s,
                                         const HarmonicLevel& lvl, double x,
                                         double y)
{
    const double u1 = s.tau1 * x, u2 = s.tau2 * y;
    const double gauss = std::exp(-0.5 * (u1 * u1 + u2 * u2));
    std::complex<double> sum{0.0, 0.0};
    for (int n1 = 0; n1 <= lvl.n; ++n1)
        sum += lvl.coefficients[n1] * hermite_h(n1, u1) *
               hermite_h(lvl.n - n1, u2);
    return gauss * sum;
}

inline std::function<std::complex<double>(double, double)>
wavefunction_closure(const HarmonicSetup& s, const HarmonicLevel& lvl)
{
    return [s, lvl](double x, double y) { return wavefunction(s, lvl, x, y); };
}

/// Map the setup back to the cubic-parameter picture (quadratic profiles):
/// f = gamma x^2/2, g = xi y^2/2 with Omega = gamma + xi = Omega0 and
/// W = (w1^2 x^2 + w2^2 y^2)/2.
struct HarmonicCubic {
    CubicParams params;
    Profile fp, gp;
};

inline HarmonicCubic harmonic_cubic(const HarmonicSetup& s)
{
    if (s.Omega0 == 0.0)
        throw DomainViolationError(
            "the cubic-parameter bridge needs Omega0 != 0");
    const double d = s.omega1 * s.omega1 - s.omega2 * s.omega2;
    CubicParams p;
    p.gamma = s.Omega0 * s.omega1 * s.omega1 / d;
    p.xi = -s.Omega0 * s.omega2 * s.omega2 / d;
    p.mu = d / s.Omega0 + p.gamma - p.xi;
    return {p, Profile::quadratic(Axis::X, p.gamma),
            Profile::quadratic(Axis::Y, p.xi)};
}

} // namespace qsep
