#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qsep/jacobi.hpp"

using namespace qsep;

namespace {

// Independent oracle: incomplete elliptic integral F(phi, k) by Simpson
// quadrature, inverted for phi by bisection; sn(u,k) = sin(phi).
double incomplete_f(double phi, double k)
{
    const int n = 2000;
    const double h = phi / n;
    auto f = [k](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
    };
    double acc = f(0.0) + f(phi);
    for (int i = 1; i < n; ++i)
        acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return acc * h / 3.0;
}

double sn_oracle(double u, double k)
{
    double lo = 0.0, hi = 0.5 * M_PI;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (incomplete_f(mid, k) < u ? lo : hi) = mid;
    }
    return std::sin(0.5 * (lo + hi));
}

} // namespace

TEST_CASE("degenerate moduli reduce to circular and hyperbolic functions")
{
    const auto j0 = jacobi_sn_cn_dn(0.7, 0.0);
    CHECK(j0.sn == Catch::Approx(std::sin(0.7)).epsilon(1e-14));
    CHECK(j0.cn == Catch::Approx(std::cos(0.7)).epsilon(1e-14));
    CHECK(j0.dn == Catch::Approx(1.0).epsilon(1e-14));

    const auto j1 = jacobi_sn_cn_dn(0.7, 1.0);
    CHECK(j1.sn == Catch::Approx(std::tanh(0.7)).epsilon(1e-14));
    CHECK(j1.cn == Catch::Approx(1.0 / std::cosh(0.7)).epsilon(1e-14));
    CHECK(j1.dn == Catch::Approx(1.0 / std::cosh(0.7)).epsilon(1e-14));
}

TEST_CASE("sn matches quadrature inversion of the elliptic integral")
{
    CHECK(jacobi_sn_cn_dn(0.5, 0.7).sn ==
          Catch::Approx(sn_oracle(0.5, 0.7)).epsilon(1e-11));
    // the value entering the sn^2 profile with roots (0, 1, 2), alpha = 6
    const double u = std::sqrt(2.0) * 0.3;
    const double k = 1.0 / std::sqrt(2.0);
    CHECK(jacobi_sn_cn_dn(u, k).sn ==
          Catch::Approx(sn_oracle(u, k)).epsilon(1e-11));
}

TEST_CASE("algebraic identities hold for random arguments")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> du(-8.0, 8.0), dk(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = du(rng), k = dk(rng);
        const auto j = jacobi_sn_cn_dn(u, k);
        CHECK(std::fabs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
        CHECK(std::fabs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0) < 1e-12);
    }
}

TEST_CASE("quarter period and parity")
{
    const double k = 0.6;
    const double kq = elliptic_k(k);
    const auto at_k = jacobi_sn_cn_dn(kq, k);
    CHECK(at_k.sn == Catch::Approx(1.0).margin(1e-12));
    CHECK(at_k.cn == Catch::Approx(0.0).margin(1e-12));
    const auto plus = jacobi_sn_cn_dn(0.8, k);
    const auto minus = jacobi_sn_cn_dn(-0.8, k);
    CHECK(plus.sn == Catch::Approx(-minus.sn).epsilon(1e-13));
    CHECK(plus.cn == Catch::Approx(minus.cn).epsilon(1e-13));
    // periodicity with period 4K
    const auto shifted = jacobi_sn_cn_dn(0.8 + 4.0 * kq, k);
    CHECK(shifted.sn == Catch::Approx(plus.sn).margin(1e-11));
}

TEST_CASE("elliptic_k endpoints")
{
    CHECK(elliptic_k(0.0) == Catch::Approx(0.5 * M_PI).epsilon(1e-14));
    CHECK(std::isinf(elliptic_k(1.0)));
    CHECK_THROWS_AS(elliptic_k(1.5), DomainViolationError);
}
