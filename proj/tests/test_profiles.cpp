#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qsep/jacobi.hpp"
#include "qsep/profile.hpp"

using namespace qsep;

namespace {

std::vector<double> window_points(const Profile& p, int n = 100)
{
    std::vector<double> pts;
    for (bool up : {true, false}) {
        const auto [lo, hi] = p.monotone_window(up);
        for (int i = 0; i < n / 2; ++i)
            pts.push_back(lo + (hi - lo) * (i + 0.5) / (n / 2));
    }
    return pts;
}

struct NamedCase {
    const char* name;
    Profile profile;
};

std::vector<NamedCase> catalogue(Axis axis)
{
    const double a = 6.0;
    return {
        {"linear", Profile::linear(axis, 0.7, -0.3)},
        {"quadratic", Profile::quadratic(axis, 1.2, 0.4, 0.1)},
        {"exponential_one_term", Profile::exponential(axis, 1.5, 0.6, 0.8, 0.0)},
        {"exponential_two_term", Profile::exponential(axis, 1.5, 0.6, 0.8, -0.5)},
        {"inverse_a", Profile::inverse_power(axis, a, 2.0, 0.5)},
        {"trig_b", Profile::trig(axis, a, 0.0, axis == Axis::X ? -1.5 : 1.5, 0.2)},
        {"tanh_c", Profile::tanh_sq(axis, a, 0.0, axis == Axis::X ? -1.5 : 1.5, -0.1)},
        {"cotanh_d", Profile::cotanh_sq(axis, a, 0.0, axis == Axis::X ? -1.5 : 1.5, 0.3)},
        {"sn_e", axis == Axis::X
                     ? Profile::elliptic_sn(axis, a, 0.0, 1.0, 2.0, 0.1)
                     : Profile::elliptic_sn(axis, a, -2.0, -1.0, 0.0, 0.1)},
        {"sn_f", axis == Axis::X
                     ? Profile::elliptic_sn_inverse(axis, a, 0.0, 1.0, 2.0, 0.1)
                     : Profile::elliptic_sn_inverse(axis, a, -2.0, -1.0, 0.0, 0.1)},
        {"cn_g", axis == Axis::X
                     ? Profile::elliptic_cn(axis, a, -1.0, 0.5, 1.0, 0.1)
                     : Profile::elliptic_cn(axis, a, 1.0, -0.5, 1.0, 0.1)},
    };
}

} // namespace

TEST_CASE("catalogue cases satisfy their ODE and first integral on both axes")
{
    for (Axis axis : {Axis::X, Axis::Y}) {
        for (const auto& [name, p] : catalogue(axis)) {
            CubicParams cp;
            p.apply_to(cp);
            const auto [rode, rint] = profile_residuals(p, cp, window_points(p));
            INFO((axis == Axis::X ? "X " : "Y ") << name);
            CHECK(rode < 1e-9);
            CHECK(rint < 1e-9);
        }
    }
}

TEST_CASE("closed-form spot values")
{
    // 6/(alpha t^2) with alpha = 6, beta = 0
    const Profile inv = Profile::inverse_power(Axis::X, 6.0, 0.0, 0.0);
    CHECK(inv.value(2.0) == Catch::Approx(0.25).epsilon(1e-14));

    // tanh^2 case at the symmetry point sits on its lowest root
    const Profile th = Profile::tanh_sq(Axis::X, 6.0, 0.0, -1.5, 0.7);
    CHECK(th.value(0.7) == Catch::Approx(th.roots()[0]).margin(1e-14));

    // sn^2 case with roots (0, 1, 2), alpha = 6: omega^2 = 2, k^2 = 1/2
    const Profile sn = Profile::elliptic_sn(Axis::X, 6.0, 0.0, 1.0, 2.0, 0.0);
    const double expected =
        std::pow(jacobi_sn_cn_dn(std::sqrt(2.0) * 0.3, 1.0 / std::sqrt(2.0)).sn, 2);
    CHECK(sn.value(0.3) == Catch::Approx(expected).epsilon(1e-13));

    // linear profile residuals are exactly zero
    const Profile lin = Profile::linear(Axis::Y, 2.0, 1.0);
    CubicParams cp;
    lin.apply_to(cp);
    const auto [rode, rint] = profile_residuals(lin, cp, {-1.0, 0.0, 2.0});
    CHECK(rode == 0.0);
    CHECK(rint == 0.0);
}

TEST_CASE("root perturbation is detected by the first integral")
{
    const Profile good = Profile::elliptic_sn(Axis::X, 6.0, 0.0, 1.0, 2.0, 0.0);
    CubicParams cp;
    good.apply_to(cp);
    const Profile bad =
        Profile::elliptic_sn(Axis::X, 6.0, 0.0, 1.0, 2.0 + 1e-3, 0.0);
    const auto [rode, rint] = profile_residuals(bad, cp, window_points(bad));
    CHECK(rint > 1e-6);
}

TEST_CASE("branch ordering follows the catalogue")
{
    const Profile b = Profile::trig(Axis::X, 6.0, 0.0, -1.5, 0.0);
    const Profile c = Profile::tanh_sq(Axis::X, 6.0, 0.0, -1.5, 0.0);
    const Profile d = Profile::cotanh_sq(Axis::X, 6.0, 0.0, -1.5, 0.0);
    for (double t : window_points(b))
        CHECK(b.value(t) >= b.roots()[2] - 1e-12);
    for (double t : window_points(c)) {
        CHECK(c.value(t) >= c.roots()[0] - 1e-12);
        CHECK(c.value(t) <= c.roots()[2] + 1e-12);
    }
    for (double t : window_points(d))
        CHECK(d.value(t) >= d.roots()[2] - 1e-12);
}

TEST_CASE("monotone windows have the advertised slope sign")
{
    for (Axis axis : {Axis::X, Axis::Y}) {
        for (const auto& [name, p] : catalogue(axis)) {
            if (p.case_tag() == ProfileCase::Linear ||
                p.case_tag() == ProfileCase::Exponential)
                continue; // single-branch families
            for (bool up : {true, false}) {
                const auto [lo, hi] = p.monotone_window(up);
                for (int i = 0; i < 20; ++i) {
                    const double t = lo + (hi - lo) * (i + 0.5) / 20;
                    INFO(name << (up ? " up" : " down"));
                    CHECK((up ? p.eval(t).d1 > 0.0 : p.eval(t).d1 < 0.0));
                }
            }
        }
    }
}

TEST_CASE("pole guard and constructor validation")
{
    Profile inv = Profile::inverse_power(Axis::X, 6.0, 0.0, 0.0);
    CHECK_THROWS_AS(inv.value(1e-9), SingularPointError);
    inv.set_pole_guard(0.5);
    CHECK_THROWS_AS(inv.value(0.4), SingularPointError);
    CHECK_NOTHROW(inv.value(0.6));

    CHECK_THROWS_AS(Profile::trig(Axis::X, 6.0, 0.0, 1.5, 0.0),
                    InvalidCaseError); // beta^2 - 4 alpha gamma < 0
    CHECK_THROWS_AS(Profile::exponential(Axis::X, -1.0, 0.0, 1.0, 0.0),
                    InvalidCaseError);
    CHECK_THROWS_AS(Profile::elliptic_sn(Axis::X, 6.0, 0.0, 0.0, 2.0, 0.0),
                    InvalidCaseError); // roots not distinct
    CHECK_THROWS_AS(Profile::elliptic_cn(Axis::X, 6.0, 0.0, 1.0, -2.0, 0.0),
                    InvalidCaseError); // q <= 0

    // declared frequency must match the roots
    const double good_omega = std::sqrt(6.0 * 2.0 / 6.0);
    CHECK_NOTHROW(
        Profile::elliptic_sn(Axis::X, 6.0, 0.0, 1.0, 2.0, 0.0, good_omega));
    CHECK_THROWS_AS(
        Profile::elliptic_sn(Axis::X, 6.0, 0.0, 1.0, 2.0, 0.0, 1.1 * good_omega),
        InvalidCaseError);
}

TEST_CASE("axis constants round-trip the defining equations")
{
    // Y-axis trig: g'' = -alpha g^2 + delta g + xi with the table constraint
    const Profile g = Profile::trig(Axis::Y, 6.0, 0.0, 1.5, 0.0);
    const auto [al, dl, xi] = g.axis_constants();
    CHECK(al == 6.0);
    CHECK(dl == 0.0);
    CHECK(xi == 1.5);
    // delta^2 + 4 alpha xi > 0 is the Y-side reality condition
    CHECK(dl * dl + 4.0 * al * xi > 0.0);
}
