#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qsep/firstorder.hpp"
#include "qsep/harmonic.hpp"
#include "qsep/operators.hpp"

using namespace qsep;

namespace {

FieldSet free_fields(double hbar = 1.0)
{
    FieldSet fs;
    fs.hbar = hbar;
    const Fn2 zero = [](double, double) { return 0.0; };
    fs.omega_field = fs.w_eff = fs.a_pot = fs.b_pot = fs.v_pot = zero;
    fs.a_x = fs.a_y = fs.b_x = fs.b_y = zero;
    return fs;
}

/// The anisotropic-oscillator setup of the constant-field system, in its
/// Theorem-1 gauge, together with the superposition levels.
struct OscillatorFixture {
    HarmonicSetup s;
    HarmonicCubic hc;
    FieldData fd;
    FieldSet fs;

    OscillatorFixture()
        : s(1.0, 2.0, 1.0),
          hc(harmonic_cubic(s)),
          fd(build_fields(hc.params, hc.fp, hc.gp)),
          fs(make_field_set(
              s.hbar, fd,
              theorem1_gauge(Theorem1Case::Case3_Quadratic, hc.params, hc.fp,
                             hc.gp)))
    {
    }
};

double rayleigh(const FieldSet& fs, const GridFunction& psi,
                const GridFunction& op_psi, int margin = 4)
{
    (void)fs;
    return std::real(inner(psi, op_psi, margin)) /
           std::real(inner(psi, psi, margin));
}

GridFunction gaussian(const Grid2D& g, double x0, double y0, double width)
{
    return sample(g, [=](double x, double y) {
        return cdouble{
            std::exp(-width * ((x - x0) * (x - x0) + (y - y0) * (y - y0))),
            0.0};
    });
}

} // namespace

TEST_CASE("free Laplacian stencil converges at fourth order")
{
    const FieldSet fs = free_fields();
    auto max_err = [&](int n) {
        const Grid2D g = make_grid(n, n, -6.0, 6.0, -6.0, 6.0);
        const GridFunction psi = sample(g, [](double x, double y) {
            return cdouble{std::exp(-(x * x + y * y)), 0.0};
        });
        const GridFunction hp = apply_H(fs, psi);
        double worst = 0.0;
        for (int j = 2; j < g.ny - 2; ++j)
            for (int i = 2; i < g.nx - 2; ++i) {
                const double x = g.x(i), y = g.y(j);
                const double r2 = x * x + y * y;
                const double exact =
                    -0.5 * (4.0 * r2 - 4.0) * std::exp(-r2);
                worst = std::max(worst,
                                 std::abs(hp.at(i, j) - cdouble{exact, 0.0}));
            }
        return worst;
    };
    const double e1 = max_err(49);
    const double e2 = max_err(97); // half the spacing
    CHECK(e2 < e1 / 12.0); // ~16x for a clean 4th-order stencil
}

TEST_CASE("ground state of the constant-field oscillator")
{
    const OscillatorFixture fx;
    const double e0 = std::sqrt(10.0) / 2.0;
    const HarmonicLevel lvl = levels(fx.s, 0).front();
    CHECK(lvl.energy == Catch::Approx(e0).epsilon(1e-12));

    const Grid2D g = make_grid(128, 128, -7.0, 7.0, -7.0, 7.0);
    const GridFunction psi = sample(g, [&](double x, double y) {
        return wavefunction(fx.s, lvl, x, y);
    });
    const GridFunction hp = apply_H(fx.fs, psi);
    CHECK(rayleigh(fx.fs, psi, hp) == Catch::Approx(e0).margin(2e-4));

    // pointwise residual, relative to the state scale
    const GridFunction res =
        linear_combination({1.0, 0.0}, hp, {-e0, 0.0}, psi);
    CHECK(l2_norm(res, 4) / l2_norm(psi, 4) < 2e-4);
}

TEST_CASE("the second-order integral shares the eigenfunctions")
{
    const OscillatorFixture fx;
    const Grid2D g = make_grid(128, 128, -7.0, 7.0, -7.0, 7.0);
    const auto lv = levels(fx.s, 0);
    const GridFunction psi = sample(g, [&](double x, double y) {
        return wavefunction(fx.s, lv.front(), x, y);
    });
    const GridFunction xp = apply_X_cartesian(fx.fs, fx.fd.data, psi);
    const double lam = rayleigh(fx.fs, psi, xp);
    CHECK(lam == Catch::Approx(lv.front().lambda).margin(2e-4));
    CHECK(lv.front().lambda == Catch::Approx(std::sqrt(10.0) / 6.0).epsilon(1e-12));
}

TEST_CASE("energy is gauge covariant")
{
    const OscillatorFixture fx;
    const double e0 = std::sqrt(10.0) / 2.0;
    const FieldSet fs2 = gauge_transform(fx.fs, gauge_xy());
    const Grid2D g = make_grid(128, 128, -7.0, 7.0, -7.0, 7.0);
    const HarmonicLevel lvl = levels(fx.s, 0).front();
    const GridFunction psi2 = sample(g, [&](double x, double y) {
        // psi' = exp(-i chi / hbar) psi with chi = x y
        return std::exp(cdouble{0.0, -x * y / fx.s.hbar}) *
               wavefunction(fx.s, lvl, x, y);
    });
    const GridFunction hp2 = apply_H(fs2, psi2);
    CHECK(rayleigh(fs2, psi2, hp2) == Catch::Approx(e0).margin(2e-4));
}

TEST_CASE("H and X commute for the constant-field system")
{
    const OscillatorFixture fx;
    const Grid2D g = make_grid(96, 96, -7.0, 7.0, -7.0, 7.0);
    std::vector<GridFunction> tests;
    tests.push_back(gaussian(g, 0.0, 0.0, 0.8));
    tests.push_back(gaussian(g, 0.7, -0.4, 1.0));
    tests.push_back(gaussian(g, -0.5, 0.6, 0.6));

    const OperatorAction ah = [&](const GridFunction& u) {
        return apply_H(fx.fs, u, false);
    };
    const OperatorAction ax = [&](const GridFunction& u) {
        return apply_X_cartesian(fx.fs, fx.fd.data, u, false);
    };
    const double good = commutator_residual(ah, ax, tests);
    CHECK(good < 2e-3);

    // breaking mu breaks the commutator
    CubicParams bad = fx.hc.params;
    bad.mu += 0.5;
    const FieldData fd_bad = build_fields(bad, fx.hc.fp, fx.hc.gp);
    const OperatorAction ax_bad = [&](const GridFunction& u) {
        return apply_X_cartesian(fx.fs, fd_bad.data, u, false);
    };
    const double broken = commutator_residual(ah, ax_bad, tests);
    CHECK(broken > 10.0 * good);
}

TEST_CASE("first-order integral reduces to the conserved momentum")
{
    // A = 0, B = -m(x): the y-momentum integral is P2 + B + m = -i hbar dy
    CartesianFirstOrder c;
    c.m_profile = [](double x) { return x * x; };
    c.m_deriv = [](double x) { return 2.0 * x; };
    c.w_profile = [](double) { return 0.0; };
    const FieldSet fs = cartesian_field_set(c);
    IntegralData data;
    data.m_fn = [&c](double x, double) { return c.m_profile(x); };
    data.k1_fn = data.k2_fn = [](double, double) { return 0.0; };
    FirstOrderCoeffs coeffs;
    coeffs.gamma = 1.0;

    const Grid2D g = make_grid(64, 64, -5.0, 5.0, -5.0, 5.0);
    const GridFunction psi = gaussian(g, 0.2, -0.3, 1.0);
    const GridFunction xp = apply_X_first_order(fs, data, coeffs, psi);
    for (int j = 4; j < g.ny - 4; j += 7)
        for (int i = 4; i < g.nx - 4; i += 7) {
            const cdouble expect =
                cdouble{0.0, -fs.hbar} * detail::d1y(psi, i, j, g.hy);
            CHECK(std::abs(xp.at(i, j) - expect) < 1e-12);
        }
}

TEST_CASE("operator actions are linear")
{
    const OscillatorFixture fx;
    const Grid2D g = make_grid(48, 48, -6.0, 6.0, -6.0, 6.0);
    const GridFunction u = gaussian(g, 0.3, 0.1, 0.9);
    const GridFunction v = gaussian(g, -0.2, 0.4, 1.2);
    const cdouble ca{0.7, -0.3}, cb{-1.1, 0.5};
    const GridFunction lhs =
        apply_H(fx.fs, linear_combination(ca, u, cb, v), false);
    const GridFunction rhs = linear_combination(
        ca, apply_H(fx.fs, u, false), cb, apply_H(fx.fs, v, false));
    for (std::size_t n = 0; n < lhs.values.size(); ++n)
        CHECK(std::abs(lhs.values[n] - rhs.values[n]) < 1e-10);
}

TEST_CASE("boundary contamination is rejected")
{
    const FieldSet fs = free_fields();
    const Grid2D g = make_grid(32, 32, -1.0, 1.0, -1.0, 1.0);
    const GridFunction flat =
        sample(g, [](double, double) { return cdouble{1.0, 0.0}; });
    CHECK_THROWS_AS(apply_H(fs, flat), BoundaryContaminationError);
    CHECK_NOTHROW(apply_H(fs, flat, false));
}

TEST_CASE("Larmor orbits close")
{
    const double om = 1.3;
    const Fn2 field = [om](double, double) { return om; };
    const Fn2 zero = [](double, double) { return 0.0; };
    ClassicalState s0;
    s0.vx = 0.9;
    const double period = 2.0 * M_PI / om;
    const auto path =
        classical_trajectory(field, zero, zero, s0, period / 4000.0, period);
    const ClassicalState end = path.back();
    CHECK(std::fabs(end.x - s0.x) < 1e-9);
    CHECK(std::fabs(end.y - s0.y) < 1e-9);
    CHECK(std::fabs(end.vx - s0.vx) < 1e-9);
    CHECK(std::fabs(end.vy - s0.vy) < 1e-9);
}

TEST_CASE("the first-order classical invariant vy + m(x) is conserved")
{
    const Fn2 field = [](double x, double) { return 2.0 * x; }; // m = x^2
    const Fn2 zero = [](double, double) { return 0.0; };
    ClassicalState s0;
    s0.x = 0.4;
    s0.vx = 0.3;
    s0.vy = -0.2;
    const auto path = classical_trajectory(field, zero, zero, s0, 1e-4, 3.0);
    const double c0 = s0.vy + s0.x * s0.x;
    for (std::size_t n = 0; n < path.size(); n += 500) {
        const ClassicalState& s = path[n];
        CHECK(std::fabs(s.vy + s.x * s.x - c0) < 1e-8);
    }
}

TEST_CASE("trajectory error scales as dt^4")
{
    const OscillatorFixture fx;
    ClassicalState s0;
    s0.x = 0.5;
    s0.vy = 0.4;
    const double T = 2.0;
    auto endpoint = [&](double dt) {
        return classical_trajectory(fx.fd.omega_field, fx.fd.w_x, fx.fd.w_y,
                                    s0, dt, T)
            .back();
    };
    const ClassicalState ref = endpoint(T / 16384.0);
    auto err = [&](double dt) {
        const ClassicalState e = endpoint(dt);
        return std::hypot(e.x - ref.x, e.y - ref.y);
    };
    const double ratio = err(T / 128.0) / err(T / 256.0);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}
