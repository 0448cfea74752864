#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>
#include <utility>
#include <limits>
#include <string>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/jacobi.hpp"
#include "qsep/params.hpp"

namespace qsep {

enum class Axis { X, Y };

enum class ProfileCase {
    Linear,
    Quadratic,
    Exponential,
    InversePowerA,
    TrigB,
    TanhC,
    CotanhD,
    EllipticSnE,
    EllipticSnF,
    EllipticCnG,
};

inline std::string to_string(ProfileCase c)
{
    switch (c) {
    case ProfileCase::Linear: return "linear";
    case ProfileCase::Quadratic: return "quadratic";
    case ProfileCase::Exponential: return "exponential";
    case ProfileCase::InversePowerA: return "inverse_a";
    case ProfileCase::TrigB: return "trig_b";
    case ProfileCase::TanhC: return "tanh_c";
    case ProfileCase::CotanhD: return "cotanh_d";
    case ProfileCase::EllipticSnE: return "sn_e";
    case ProfileCase::EllipticSnF: return "sn_f";
    case ProfileCase::EllipticCnG: return "cn_g";
    }
    return "?";
}

/// Value and first three derivatives of a profile at a point.
struct ProfileEval {
    double value;
    double d1;
    double d2;
    double d3;
};

/// One profile function: f(x) solving f'' = alpha f^2 + beta f + gamma on the
/// X axis, or g(y) solving g'' = -alpha g^2 + delta g + xi on the Y axis.
///
/// Internally every nonlinear case is stored in a single normal form
/// h'' = a h^2 + b h + c with a > 0; the Y axis (and a sign-flipped X axis)
/// is recovered through value = -h.  The degenerate families (a = 0) need no
/// flip and are stored directly.
class Profile {
public:
    // ----- degenerate families (alpha = 0) -----

    /// value = slope*t + intercept; requires beta(delta) = gamma(xi) = 0.
    static Profile linear(Axis axis, double slope, double intercept)
    {
        Profile p(axis, ProfileCase::Linear, 0.0, 0.0, 0.0, false);
        p.coef0_ = intercept;
        p.coef1_ = slope;
        p.sigma_ = slope * slope;
        return p;
    }

    /// value = cons*t^2/2 + slope*t + intercept, where cons is gamma (X) or
    /// xi (Y); requires beta(delta) = 0.
    static Profile quadratic(Axis axis, double cons, double slope = 0.0,
                             double intercept = 0.0)
    {
        Profile p(axis, ProfileCase::Quadratic, 0.0, 0.0, cons, false);
        p.coef0_ = intercept;
        p.coef1_ = slope;
        p.sigma_ = slope * slope - 2.0 * cons * intercept;
        p.ax_c_ = cons;
        return p;
    }

    /// value = e1 exp(sqrt(lin) t) + e2 exp(-sqrt(lin) t) - cons/lin with
    /// lin = beta (X) or delta (Y) > 0, cons = gamma or xi.
    static Profile exponential(Axis axis, double lin, double cons, double e1,
                               double e2)
    {
        if (lin <= 0.0)
            throw InvalidCaseError("exponential profile needs beta (delta) > 0");
        Profile p(axis, ProfileCase::Exponential, 0.0, lin, cons, false);
        p.coef0_ = e1;
        p.coef1_ = e2;
        p.sigma_ = cons * cons / lin - 4.0 * lin * e1 * e2;
        p.ax_b_ = lin;
        p.ax_c_ = cons;
        return p;
    }

    // ----- multiple-root catalogue (alpha != 0) -----

    /// Case (a): triple root.  value = r1 + 6 sgn/(a (t-t0)^2) in the normal
    /// form; gamma (xi) is implied by the triple-root constraint.
    static Profile inverse_power(Axis axis, double alpha, double lin, double t0)
    {
        auto [a, b, neg] = normalize(axis, alpha, lin);
        Profile p(axis, ProfileCase::InversePowerA, a, b, b * b / (4.0 * a), neg);
        p.t0_ = t0;
        const double r1 = -b / (2.0 * a);
        p.hroots_ = {r1, r1, r1};
        p.finish_from_roots(alpha, lin);
        return p;
    }

    /// Case (b): double root below a simple root; value = r1 + (r3-r1)/sin^2.
    static Profile trig(Axis axis, double alpha, double lin, double cons,
                        double t0, double omega_check = 0.0)
    {
        auto [a, b, c, neg] = normalize3(axis, alpha, lin, cons);
        const double disc = b * b - 4.0 * a * c;
        if (disc <= 0.0)
            throw InvalidCaseError("trig profile needs beta^2 - 4 alpha gamma > 0");
        Profile p(axis, ProfileCase::TrigB, a, b, c, neg);
        p.t0_ = t0;
        const double sq = std::sqrt(disc);
        const double r1 = (-b - sq) / (2.0 * a);
        p.omega_ = std::sqrt(sq) / 2.0;
        p.hroots_ = {r1, r1, r1 + 6.0 * p.omega_ * p.omega_ / a};
        p.finish_from_roots(alpha, lin);
        p.check_omega(omega_check);
        return p;
    }

    /// Case (c): simple root below a double root; value interpolates with tanh^2.
    static Profile tanh_sq(Axis axis, double alpha, double lin, double cons,
                           double t0, double omega_check = 0.0)
    {
        auto [a, b, c, neg] = normalize3(axis, alpha, lin, cons);
        const double disc = b * b - 4.0 * a * c;
        if (disc <= 0.0)
            throw InvalidCaseError("tanh profile needs beta^2 - 4 alpha gamma > 0");
        Profile p(axis, ProfileCase::TanhC, a, b, c, neg);
        p.t0_ = t0;
        const double sq = std::sqrt(disc);
        const double r1 = (-b - 2.0 * sq) / (2.0 * a);
        p.omega_ = std::sqrt(sq) / 2.0;
        const double r3 = r1 + 6.0 * p.omega_ * p.omega_ / a;
        p.hroots_ = {r1, r3, r3};
        p.finish_from_roots(alpha, lin);
        p.check_omega(omega_check);
        return p;
    }

    /// Case (d): same roots as (c) but on the 1/tanh^2 branch above the
    /// double root.
    static Profile cotanh_sq(Axis axis, double alpha, double lin, double cons,
                             double t0, double omega_check = 0.0)
    {
        Profile p = tanh_sq(axis, alpha, lin, cons, t0, omega_check);
        p.case_ = ProfileCase::CotanhD;
        return p;
    }

    /// Case (e): three distinct roots, bounded branch r1 <= value <= r2.
    /// Roots are given in the axis convention (f-roots or g-roots).
    static Profile elliptic_sn(Axis axis, double alpha, double r1, double r2,
                               double r3, double t0, double omega_check = 0.0)
    {
        return elliptic(ProfileCase::EllipticSnE, axis, alpha, r1, r2, r3, t0,
                        omega_check);
    }

    /// Case (f): three distinct roots, unbounded branch value >= r3.
    static Profile elliptic_sn_inverse(Axis axis, double alpha, double r1,
                                       double r2, double r3, double t0,
                                       double omega_check = 0.0)
    {
        return elliptic(ProfileCase::EllipticSnF, axis, alpha, r1, r2, r3, t0,
                        omega_check);
    }

    /// Case (g): one real root plus the complex pair p +/- iq (axis
    /// convention).
    static Profile elliptic_cn(Axis axis, double alpha, double r1, double pre,
                               double qim, double t0)
    {
        if (qim <= 0.0)
            throw InvalidCaseError("cn profile needs a genuine complex pair (q > 0)");
        const double sgn = (axis == Axis::X) ? 1.0 : -1.0;
        const double a0 = sgn * alpha;
        if (a0 == 0.0)
            throw InvalidCaseError("cn profile needs alpha != 0");
        const bool neg = a0 < 0.0;
        const double a = std::fabs(a0);
        const double h1 = neg ? -r1 : r1;
        const double hp = neg ? -pre : pre;

        const double amp = std::hypot(hp - h1, qim);
        Profile p(axis, ProfileCase::EllipticCnG, a,
                  -(2.0 * a / 3.0) * (h1 + 2.0 * hp),
                  (a / 3.0) * (2.0 * h1 * hp + hp * hp + qim * qim), neg);
        p.t0_ = t0;
        p.hroots_ = {h1, hp, qim}; // real root, Re, Im of the pair
        p.amp_ = amp;
        p.omega_ = std::sqrt(2.0 * a * amp / 3.0); // the rho of the cn argument
        p.modulus_ = std::sqrt((amp - h1 + hp) / (2.0 * amp));
        p.quarter_ = elliptic_k(p.modulus_);
        p.sigma_ = -(2.0 * a / 3.0) * h1 * (hp * hp + qim * qim);
        p.ax_alpha_ = alpha;
        p.ax_b_ = p.b_; // quadratic coefficient is even under the flip
        p.ax_c_ = neg ? -p.c_ : p.c_;
        return p;
    }

    // ----- evaluation -----

    ProfileEval eval(double t) const
    {
        guard(t);
        double h, d1, s2;
        const double s = t - t0_;
        switch (case_) {
        case ProfileCase::Linear:
            h = coef1_ * t + coef0_;
            d1 = coef1_;
            break;
        case ProfileCase::Quadratic:
            h = 0.5 * c_ * t * t + coef1_ * t + coef0_;
            d1 = c_ * t + coef1_;
            break;
        case ProfileCase::Exponential: {
            const double e = std::exp(std::sqrt(b_) * t);
            h = coef0_ * e + coef1_ / e - c_ / b_;
            d1 = std::sqrt(b_) * (coef0_ * e - coef1_ / e);
            break;
        }
        case ProfileCase::InversePowerA:
            h = hroots_[0] + 6.0 / (a_ * s * s);
            d1 = -12.0 / (a_ * s * s * s);
            break;
        case ProfileCase::TrigB: {
            const double sn = std::sin(omega_ * s);
            const double span = hroots_[2] - hroots_[0];
            h = hroots_[0] + span / (sn * sn);
            d1 = -2.0 * omega_ * span * std::cos(omega_ * s) / (sn * sn * sn);
            break;
        }
        case ProfileCase::TanhC: {
            const double th = std::tanh(omega_ * s);
            const double span = hroots_[2] - hroots_[0];
            h = hroots_[0] + span * th * th;
            const double sech = 1.0 / std::cosh(omega_ * s);
            d1 = 2.0 * omega_ * span * th * sech * sech;
            break;
        }
        case ProfileCase::CotanhD: {
            const double sh = std::sinh(omega_ * s);
            const double span = hroots_[2] - hroots_[0];
            h = hroots_[0] + span * (1.0 + 1.0 / (sh * sh));
            d1 = -2.0 * omega_ * span * std::cosh(omega_ * s) / (sh * sh * sh);
            break;
        }
        case ProfileCase::EllipticSnE: {
            const auto j = jacobi_sn_cn_dn(omega_ * s, modulus_);
            const double span = hroots_[1] - hroots_[0];
            h = hroots_[0] + span * j.sn * j.sn;
            d1 = 2.0 * omega_ * span * j.sn * j.cn * j.dn;
            break;
        }
        case ProfileCase::EllipticSnF: {
            const auto j = jacobi_sn_cn_dn(omega_ * s, modulus_);
            const double span = hroots_[2] - hroots_[0];
            h = hroots_[0] + span / (j.sn * j.sn);
            d1 = -2.0 * omega_ * span * j.cn * j.dn / (j.sn * j.sn * j.sn);
            break;
        }
        case ProfileCase::EllipticCnG: {
            const auto j = jacobi_sn_cn_dn(omega_ * s, modulus_);
            const double den = 1.0 + j.cn;
            h = hroots_[0] + amp_ * (1.0 - j.cn) / den;
            d1 = 2.0 * amp_ * omega_ * j.sn * j.dn / (den * den);
            break;
        }
        default:
            throw InvalidCaseError("unknown profile case");
        }
        s2 = a_ * h * h + b_ * h + c_;
        const double s3 = (2.0 * a_ * h + b_) * d1;
        const double sv = negate_ ? -1.0 : 1.0;
        return {sv * h, sv * d1, sv * s2, sv * s3};
    }

    double value(double t) const { return eval(t).value; }

    // ----- excluded set -----

    /// Distance from t to the nearest singular point; +inf for pole-free cases.
    double excluded_distance(double t) const
    {
        const double s = t - t0_;
        switch (case_) {
        case ProfileCase::InversePowerA:
        case ProfileCase::CotanhD:
            return std::fabs(s);
        case ProfileCase::TrigB: {
            const double period = M_PI / omega_;
            return dist_to_lattice(s, period);
        }
        case ProfileCase::EllipticSnF:
            return dist_to_lattice(s, 2.0 * quarter_ / omega_);
        case ProfileCase::EllipticCnG: {
            // cn = -1 at rho s = 2K mod 4K
            const double period = 4.0 * quarter_ / omega_;
            return dist_to_lattice(s - 0.5 * period, period);
        }
        default:
            return std::numeric_limits<double>::infinity();
        }
    }

    // ----- accessors -----

    Axis axis() const { return axis_; }
    ProfileCase case_tag() const { return case_; }
    bool negated() const { return negate_; }
    double t0() const { return t0_; }
    double omega() const { return omega_; }
    double modulus() const { return modulus_; }
    double sigma() const { return sigma_; }
    double pole_guard() const { return pole_guard_; }
    void set_pole_guard(double g) { pole_guard_ = g; }

    /// Equation constants in the axis convention: {alpha, beta, gamma} for X,
    /// {alpha, delta, xi} for Y.
    std::array<double, 3> axis_constants() const
    {
        return {ax_alpha_, ax_b_, ax_c_};
    }

    /// Roots of the first-integral cubic in the axis convention, ascending.
    /// For the cn case: {real root, Re pair, Im pair}.
    std::array<double, 3> roots() const
    {
        if (case_ == ProfileCase::EllipticCnG) {
            const double sv = negate_ ? -1.0 : 1.0;
            return {sv * hroots_[0], sv * hroots_[1], hroots_[2]};
        }
        if (negate_)
            return {-hroots_[2], -hroots_[1], -hroots_[0]};
        return hroots_;
    }

    /// Roots of the internal normal form (always the positive-alpha branch).
    std::array<double, 3> normal_form_roots() const { return hroots_; }

    /// Case-specific coefficients: {intercept, slope} for linear/quadratic,
    /// {e1, e2} for the exponential family.
    std::pair<double, double> coefficients() const { return {coef0_, coef1_}; }

    /// Fill the axis-appropriate slots of a CubicParams.
    void apply_to(CubicParams& p) const
    {
        if (axis_ == Axis::X) {
            p.alpha = ax_alpha_;
            p.beta = ax_b_;
            p.gamma = ax_c_;
            p.sigma1 = sigma_;
        } else {
            p.alpha = ax_alpha_;
            p.delta = ax_b_;
            p.xi = ax_c_;
            p.sigma2 = sigma_;
        }
    }

    /// A pole-free open interval on which the profile's first derivative has
    /// the requested sign throughout.
    std::pair<double, double> monotone_window(bool positive_slope = true) const
    {
        // Work out the window for the internal h first (h' > 0 when the
        // axis derivative request matches the negation flag).
        const bool want_h_up = negate_ ? !positive_slope : positive_slope;
        double lo, hi;
        switch (case_) {
        case ProfileCase::Linear:
            return {t0_ - 2.0, t0_ + 2.0}; // slope is constant; caller beware
        case ProfileCase::Quadratic: {
            if (c_ == 0.0)
                return {t0_ - 2.0, t0_ + 2.0};
            const double vtx = -coef1_ / c_;
            const bool right = (c_ > 0.0) == want_h_up;
            return right ? std::pair{vtx + 0.3, vtx + 2.5}
                         : std::pair{vtx - 2.5, vtx - 0.3};
        }
        case ProfileCase::Exponential: {
            // h' = sqrt(b)(e1 E - e2/E): monotone beyond the turning point.
            const double rb = std::sqrt(b_);
            double tc = 0.0;
            if (coef0_ != 0.0 && coef1_ != 0.0 &&
                coef0_ * coef1_ > 0.0)
                tc = std::log(std::fabs(coef1_ / coef0_)) / (2.0 * rb);
            const bool up_right = coef0_ > 0.0 || (coef0_ == 0.0 && coef1_ < 0.0);
            const bool right = up_right == want_h_up;
            return right ? std::pair{tc + 0.2 / rb, tc + 2.0 / rb}
                         : std::pair{tc - 2.0 / rb, tc - 0.2 / rb};
        }
        case ProfileCase::InversePowerA:
            lo = want_h_up ? -2.5 : 0.4;
            hi = want_h_up ? -0.4 : 2.5;
            break;
        case ProfileCase::TrigB: {
            const double w = omega_;
            if (want_h_up) {
                lo = (0.5 * M_PI + 0.1) / w;
                hi = (M_PI - 0.25) / w;
            } else {
                lo = 0.15 / w;
                hi = (0.5 * M_PI - 0.1) / w;
            }
            break;
        }
        case ProfileCase::TanhC:
            lo = want_h_up ? 0.2 / omega_ : -2.5 / omega_;
            hi = want_h_up ? 2.5 / omega_ : -0.2 / omega_;
            break;
        case ProfileCase::CotanhD:
            lo = want_h_up ? -2.5 / omega_ : 0.2 / omega_;
            hi = want_h_up ? -0.2 / omega_ : 2.5 / omega_;
            break;
        case ProfileCase::EllipticSnE: {
            const double kq = quarter_ / omega_;
            lo = want_h_up ? 0.1 * kq : 1.1 * kq;
            hi = want_h_up ? 0.9 * kq : 1.9 * kq;
            break;
        }
        case ProfileCase::EllipticSnF: {
            const double kq = quarter_ / omega_;
            lo = want_h_up ? 1.1 * kq : 0.1 * kq;
            hi = want_h_up ? 1.9 * kq : 0.9 * kq;
            break;
        }
        case ProfileCase::EllipticCnG: {
            const double kq = quarter_ / omega_;
            lo = want_h_up ? 0.1 * kq : -1.9 * kq;
            hi = want_h_up ? 1.9 * kq : -0.1 * kq;
            break;
        }
        default:
            throw InvalidCaseError("unknown profile case");
        }
        return {t0_ + lo, t0_ + hi};
    }

private:
    Profile(Axis axis, ProfileCase c, double a, double b, double cc, bool neg)
        : axis_(axis), case_(c), a_(a), b_(b), c_(cc), negate_(neg)
    {
        ax_alpha_ = 0.0;
        ax_b_ = b;
        ax_c_ = cc;
    }

    // Map axis-convention (alpha, lin) to the positive-a normal form.
    static std::tuple<double, double, bool> normalize(Axis axis, double alpha,
                                                      double lin)
    {
        const double a0 = (axis == Axis::X) ? alpha : -alpha;
        if (a0 == 0.0)
            throw InvalidCaseError("catalogue case needs alpha != 0");
        if (a0 < 0.0)
            return {-a0, lin, true};
        return {a0, lin, false};
    }

    static std::tuple<double, double, double, bool> normalize3(Axis axis,
                                                               double alpha,
                                                               double lin,
                                                               double cons)
    {
        auto [a, b, neg] = normalize(axis, alpha, lin);
        return {a, b, neg ? -cons : cons, neg};
    }

    static Profile elliptic(ProfileCase tag, Axis axis, double alpha, double r1,
                            double r2, double r3, double t0, double omega_check)
    {
        const double sgn = (axis == Axis::X) ? 1.0 : -1.0;
        const double a0 = sgn * alpha;
        if (a0 == 0.0)
            throw InvalidCaseError("elliptic case needs alpha != 0");
        const bool neg = a0 < 0.0;
        const double a = std::fabs(a0);
        double h1 = r1, h2 = r2, h3 = r3;
        if (neg) {
            h1 = -r3;
            h2 = -r2;
            h3 = -r1;
        }
        if (!(h1 < h2 && h2 < h3))
            throw InvalidCaseError("elliptic case needs three distinct ordered roots");

        Profile p(axis, tag, a, -(2.0 * a / 3.0) * (h1 + h2 + h3),
                  (a / 3.0) * (h1 * h2 + h1 * h3 + h2 * h3), neg);
        p.t0_ = t0;
        p.hroots_ = {h1, h2, h3};
        p.omega_ = std::sqrt(a * (h3 - h1) / 6.0);
        p.modulus_ = std::sqrt((h2 - h1) / (h3 - h1));
        p.quarter_ = elliptic_k(p.modulus_);
        p.finish_from_roots(alpha, p.b_);
        p.check_omega(omega_check);
        return p;
    }

    void finish_from_roots(double alpha_axis, double /*lin*/)
    {
        sigma_ = -(2.0 * a_ / 3.0) * hroots_[0] * hroots_[1] * hroots_[2];
        ax_alpha_ = alpha_axis;
        ax_b_ = b_; // quadratic coefficient is even under value -> -value
        ax_c_ = negate_ ? -c_ : c_;
    }

    void check_omega(double omega_check) const
    {
        if (omega_check != 0.0 &&
            std::fabs(omega_check - omega_) >
                1e-9 * std::max(1.0, std::fabs(omega_)))
            throw InvalidCaseError(
                "frequency inconsistent with roots: expected omega = " +
                std::to_string(omega_));
    }

    void guard(double t) const
    {
        if (!std::isfinite(t))
            throw DomainViolationError("profile evaluated at non-finite point");
        if (excluded_distance(t) < pole_guard_)
            throw SingularPointError("profile evaluated within guard distance of a pole");
    }

    static double dist_to_lattice(double s, double period)
    {
        const double r = std::fabs(std::remainder(s, period));
        return r;
    }

    Axis axis_;
    ProfileCase case_;
    double a_, b_, c_;    // normal form h'' = a h^2 + b h + c
    bool negate_;         // value = -h
    double ax_alpha_ = 0.0, ax_b_ = 0.0, ax_c_ = 0.0; // axis convention
    double t0_ = 0.0;
    double omega_ = 0.0;
    double modulus_ = 0.0;
    double quarter_ = 0.0; // K(modulus)
    double amp_ = 0.0;     // |r1 - (p + iq)| for the cn case
    double coef0_ = 0.0, coef1_ = 0.0;
    std::array<double, 3> hroots_{0.0, 0.0, 0.0};
    double sigma_ = 0.0;
    double pole_guard_ = 1e-6;
};

/// Max ODE residual and max first-integral residual of a profile against the
/// axis-appropriate equations of `params`, over the sample points.
inline std::pair<double, double> profile_residuals(
    const Profile& p, const CubicParams& params,
    const std::vector<double>& sample_points)
{
    const bool x = p.axis() == Axis::X;
    const double al = x ? params.alpha : -params.alpha;
    const double b = x ? params.beta : params.delta;
    const double c = x ? params.gamma : params.xi;
    const double sig = x ? params.sigma1 : params.sigma2;
    double rode = 0.0, rint = 0.0;
    for (double t : sample_points) {
        const ProfileEval e = p.eval(t);
        const double v = e.value;
        rode = std::max(rode, std::fabs(e.d2 - (al * v * v + b * v + c)));
        const double cubic = (2.0 * al / 3.0) * v * v * v + b * v * v +
                             2.0 * c * v + sig;
        rint = std::max(rint, std::fabs(e.d1 * e.d1 - cubic));
    }
    return {rode, rint};
}

} // namespace qsep
