#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/fields.hpp"
#include "qsep/params.hpp"
#include "qsep/profile.hpp"

namespace qsep {

enum class TableRowF { None, F1, F2, F3, F4 };
enum class TableRowG { None, G1, G2, G3, G4 };

enum class PhiKind { ConstantMinusOne, ConstantRatio, SeparableRatio };

struct TheoremCase {
    Theorem1Case tag = Theorem1Case::NotQuasiseparable;
    TableRowF row_f = TableRowF::None;
    TableRowG row_g = TableRowG::None;
    PhiKind phi_kind = PhiKind::ConstantMinusOne;
};

/// Does g satisfy g''^2 - g' g''' = 0 identically?  Decided symbolically by
/// case tag: linear, or single-term exponential.
inline bool check_phi_minus_one(const Profile& gp)
{
    switch (gp.case_tag()) {
    case ProfileCase::Linear:
        return true;
    case ProfileCase::Exponential: {
        const auto [e1, e2] = gp.coefficients();
        return e1 == 0.0 || e2 == 0.0;
    }
    default:
        return false;
    }
}

namespace detail {

inline TableRowF table_row_f(const Profile& fp)
{
    if (fp.negated())
        return TableRowF::None; // tables assume the alpha > 0 branch
    switch (fp.case_tag()) {
    case ProfileCase::InversePowerA: return TableRowF::F1;
    case ProfileCase::TrigB: return TableRowF::F2;
    case ProfileCase::TanhC: return TableRowF::F3;
    case ProfileCase::CotanhD: return TableRowF::F4;
    default: return TableRowF::None;
    }
}

inline TableRowG table_row_g(const Profile& gp)
{
    if (!gp.negated())
        return TableRowG::None;
    // the internal normal form of g is an f-type case; the mirror pairing is
    // fixed by the substitution g -> -h
    switch (gp.case_tag()) {
    case ProfileCase::InversePowerA: return TableRowG::G1;
    case ProfileCase::CotanhD: return TableRowG::G2;
    case ProfileCase::TanhC: return TableRowG::G3;
    case ProfileCase::TrigB: return TableRowG::G4;
    default: return TableRowG::None;
    }
}

} // namespace detail

/// Identify the Theorem-1 case of a (params, f, g) configuration.
inline TheoremCase classify(const CubicParams& p, const Profile& fp,
                            const Profile& gp)
{
    TheoremCase out;
    if (p.alpha == 0.0) {
        if (p.delta == 0.0 && p.xi == 0.0 &&
            gp.case_tag() == ProfileCase::Linear) {
            out.tag = Theorem1Case::Case1_LinearG;
            out.phi_kind = PhiKind::ConstantMinusOne;
            return out;
        }
        if (p.delta > 0.0 && gp.case_tag() == ProfileCase::Exponential &&
            check_phi_minus_one(gp)) {
            out.tag = Theorem1Case::Case2_ExpG;
            out.phi_kind = PhiKind::ConstantMinusOne;
            return out;
        }
        if (p.beta == 0.0 && p.delta == 0.0 && p.gamma * p.xi < 0.0 &&
            fp.case_tag() == ProfileCase::Quadratic &&
            gp.case_tag() == ProfileCase::Quadratic) {
            out.tag = Theorem1Case::Case3_Quadratic;
            out.phi_kind = PhiKind::ConstantRatio;
            return out;
        }
        out.tag = Theorem1Case::NotQuasiseparable;
        return out;
    }
    const TableRowF rf = detail::table_row_f(fp);
    const TableRowG rg = detail::table_row_g(gp);
    if (rf != TableRowF::None && rg != TableRowG::None) {
        out.tag = Theorem1Case::Case4_Tables;
        out.row_f = rf;
        out.row_g = rg;
        out.phi_kind = PhiKind::SeparableRatio;
        return out;
    }
    out.tag = Theorem1Case::NotQuasiseparable;
    return out;
}

/// Is the (F_i, G_j) pairing an eps1 = eps2 pairing?  (Otherwise
/// eps1 = -eps2.)
inline bool eps_equal_pairing(TableRowF rf, TableRowG rg)
{
    if (rf == TableRowF::F3)
        return rg != TableRowG::G3;
    return rg == TableRowG::G3;
}

/// Table values of c1, c2, eps1/eps2 and the predicted N1, N2 for a Case-4
/// row pairing.  Requires k*alpha < 0 so the table square root is real.
inline SeparationConstants case4_constants(const Profile& fp,
                                           const Profile& gp, TableRowF rf,
                                           TableRowG rg, double k)
{
    if (k == 0.0)
        throw NotQuasiseparableError("table case needs k != 0");
    const double alpha = fp.axis_constants()[0];
    if (k * alpha > 0.0)
        throw DomainViolationError("table N2 needs k*alpha < 0");

    SeparationConstants sc;
    sc.k = k;
    const auto fr = fp.roots();
    const auto gr = gp.roots();
    switch (rf) {
    case TableRowF::F1:
    case TableRowF::F3:
    case TableRowF::F4: sc.c1 = 2.0 * k * fr[0]; break;
    case TableRowF::F2: sc.c1 = 2.0 * k * fr[2]; break;
    default: throw InvalidCaseError("f profile is not a table row");
    }
    switch (rg) {
    case TableRowG::G1:
    case TableRowG::G2:
    case TableRowG::G3: sc.c2 = -2.0 * k * gr[2]; break;
    case TableRowG::G4: sc.c2 = -2.0 * k * gr[0]; break;
    default: throw InvalidCaseError("g profile is not a table row");
    }
    sc.eps2 = 1;
    sc.eps1 = eps_equal_pairing(rf, rg) ? sc.eps2 : -sc.eps2;

    const double base = 0.5 * k * std::sqrt(-k * alpha / 3.0);
    sc.n2_const = (rf == TableRowF::F3 ? -1.0 : 1.0) * sc.eps2 * base;
    sc.n1_const = 8.0 * sc.eps2 * sc.n2_const / (k * sc.eps1);
    return sc;
}

/// Pointwise left-hand sides of the four constancy conditions.
struct SeparationSamples {
    std::vector<double> n1_f, n1_g; // from the f- and g-side conditions
    std::vector<double> n2_f, n2_g;
    double max_deviation = 0.0; // largest |sample - mean| over the four lists
};

namespace detail {

inline double radicand_f(const Profile& fp, const SeparationConstants& sc,
                         double x)
{
    return sc.c1 - 2.0 * sc.k * fp.eval(x).value;
}

inline double radicand_g(const Profile& gp, const SeparationConstants& sc,
                         double y)
{
    return sc.c2 + 2.0 * sc.k * gp.eval(y).value;
}

inline double n1_f_point(const Profile& fp, const SeparationConstants& sc,
                         double x)
{
    const ProfileEval e = fp.eval(x);
    const double r = radicand_f(fp, sc, x);
    if (r <= 0.0)
        throw DomainViolationError("c1 - 2kf non-positive at sample");
    const double d2 = e.d1 * e.d1;
    const double schw = e.d2 * e.d2 - e.d1 * e.d3;
    const double num = sc.k * sc.k * d2 * d2 +
                       2.0 * sc.k * r * d2 * e.d2 + r * r * schw;
    return -sc.eps1 * num / (std::pow(r, 1.5) * std::pow(d2, 1.5));
}

inline double n1_g_point(const Profile& gp, const SeparationConstants& sc,
                         double y)
{
    const ProfileEval e = gp.eval(y);
    const double r = radicand_g(gp, sc, y);
    if (r <= 0.0)
        throw DomainViolationError("c2 + 2kg non-positive at sample");
    const double d2 = e.d1 * e.d1;
    const double schw = e.d2 * e.d2 - e.d1 * e.d3;
    const double num = sc.k * sc.k * d2 * d2 -
                       2.0 * sc.k * r * d2 * e.d2 + r * r * schw;
    return sc.eps2 * num / (std::pow(r, 1.5) * std::pow(d2, 1.5));
}

inline double n2_f_point(const Profile& fp, const SeparationConstants& sc,
                         double x)
{
    const ProfileEval e = fp.eval(x);
    const double r = radicand_f(fp, sc, x);
    if (r <= 0.0)
        throw DomainViolationError("c1 - 2kf non-positive at sample");
    const double d2 = e.d1 * e.d1;
    const double schw = e.d2 * e.d2 - e.d1 * e.d3;
    const double num = 2.0 * sc.k * sc.k * d2 * d2 +
                       sc.k * r * d2 * e.d2 - r * r * schw;
    return sc.k * sc.eps2 * num /
           (2.0 * std::pow(r, 1.5) * e.d1 * e.d1 * e.d1);
}

inline double n2_g_point(const Profile& gp, const SeparationConstants& sc,
                         double y)
{
    const ProfileEval e = gp.eval(y);
    const double r = radicand_g(gp, sc, y);
    if (r <= 0.0)
        throw DomainViolationError("c2 + 2kg non-positive at sample");
    const double d2 = e.d1 * e.d1;
    const double schw = e.d2 * e.d2 - e.d1 * e.d3;
    const double num = 2.0 * sc.k * sc.k * d2 * d2 -
                       sc.k * r * d2 * e.d2 - r * r * schw;
    return -sc.k * sc.eps1 * num /
           (2.0 * std::pow(r, 1.5) * e.d1 * e.d1 * e.d1);
}

inline double spread(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    double mean = 0.0;
    for (double s : v)
        mean += s;
    mean /= static_cast<double>(v.size());
    double dev = 0.0;
    for (double s : v)
        dev = std::max(dev, std::fabs(s - mean));
    return dev;
}

} // namespace detail

/// Evaluate the four constancy conditions over sample points on each axis.
inline SeparationSamples compute_N1_N2(const Profile& fp, const Profile& gp,
                                       const SeparationConstants& sc,
                                       const std::vector<double>& xs,
                                       const std::vector<double>& ys)
{
    SeparationSamples out;
    for (double x : xs) {
        out.n1_f.push_back(detail::n1_f_point(fp, sc, x));
        out.n2_f.push_back(detail::n2_f_point(fp, sc, x));
    }
    for (double y : ys) {
        out.n1_g.push_back(detail::n1_g_point(gp, sc, y));
        out.n2_g.push_back(detail::n2_g_point(gp, sc, y));
    }
    out.max_deviation = std::max(
        std::max(detail::spread(out.n1_f), detail::spread(out.n1_g)),
        std::max(detail::spread(out.n2_f), detail::spread(out.n2_g)));
    return out;
}

/// Maximal intervals inside [-extent, extent] on which both radicands stay
/// positive, scanned numerically on each axis.
inline std::pair<std::vector<std::pair<double, double>>,
                 std::vector<std::pair<double, double>>>
admissible_domain(const Profile& fp, const Profile& gp,
                  const SeparationConstants& sc, double extent = 10.0,
                  int scan_n = 4000)
{
    auto scan = [&](const Profile& p, bool is_f) {
        std::vector<std::pair<double, double>> ivals;
        const double h = 2.0 * extent / scan_n;
        bool open = false;
        double start = 0.0;
        for (int i = 0; i <= scan_n; ++i) {
            const double t = -extent + i * h;
            bool ok = false;
            if (p.excluded_distance(t) > p.pole_guard()) {
                const double r = is_f ? detail::radicand_f(p, sc, t)
                                      : detail::radicand_g(p, sc, t);
                ok = r > 0.0;
            }
            if (ok && !open) {
                open = true;
                start = t;
            } else if (!ok && open) {
                open = false;
                ivals.emplace_back(start, t - h);
            }
        }
        if (open)
            ivals.emplace_back(start, extent);
        return ivals;
    };
    auto xi = scan(fp, true);
    auto yi = scan(gp, false);
    if (xi.empty() || yi.empty())
        throw EmptyDomainError("no admissible interval within scan extent");
    return {xi, yi};
}

/// The separation multiplier phi at a point (Eq. of the ansatz); the k = 0
/// exponential/linear branch has phi = -1 identically.
inline double quasi_phi(const Profile& fp, const Profile& gp,
                        const SeparationConstants& sc, double x, double y)
{
    if (sc.k == 0.0)
        return -1.0;
    return detail::one_plus_phi(fp, gp, sc, x, y) - 1.0;
}

/// Separability diagnostics: pointwise constancy samples plus the analytic
/// mixed derivative of the cross term T(x,y).
struct SeparationDiagnostics {
    SeparationSamples samples;
    double max_mixed_T = 0.0;
};

/// The mixed partial d2T/dxdy at one point, from the closed forms of the
/// pointwise constancy expressions (it vanishes iff they are constant).
inline std::complex<double> mixed_T(const Profile& fp, const Profile& gp,
                                    const SeparationConstants& sc, double hbar,
                                    double x, double y)
{
    const ProfileEval fe = fp.eval(x);
    const ProfileEval ge = gp.eval(y);
    const double rf = detail::radicand_f(fp, sc, x);
    const double rg = detail::radicand_g(gp, sc, y);
    if (rf <= 0.0 || rg <= 0.0)
        throw DomainViolationError("radicand non-positive in mixed_T");
    const double re = fe.d1 * ge.d1 *
                      (detail::n1_f_point(fp, sc, x) -
                       detail::n1_g_point(gp, sc, y));
    const double im = hbar * std::fabs(fe.d1) * std::fabs(ge.d1) /
                      std::sqrt(rf * rg) *
                      (detail::n2_f_point(fp, sc, x) -
                       detail::n2_g_point(gp, sc, y));
    return {re, im};
}

inline SeparationDiagnostics separation_diagnostics(
    const Profile& fp, const Profile& gp, const SeparationConstants& sc,
    double hbar, const std::vector<double>& xs, const std::vector<double>& ys)
{
    SeparationDiagnostics d;
    d.samples = compute_N1_N2(fp, gp, sc, xs, ys);
    for (double x : xs)
        for (double y : ys)
            d.max_mixed_T =
                std::max(d.max_mixed_T, std::abs(mixed_T(fp, gp, sc, hbar, x, y)));
    return d;
}

} // namespace qsep
