// Command-line front end: scenario configs in, reports + CSV out.
// Exit codes: 0 success, 1 invariant violation, 2 configuration error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsep/qsep.hpp"

using namespace qsep;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 12345;
    double hbar = 1.0;
};

Config load_config(const GlobalOpts& g)
{
    std::ifstream in(g.config_path);
    if (!in)
        throw ConfigParseError("cannot open config file: " + g.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return Config::parse(ss.str());
}

std::ofstream open_csv(const GlobalOpts& g, const std::string& name)
{
    if (g.out_dir.empty())
        throw ConfigParseError("this subcommand needs --out <dir>");
    std::filesystem::create_directories(g.out_dir);
    const std::string path = g.out_dir + "/" + name;
    std::ofstream out(path);
    if (!out)
        throw ConfigParseError("cannot open output file: " + path);
    return out;
}

/// Build one profile from a config section prefix (f_ or g_).
Profile make_profile(const Config& cfg, const std::string& section,
                     const std::string& pre, Axis axis)
{
    const std::string kind = cfg.get_string(section, pre + "case");
    const double t0 = cfg.get_double(section, pre + "t0", 0.0);
    if (kind == "linear")
        return Profile::linear(axis, cfg.get_double(section, pre + "slope"),
                               cfg.get_double(section, pre + "intercept", 0.0));
    if (kind == "quadratic")
        return Profile::quadratic(
            axis, cfg.get_double(section, pre + "cons"),
            cfg.get_double(section, pre + "slope", 0.0),
            cfg.get_double(section, pre + "intercept", 0.0));
    if (kind == "exponential")
        return Profile::exponential(axis,
                                    cfg.get_double(section, pre + "lin"),
                                    cfg.get_double(section, pre + "cons", 0.0),
                                    cfg.get_double(section, pre + "e1"),
                                    cfg.get_double(section, pre + "e2", 0.0));
    const double alpha = cfg.get_double(section, pre + "alpha");
    if (kind == "inverse")
        return Profile::inverse_power(
            axis, alpha, cfg.get_double(section, pre + "lin", 0.0), t0);
    if (kind == "trig" || kind == "tanh" || kind == "cotanh") {
        const double lin = cfg.get_double(section, pre + "lin", 0.0);
        const double cons = cfg.get_double(section, pre + "cons");
        if (kind == "trig")
            return Profile::trig(axis, alpha, lin, cons, t0);
        if (kind == "tanh")
            return Profile::tanh_sq(axis, alpha, lin, cons, t0);
        return Profile::cotanh_sq(axis, alpha, lin, cons, t0);
    }
    if (kind == "sn" || kind == "sn_inverse") {
        const auto r = cfg.get_list(section, pre + "roots");
        if (r.size() != 3)
            throw ConfigParseError("field `" + pre +
                                   "roots` must list three roots");
        return kind == "sn"
                   ? Profile::elliptic_sn(axis, alpha, r[0], r[1], r[2], t0)
                   : Profile::elliptic_sn_inverse(axis, alpha, r[0], r[1],
                                                  r[2], t0);
    }
    if (kind == "cn") {
        const auto r = cfg.get_list(section, pre + "roots");
        if (r.size() != 3)
            throw ConfigParseError("field `" + pre +
                                   "roots` must list root, Re, Im");
        return Profile::elliptic_cn(axis, alpha, r[0], r[1], r[2], t0);
    }
    throw ConfigParseError("field `" + pre + "case` has unknown value: " +
                           kind);
}

HarmonicSetup harmonic_from(const Config& cfg, double hbar)
{
    return HarmonicSetup(cfg.get_double("harmonic", "omega1"),
                         cfg.get_double("harmonic", "omega2"),
                         cfg.get_double("harmonic", "Omega0"), hbar);
}

const char* case_name(Theorem1Case c)
{
    switch (c) {
    case Theorem1Case::Case1_LinearG: return "Case1 (linear g, phi = -1)";
    case Theorem1Case::Case2_ExpG: return "Case2 (exponential g, phi = -1)";
    case Theorem1Case::Case3_Quadratic: return "Case3 (quadratic, constant phi)";
    case Theorem1Case::Case4_Tables: return "Case4 (table pairing)";
    default: return "NotQuasiseparable";
    }
}

int run_classify(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    const Profile f = make_profile(cfg, "profiles", "f_", Axis::X);
    const Profile gp = make_profile(cfg, "profiles", "g_", Axis::Y);
    CubicParams p;
    f.apply_to(p);
    gp.apply_to(p);
    p.mu = cfg.get_double("profiles", "mu", 0.0);
    const TheoremCase tc = classify(p, f, gp);
    std::printf("classification: %s\n", case_name(tc.tag));
    if (tc.tag == Theorem1Case::Case4_Tables) {
        std::printf("rows: F%d G%d\n", static_cast<int>(tc.row_f),
                    static_cast<int>(tc.row_g));
        const double k = cfg.get_double("profiles", "k", -1.0);
        const SeparationConstants sc =
            case4_constants(f, gp, tc.row_f, tc.row_g, k);
        std::printf("k = %s  c1 = %s  c2 = %s\n", format_g17(sc.k).c_str(),
                    format_g17(sc.c1).c_str(), format_g17(sc.c2).c_str());
        std::printf("eps1 = %d  eps2 = %d  N1 = %s  N2 = %s\n", sc.eps1,
                    sc.eps2, format_g17(sc.n1_const).c_str(),
                    format_g17(sc.n2_const).c_str());
    }
    return tc.tag == Theorem1Case::NotQuasiseparable ? 1 : 0;
}

int run_fields(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    const Profile f = make_profile(cfg, "profiles", "f_", Axis::X);
    const Profile gp = make_profile(cfg, "profiles", "g_", Axis::Y);
    CubicParams p;
    f.apply_to(p);
    gp.apply_to(p);
    p.mu = cfg.get_double("profiles", "mu", 0.0);
    const FieldData fd = build_fields(p, f, gp);

    const auto xs = cfg.get_list("fields", "x_samples");
    const auto ys = cfg.get_list("fields", "y_samples");
    std::ofstream out = open_csv(g, "fields.csv");
    out << "x,y,Omega,W,m,k1,k2\n";
    for (double y : ys)
        for (double x : xs)
            out << format_g17(x) << ',' << format_g17(y) << ','
                << format_g17(fd.omega_field(x, y)) << ','
                << format_g17(fd.w_eff(x, y)) << ','
                << format_g17(fd.data.m_fn(x, y)) << ','
                << format_g17(fd.data.k1_fn(x, y)) << ','
                << format_g17(fd.data.k2_fn(x, y)) << '\n';
    std::printf("fields.csv: %zu rows\n", xs.size() * ys.size());
    return 0;
}

int run_spectrum(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    const HarmonicSetup s = harmonic_from(cfg, g.hbar);
    const int nmax = cfg.get_int("harmonic", "nmax", 3);
    std::ofstream out = open_csv(g, "spectrum.csv");
    out << "n,index,energy,lambda\n";
    int rows = 0;
    for (int n = 0; n <= nmax; ++n) {
        int idx = 0;
        for (const HarmonicLevel& lvl : levels(s, n)) {
            out << n << ',' << idx++ << ',' << format_g17(lvl.energy) << ','
                << format_g17(lvl.lambda) << '\n';
            ++rows;
        }
    }
    std::printf("spectrum.csv: %d rows (blocks n = 0..%d)\n", rows, nmax);
    return 0;
}

int run_firstorder(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    CartesianFirstOrder c;
    const double omega = cfg.get_double("firstorder", "omega");
    c.m_profile = [omega](double x) { return omega * omega * x * x; };
    c.m_deriv = [omega](double x) { return 2.0 * omega * omega * x; };
    // vanishing scalar potential: W = -m^2/2
    c.w_profile = [omega](double x) {
        const double m = omega * omega * x * x;
        return -0.5 * m * m;
    };
    c.k = cfg.get_double("firstorder", "k");
    c.hbar = g.hbar;
    const int nmax = cfg.get_int("firstorder", "nmax", 5);
    const double a = cfg.get_double("firstorder", "xmin", -8.0);
    const double b = cfg.get_double("firstorder", "xmax", 8.0);
    const int grid_n = cfg.get_int("firstorder", "grid_n", 2000);

    const auto num = cartesian_spectrum(c, nmax + 1, a, b, grid_n);
    std::ofstream out = open_csv(g, "firstorder.csv");
    out << "n,exact,numeric,deviation\n";
    double worst = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        const double exact =
            cartesian_exact_hermite(omega, c.k, n, c.hbar).first;
        const double dev = std::fabs(num[n] - exact);
        worst = std::max(worst, dev);
        out << n << ',' << format_g17(exact) << ',' << format_g17(num[n])
            << ',' << format_g17(dev) << '\n';
    }
    std::printf("firstorder.csv: %d rows, max deviation %s\n", nmax + 1,
                format_g17(worst).c_str());
    const double tol = cfg.get_double("firstorder", "tolerance", 1e-6);
    if (worst > tol) {
        std::fprintf(stderr, "deviation exceeds tolerance %g\n", tol);
        return 1;
    }
    return 0;
}

int run_verify_commutator(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    const Profile f = make_profile(cfg, "profiles", "f_", Axis::X);
    const Profile gp = make_profile(cfg, "profiles", "g_", Axis::Y);
    CubicParams p;
    f.apply_to(p);
    gp.apply_to(p);
    p.mu = cfg.get_double("profiles", "mu", 0.0);
    const TheoremCase tc = classify(p, f, gp);
    if (tc.tag == Theorem1Case::NotQuasiseparable) {
        std::fprintf(stderr, "configuration is not quasiseparable\n");
        return 1;
    }
    SeparationConstants sc;
    if (tc.tag == Theorem1Case::Case4_Tables)
        sc = case4_constants(f, gp, tc.row_f, tc.row_g,
                             cfg.get_double("profiles", "k", -1.0));
    const FieldData fd = build_fields(p, f, gp);
    const FieldSet fs =
        make_field_set(g.hbar, fd, theorem1_gauge(tc.tag, p, f, gp, sc));

    const int n = cfg.get_int("commutator", "grid", 128);
    const auto box = cfg.get_list("commutator", "box");
    if (box.size() != 4)
        throw ConfigParseError(
            "field `box` must list [xmin, xmax, ymin, ymax]");
    const Grid2D grid = make_grid(n, n, box[0], box[1], box[2], box[3]);

    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> dc(-0.2, 0.2), dw(4.0, 8.0);
    const double cx = 0.5 * (box[0] + box[1]), cy = 0.5 * (box[2] + box[3]);
    std::vector<GridFunction> tests;
    for (int t = 0; t < cfg.get_int("commutator", "tests", 5); ++t) {
        const double x0 = cx + dc(rng), y0 = cy + dc(rng);
        const double w = dw(rng) / ((box[1] - box[0]) * (box[1] - box[0]));
        tests.push_back(sample(grid, [=](double x, double y) {
            return cdouble{std::exp(-w * ((x - x0) * (x - x0) +
                                          (y - y0) * (y - y0))) *
                               16.0,
                           0.0};
        }));
    }
    const OperatorAction ah = [&](const GridFunction& u) {
        return apply_H(fs, u, false);
    };
    const OperatorAction ax = [&](const GridFunction& u) {
        return apply_X_cartesian(fs, fd.data, u, false);
    };
    const double res = commutator_residual(ah, ax, tests);
    std::printf("%s\ncommutator residual: %s\n", case_name(tc.tag),
                format_g17(res).c_str());
    const double tol = cfg.get_double("commutator", "tolerance", 1e-4);
    if (res > tol) {
        std::fprintf(stderr, "residual exceeds tolerance %g\n", tol);
        return 1;
    }
    return 0;
}

int run_oracle_compare(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    const HarmonicSetup s = harmonic_from(cfg, g.hbar);
    const HarmonicCubic hc = harmonic_cubic(s);
    const FieldData fd = build_fields(hc.params, hc.fp, hc.gp);
    const FieldSet fs = make_field_set(
        g.hbar, fd,
        theorem1_gauge(Theorem1Case::Case3_Quadratic, hc.params, hc.fp,
                       hc.gp));

    const int nmax = cfg.get_int("oracle", "nmax", 1);
    const int count = cfg.get_int("oracle", "count", 4);
    const int n = cfg.get_int("oracle", "grid", 96);
    const double ext = cfg.get_double("oracle", "extent", 6.0);
    const double tol = cfg.get_double("oracle", "tolerance", 1e-2);

    std::vector<double> exact;
    for (int b = 0; b <= nmax; ++b)
        for (double e : spectrum(s, b))
            exact.push_back(e);
    std::sort(exact.begin(), exact.end());

    const Grid2D grid = make_grid(n, n, -ext, ext, -ext, ext);
    const DiscreteHamiltonian dh(fs, grid);
    const auto pairs = lowest_eigenpairs(dh, count, 1e-7, 60, g.seed);
    std::vector<double> numeric;
    for (const auto& pr : pairs)
        numeric.push_back(pr.value);

    const SpectrumComparison rep = compare_spectra(exact, numeric, tol);
    std::ofstream out = open_csv(g, "oracle.csv");
    out << "index,value,kind\n";
    for (std::size_t i = 0; i < exact.size(); ++i)
        out << i << ',' << format_g17(exact[i]) << ",exact\n";
    for (std::size_t i = 0; i < numeric.size(); ++i)
        out << i << ',' << format_g17(numeric[i]) << ",oracle\n";
    std::printf("max deviation %s, unmatched %zu\n",
                format_g17(rep.max_deviation).c_str(), rep.unmatched.size());
    return rep.unmatched.empty() ? 0 : 1;
}

int run_trajectory(const GlobalOpts& g)
{
    const Config cfg = load_config(g);
    const Profile f = make_profile(cfg, "profiles", "f_", Axis::X);
    const Profile gp = make_profile(cfg, "profiles", "g_", Axis::Y);
    CubicParams p;
    f.apply_to(p);
    gp.apply_to(p);
    p.mu = cfg.get_double("profiles", "mu", 0.0);
    const FieldData fd = build_fields(p, f, gp);

    ClassicalState s0;
    const auto init = cfg.get_list("trajectory", "initial");
    if (init.size() != 4)
        throw ConfigParseError("field `initial` must list [x, y, vx, vy]");
    s0.x = init[0];
    s0.y = init[1];
    s0.vx = init[2];
    s0.vy = init[3];
    const double dt = cfg.get_double("trajectory", "dt");
    const double T = cfg.get_double("trajectory", "time");
    const int stride = cfg.get_int("trajectory", "stride", 1);

    const auto path =
        classical_trajectory(fd.omega_field, fd.w_x, fd.w_y, s0, dt, T);
    std::ofstream out = open_csv(g, "trajectory.csv");
    out << "t,x,y,vx,vy,energy\n";
    for (std::size_t i = 0; i < path.size(); i += stride) {
        const ClassicalState& c = path[i];
        const double e =
            0.5 * (c.vx * c.vx + c.vy * c.vy) + fd.w_eff(c.x, c.y);
        out << format_g17(c.t) << ',' << format_g17(c.x) << ','
            << format_g17(c.y) << ',' << format_g17(c.vx) << ','
            << format_g17(c.vy) << ',' << format_g17(e) << '\n';
    }
    std::printf("trajectory.csv: %zu rows\n",
                (path.size() + stride - 1) / stride);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quasiseparable magnetic Hamiltonians"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "scenario config file")
        ->required();
    app.add_option("--out", g.out_dir, "output directory for CSV files");
    app.add_option("--seed", g.seed, "seed for randomized sweeps");
    app.add_option("--hbar", g.hbar, "Planck constant");

    int (*runner)(const GlobalOpts&) = nullptr;
    const std::vector<std::pair<const char*, int (*)(const GlobalOpts&)>>
        commands = {
            {"classify", run_classify},
            {"fields", run_fields},
            {"spectrum", run_spectrum},
            {"firstorder", run_firstorder},
            {"verify-commutator", run_verify_commutator},
            {"oracle-compare", run_oracle_compare},
            {"trajectory", run_trajectory},
        };
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough(); // global flags may follow the subcommand
        sub->callback([&runner, fn = fn] { runner = fn; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return runner(g);
    } catch (const ConfigParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
