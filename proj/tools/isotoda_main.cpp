// isotoda command-line tool: spectral invariants, the image set figure,
// Toda trajectories, monodromy, forbidden zones, the wonderful subdivision
// and Betti tables, over the shared-library C interface.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isotoda/isotoda.h"

using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
    throw CliError{code, message};
}

void check(isotoda_status st) {
    switch (st) {
        case ISOTODA_OK:
            return;
        case ISOTODA_ERR_ARGUMENT:
        case ISOTODA_ERR_CAP:
        case ISOTODA_ERR_NULL:
            fail(kExitValidation, isotoda_last_error());
        default:
            fail(kExitNumeric, isotoda_last_error());
    }
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kExitIo, "cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) fail(kExitIo, "error reading file: " + path);
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(kExitIo, "cannot open output file: " + out_path);
    out << content;
    if (!out.good()) fail(kExitIo, "error writing file: " + out_path);
}

// Optional config file mirroring the long flags; flags given on the command
// line win.
struct Defaults {
    double dt = 1e-3;
    double t_end = 10.0;
    double tol = -1.0;  // command-specific default when negative
    double grouping_tol = 1e-9;
    int terms = 20;
    int samples = 64;
    int stride = 1;
    int n = 0;
    int n_max = 6;
    std::string format;
    std::string out;
};

Defaults load_defaults(int argc, char** argv) {
    Defaults d;
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    }
    if (path.empty()) return d;
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object())
        fail(kExitValidation, "config file must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "dt") d.dt = value.get<double>();
        else if (key == "t_end") d.t_end = value.get<double>();
        else if (key == "tol") d.tol = value.get<double>();
        else if (key == "grouping_tol") d.grouping_tol = value.get<double>();
        else if (key == "terms") d.terms = value.get<int>();
        else if (key == "samples") d.samples = value.get<int>();
        else if (key == "stride") d.stride = value.get<int>();
        else if (key == "n") d.n = value.get<int>();
        else if (key == "n_max") d.n_max = value.get<int>();
        else if (key == "format") d.format = value.get<std::string>();
        else if (key == "out") d.out = value.get<std::string>();
        else fail(kExitValidation, "unknown config key: " + key);
    }
    return d;
}

struct SpectrumHandle {
    isotoda_spectrum* ptr = nullptr;
    ~SpectrumHandle() { isotoda_spectrum_free(ptr); }
};

struct MatrixHandle {
    isotoda_matrix* ptr = nullptr;
    MatrixHandle() = default;
    explicit MatrixHandle(isotoda_matrix* p) : ptr(p) {}
    MatrixHandle(const MatrixHandle&) = delete;
    MatrixHandle& operator=(const MatrixHandle&) = delete;
    MatrixHandle(MatrixHandle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    MatrixHandle& operator=(MatrixHandle&& o) noexcept {
        std::swap(ptr, o.ptr);
        return *this;
    }
    ~MatrixHandle() { isotoda_matrix_free(ptr); }
};

SpectrumHandle load_spectrum(const std::string& path) {
    SpectrumHandle h;
    check(isotoda_spectrum_from_json(read_file(path).c_str(), &h.ptr));
    return h;
}

MatrixHandle load_matrix(const std::string& path, int random_n, bool gauged) {
    if (path.empty()) {
        if (random_n < 3)
            fail(kExitValidation,
                 "no input file; pass --in FILE or --n N with ISOTODA_SEED set "
                 "for a random matrix");
        std::uint64_t seed = 1;
        if (const char* env = std::getenv("ISOTODA_SEED"))
            seed = std::strtoull(env, nullptr, 10);
        MatrixHandle h;
        check(isotoda_matrix_random(seed, random_n, gauged ? 1 : 0, &h.ptr));
        return h;
    }
    MatrixHandle h;
    check(isotoda_matrix_from_json(read_file(path).c_str(), &h.ptr));
    return h;
}

json analyze_json(const isotoda_invariants& inv) {
    int verdict = 0;
    check(isotoda_manifold_status(&inv, &verdict));
    int n_minus = 0, n_plus = 0, rank = 0;
    check(isotoda_orbit_descriptor(&inv, &n_minus, &n_plus, &rank));
    json j;
    j["n"] = inv.n;
    j["m"] = round12(inv.small_m);
    j["M"] = round12(inv.big_m);
    j["n_plus"] = inv.n_plus;
    j["n_minus"] = inv.n_minus;
    j["manifold"] = verdict ? "NotHomologyManifold" : "NoObstructionGenericSmooth";
    j["pi1_rank"] = rank;
    j["orbit_descriptor"] = {n_minus, n_plus, rank};
    return j;
}

int cmd_analyze(const std::string& in, double grouping_tol,
                const std::string& out) {
    SpectrumHandle s = load_spectrum(in);
    isotoda_invariants inv{};
    check(isotoda_spectrum_analyze(s.ptr, grouping_tol, &inv));
    write_output(out, analyze_json(inv).dump(2) + "\n");
    return 0;
}

std::string bset_svg(const isotoda_invariants& inv, int samples) {
    const double M = inv.big_m;
    const double m = inv.small_m;
    // Corner angle: the two parabola branches meet where tan^2(theta/2) = M/m.
    const double theta_c = 2.0 * std::atan(std::sqrt(M / m));
    const double corner_r = 0.25 * (M + m);
    const double ymax = corner_r * std::sin(theta_c);
    const double pad = 1.15;
    const double x0 = -0.25 * M * pad, x1 = 0.25 * m * pad;
    const double y1 = ymax * pad;

    auto radius = [&](double theta) {
        double r = 0.0;
        check(isotoda_bset_radius(&inv, theta, &r));
        return r;
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
        << "viewBox=\"" << fmt12(x0) << " " << fmt12(-y1) << " "
        << fmt12(x1 - x0) << " " << fmt12(2 * y1) << "\">\n";
    const double stroke = (x1 - x0) / 320.0;
    svg << "  <line x1=\"" << fmt12(x0) << "\" y1=\"0\" x2=\"" << fmt12(x1)
        << "\" y2=\"0\" stroke=\"#999999\" stroke-width=\"" << fmt12(stroke / 2)
        << "\"/>\n";
    svg << "  <line x1=\"0\" y1=\"" << fmt12(-y1) << "\" x2=\"0\" y2=\""
        << fmt12(y1) << "\" stroke=\"#999999\" stroke-width=\""
        << fmt12(stroke / 2) << "\"/>\n";

    auto arc = [&](double from, double to, const char* color) {
        std::ostringstream pts;
        for (int i = 0; i <= samples; ++i) {
            const double theta = from + (to - from) * i / samples;
            const double r = radius(theta);
            const double x = r * std::cos(theta);
            const double y = r * std::sin(theta);
            if (i) pts << " ";
            pts << fmt12(x) << "," << fmt12(-y);  // SVG y axis points down
        }
        svg << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"" << fmt12(stroke) << "\" points=\""
            << pts.str() << "\"/>\n";
    };
    arc(theta_c, 2.0 * M_PI - theta_c, "#1f4fd8");   // F_plus, M-branch (left)
    arc(-theta_c, theta_c, "#d82f1f");               // F_minus, m-branch (right)

    for (double sign : {1.0, -1.0}) {
        svg << "  <circle cx=\"" << fmt12(corner_r * std::cos(theta_c))
            << "\" cy=\"" << fmt12(-sign * corner_r * std::sin(theta_c))
            << "\" r=\"" << fmt12(stroke * 2) << "\" fill=\"#000000\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_bset(const std::string& in, int samples, const std::string& format,
             std::optional<double> z_re, std::optional<double> z_im, double tol,
             const std::string& out) {
    if (samples < 16) fail(kExitValidation, "--samples must be at least 16");
    SpectrumHandle s = load_spectrum(in);
    isotoda_invariants inv{};
    check(isotoda_spectrum_analyze(s.ptr, 1e-9, &inv));

    if (z_re || z_im) {
        int location = 0, fiber = -1;
        check(isotoda_bset_classify(&inv, z_re.value_or(0.0), z_im.value_or(0.0),
                                    tol, &location, &fiber));
        static const char* names[] = {"Interior", "BoundaryPlus", "BoundaryMinus",
                                      "Corner", "Outside"};
        json j;
        j["z"] = {round12(z_re.value_or(0.0)), round12(z_im.value_or(0.0))};
        j["location"] = names[location];
        if (fiber >= 0) j["fiber_dim"] = fiber;
        write_output(out, j.dump(2) + "\n");
        return 0;
    }

    if (format == "json") {
        json j;
        j["M"] = round12(inv.big_m);
        j["m"] = round12(inv.small_m);
        json arcs = json::array();
        for (int i = 0; i <= samples; ++i) {
            const double theta = 2.0 * M_PI * i / samples - M_PI;
            double r = 0.0;
            check(isotoda_bset_radius(&inv, theta, &r));
            arcs.push_back({round12(theta), round12(r)});
        }
        j["boundary"] = std::move(arcs);
        write_output(out, j.dump(2) + "\n");
        return 0;
    }
    write_output(out, bset_svg(inv, samples));
    return 0;
}

int cmd_toda(const std::string& in, int random_n, double t_end, double dt,
             double tol, int stride, const std::string& out) {
    MatrixHandle mat = load_matrix(in, random_n, false);
    int n = 0;
    check(isotoda_matrix_size(mat.ptr, &n));

    isotoda_trajectory* traj = nullptr;
    check(isotoda_toda_integrate(mat.ptr, t_end, dt, tol, stride, &traj));

    std::ostringstream csv;
    csv << "t";
    for (int i = 1; i <= n; ++i) csv << ",a" << i;
    for (int i = 1; i <= n; ++i) csv << ",re_b" << i << ",im_b" << i;
    csv << ",drift_spectrum,drift_abs_b,drift_arg_b\n";

    int steps = 0;
    check(isotoda_trajectory_steps(traj, &steps));
    std::vector<double> a(n), b(2 * n);
    for (int i = 0; i < steps; ++i) {
        double t = 0.0, ds = 0.0, db = 0.0, da = 0.0;
        check(isotoda_trajectory_time(traj, i, &t));
        check(isotoda_trajectory_state(traj, i, a.data(), b.data()));
        check(isotoda_trajectory_drift(traj, i, &ds, &db, &da));
        csv << fmt12(t);
        for (int k = 0; k < n; ++k) csv << "," << fmt12(a[k]);
        for (int k = 0; k < 2 * n; ++k) csv << "," << fmt12(b[k]);
        csv << "," << fmt12(ds) << "," << fmt12(db) << "," << fmt12(da) << "\n";
    }

    int failed = 0, failed_step = -1;
    check(isotoda_trajectory_status(traj, &failed, &failed_step));
    double ms = 0.0, mb = 0.0, ma = 0.0;
    check(isotoda_trajectory_max_drift(traj, &ms, &mb, &ma));
    isotoda_trajectory_free(traj);

    json report;
    report["failed"] = failed != 0;
    if (failed) report["failed_step"] = failed_step;
    report["stored_steps"] = steps;
    report["t_end"] = round12(t_end);
    report["dt"] = round12(dt);
    report["tol"] = round12(tol);
    report["max_drift"] = {{"spectrum", round12(ms)},
                           {"abs_b", round12(mb)},
                           {"arg_b", round12(ma)}};

    write_output(out, csv.str());
    if (out.empty())
        std::cerr << report.dump(2) << "\n";
    else
        std::cout << report.dump(2) << "\n";
    return failed ? kExitNumeric : 0;
}

// Gauge the input matrix; zones and monodromy live on the positive-real form.
MatrixHandle gauge_of(const MatrixHandle& mat, double* w_re, double* w_im) {
    isotoda_matrix* base = nullptr;
    check(isotoda_matrix_gauge_normalize(mat.ptr, 1e-12, &base, w_re, w_im,
                                         nullptr));
    return MatrixHandle(base);
}

int cmd_monodromy(const std::string& in, int random_n, double x,
                  const std::string& out) {
    MatrixHandle mat = load_matrix(in, random_n, true);
    double w_re = 1.0, w_im = 0.0;
    MatrixHandle base = gauge_of(mat, &w_re, &w_im);
    int n = 0;
    check(isotoda_matrix_size(base.ptr, &n));

    double entries[8] = {0};
    double det = 0.0, trace = 0.0;
    check(isotoda_monodromy(base.ptr, x, entries, &det, &trace));
    std::vector<double> coeffs(n + 1);
    check(isotoda_spectral_polynomial(base.ptr, coeffs.data()));
    double B_re = 0.0, B_im = 0.0;
    check(isotoda_matrix_product_b(base.ptr, &B_re, &B_im));

    json j;
    j["n"] = n;
    j["x"] = round12(x);
    j["w"] = {round12(w_re), round12(w_im)};
    j["B"] = round12(B_re);
    j["monodromy"] = {
        {round12(entries[0]), round12(entries[1])},
        {round12(entries[2]), round12(entries[3])},
        {round12(entries[4]), round12(entries[5])},
        {round12(entries[6]), round12(entries[7])},
    };
    j["det"] = round12(det);
    j["trace"] = round12(trace);
    json pc = json::array();
    for (double c : coeffs) pc.push_back(round12(c));
    j["P"] = std::move(pc);
    write_output(out, j.dump(2) + "\n");
    return 0;
}

int cmd_zones(const std::string& in, int random_n, double tol,
              const std::string& out) {
    MatrixHandle mat = load_matrix(in, random_n, true);
    double w_re = 1.0, w_im = 0.0;
    MatrixHandle base = gauge_of(mat, &w_re, &w_im);
    int n = 0;
    check(isotoda_matrix_size(base.ptr, &n));

    isotoda_zones* zones = nullptr;
    check(isotoda_forbidden_zones(base.ptr, tol, &zones));
    int count = 0;
    check(isotoda_zones_count(zones, &count));
    std::vector<double> roots(2 * n);
    check(isotoda_zones_roots(zones, roots.data()));

    double B_re = 0.0, B_im = 0.0;
    check(isotoda_matrix_product_b(base.ptr, &B_re, &B_im));

    json j;
    j["n"] = n;
    j["B"] = round12(B_re);
    j["w"] = {round12(w_re), round12(w_im)};
    json zs = json::array();
    int collapsed_upper = 0, collapsed_lower = 0;
    for (int i = 0; i < count; ++i) {
        double lo = 0.0, hi = 0.0;
        int collapsed = 0, upper = 0;
        check(isotoda_zones_get(zones, i, &lo, &hi, &collapsed, &upper));
        zs.push_back({{"lo", round12(lo)},
                      {"hi", round12(hi)},
                      {"collapsed", collapsed != 0},
                      {"kind", upper ? "upper" : "lower"}});
        if (collapsed && upper) ++collapsed_upper;
        if (collapsed && !upper) ++collapsed_lower;
    }
    isotoda_zones_free(zones);
    j["zones"] = std::move(zs);
    j["collapsed_upper"] = collapsed_upper;
    j["collapsed_lower"] = collapsed_lower;
    json rj = json::array();
    for (double r : roots) rj.push_back(round12(r));
    j["roots"] = std::move(rj);
    write_output(out, j.dump(2) + "\n");
    return 0;
}

int cmd_tiling(int n, bool poset, const std::string& out) {
    char* text = nullptr;
    check(isotoda_tiling_json(n, poset ? 1 : 0, &text));
    std::string result(text);
    isotoda_string_free(text);
    write_output(out, result + "\n");
    return 0;
}

int cmd_betti_table(int n_max, const std::string& format, const std::string& out) {
    if (n_max < 3 || n_max > 10)
        fail(kExitValidation, "--n-max must be between 3 and 10");

    std::ostringstream csv;
    json jm = json::array(), jd = json::array();

    auto row = [&](int n, int np, int nm, json& section) {
        std::vector<int64_t> betti(2 * n + 1);
        check(isotoda_betti_table(n, np, nm, betti.data()));
        csv << n;
        for (int64_t v : betti) csv << "," << v;
        csv << "\n";
        isotoda_diagnostics diag{};
        check(isotoda_homology_diagnostics(n, np, nm, &diag));
        section.push_back({{"n", n},
                           {"n_plus", np},
                           {"n_minus", nm},
                           {"betti", betti},
                           {"euler", diag.euler},
                           {"pi1_rank", diag.pi1_rank}});
    };

    csv << "# manifold case (n_plus = 1, n_minus = 1)\n";
    for (int n = 3; n <= n_max; ++n) row(n, 1, 1, jm);
    csv << "# most degenerate case (n_plus + n_minus = n - 1)\n";
    for (int n = 4; n <= n_max; ++n) {
        int np = 0, nm = 0;
        check(isotoda_most_degenerate_split(n, &np, &nm));
        row(n, np, nm, jd);
    }

    if (format == "json") {
        json j;
        j["manifold"] = std::move(jm);
        j["degenerate"] = std::move(jd);
        write_output(out, j.dump(2) + "\n");
    } else {
        write_output(out, csv.str());
    }
    return 0;
}

int cmd_hilbert(int n, int terms, const std::string& out) {
    if (terms < 1) fail(kExitValidation, "--terms must be at least 1");
    std::vector<int64_t> collar(terms), principal(terms);
    check(isotoda_equivariant_series(n, terms, 0, collar.data()));
    check(isotoda_equivariant_series(n, terms, 1, principal.data()));

    json j;
    j["n"] = n;
    j["terms"] = terms;
    j["collar"] = collar;
    j["principal"] = principal;
    json tail = json::array();
    for (int i = 0; i < terms; ++i) tail.push_back(collar[i] - principal[i]);
    j["tail"] = std::move(tail);

    std::vector<int64_t> full(terms);
    if (isotoda_equivariant_series(n, terms, 2, full.data()) == ISOTODA_OK)
        j["full_space"] = full;  // known only for n = 3

    write_output(out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        const Defaults d = load_defaults(argc, argv);

        CLI::App app{"isospectral periodic tridiagonal matrices: invariants, "
                     "Toda flow, monodromy, tilings and Betti numbers"};
        app.require_subcommand(1);
        app.fallthrough(true);  // let --config appear after the subcommand
        std::string config_path;
        app.add_option("--config", config_path,
                       "JSON config file mirroring the long flags");

        std::string in, out = d.out, format = d.format;
        double grouping_tol = d.grouping_tol;
        double t_end = d.t_end, dt = d.dt;
        int terms = d.terms, samples = d.samples, stride = d.stride;
        int n = d.n, n_max = d.n_max;
        bool poset = false;
        std::optional<double> z_re, z_im;
        double x = 0.0;

        auto* analyze = app.add_subcommand("analyze", "spectrum invariants JSON");
        analyze->add_option("--in", in, "spectrum JSON file")->required();
        analyze->add_option("--grouping-tol", grouping_tol, "extremum grouping tolerance");
        analyze->add_option("--out", out, "output path (default stdout)");

        auto* bset = app.add_subcommand("bset", "image-set figure or point query");
        bset->add_option("--in", in, "spectrum JSON file")->required();
        bset->add_option("--samples", samples, "boundary samples per arc");
        bset->add_option("--format", format, "svg (default) or json");
        bset->add_option("--z-re", z_re, "query point, real part");
        bset->add_option("--z-im", z_im, "query point, imaginary part");
        double boundary_tol = 1e-9;
        bset->add_option("--tol", boundary_tol, "boundary classification tolerance");
        bset->add_option("--out", out, "output path (default stdout)");

        auto* toda = app.add_subcommand("toda", "integrate the Toda flow, CSV + drift report");
        toda->add_option("--in", in, "matrix JSON file");
        toda->add_option("--n", n, "random matrix size (with ISOTODA_SEED)");
        toda->add_option("--t-end", t_end, "integration time");
        toda->add_option("--dt", dt, "RK4 step");
        double toda_tol = d.tol > 0 ? d.tol : 1e-8;
        toda->add_option("--tol", toda_tol, "drift tolerance");
        toda->add_option("--stride", stride, "store every stride-th step");
        toda->add_option("--out", out, "trajectory CSV path (default stdout)");

        auto* mono = app.add_subcommand("monodromy", "monodromy matrix and spectral polynomial");
        mono->add_option("--in", in, "matrix JSON file");
        mono->add_option("--n", n, "random matrix size (with ISOTODA_SEED)");
        mono->add_option("--x", x, "evaluation point");
        mono->add_option("--out", out, "output path (default stdout)");

        auto* zones = app.add_subcommand("zones", "forbidden zones JSON");
        zones->add_option("--in", in, "matrix JSON file");
        zones->add_option("--n", n, "random matrix size (with ISOTODA_SEED)");
        double zone_tol = d.tol > 0 ? d.tol : 1e-7;
        zones->add_option("--tol", zone_tol, "collapsed-zone tolerance");
        zones->add_option("--out", out, "output path (default stdout)");

        auto* tiling = app.add_subcommand("tiling", "wonderful subdivision statistics");
        tiling->add_option("--n", n, "torus dimension parameter")->required();
        tiling->add_flag("--poset", poset, "include the face poset dump");
        tiling->add_option("--out", out, "output path (default stdout)");

        auto* betti = app.add_subcommand("betti-table", "golden Betti tables");
        betti->add_option("--n-max", n_max, "largest n (3..10)");
        betti->add_option("--format", format, "csv (default) or json");
        betti->add_option("--out", out, "output path (default stdout)");

        auto* hilbert = app.add_subcommand("hilbert", "equivariant Hilbert series coefficients");
        hilbert->add_option("--n", n, "torus dimension parameter")->required();
        hilbert->add_option("--terms", terms, "number of series coefficients");
        hilbert->add_option("--out", out, "output path (default stdout)");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) return app.exit(e);  // --help
            app.exit(e);
            return kExitValidation;
        }

        if (analyze->parsed()) return cmd_analyze(in, grouping_tol, out);
        if (bset->parsed())
            return cmd_bset(in, samples, format, z_re, z_im, boundary_tol, out);
        if (toda->parsed())
            return cmd_toda(in, n, t_end, dt, toda_tol, stride, out);
        if (mono->parsed()) return cmd_monodromy(in, n, x, out);
        if (zones->parsed()) return cmd_zones(in, n, zone_tol, out);
        if (tiling->parsed()) return cmd_tiling(n, poset, out);
        if (betti->parsed()) return cmd_betti_table(n_max, format, out);
        if (hilbert->parsed()) return cmd_hilbert(n, terms, out);
        return kExitValidation;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
