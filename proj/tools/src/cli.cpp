#include "cli.hpp"

#include "render.hpp"

#include "elliptica/elliptica.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace elliptica::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string omega1;
    std::string omega2;
    std::string tau;
    std::optional<int> trunc;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
};

struct Flags {
    std::vector<std::string> z;
    std::string x;
    std::string zeros;
    std::string poles;
    std::string scale;
    std::string fn;
    std::string t;
    std::string q;
    std::string method = "both";
    bool exact = false;
    bool direct = false;
    bool wp = false;
    std::optional<int> grid;
    std::optional<double> radius;
    std::optional<int> sum_radius;
    int density = 1;
};

double parse_real(const std::string &s, const std::string &flag)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    }
    catch (const std::exception &) {
        throw UsageError("--" + flag + ": cannot parse '" + s + "' as a number");
    }
    if (used != s.size()) {
        throw UsageError("--" + flag + ": cannot parse '" + s + "' as a number");
    }
    return v;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

complex parse_complex(const std::string &s, const std::string &flag)
{
    const auto parts = split(s, ',');
    if (parts.size() == 1) {
        return parse_real(parts[0], flag);
    }
    if (parts.size() != 2) {
        throw UsageError("--" + flag + ": expected re,im but got '" + s + "'");
    }
    return {parse_real(parts[0], flag), parse_real(parts[1], flag)};
}

ProjPoint parse_proj_point(const std::string &s, const std::string &flag)
{
    const auto parts = split(s, ';');
    if (parts.size() != 3) {
        throw UsageError("--" + flag + ": expected three re,im pairs separated by ';'");
    }
    return ProjPoint(parse_complex(parts[0], flag), parse_complex(parts[1], flag), parse_complex(parts[2], flag));
}

// "re,im[,mult];re,im[,mult];..."
Divisor parse_divisor(const std::string &s, const std::string &flag, const Lattice &L)
{
    Divisor D;
    if (s.empty()) {
        return D;
    }
    for (const auto &item : split(s, ';')) {
        const auto parts = split(item, ',');
        if (parts.size() < 2 || parts.size() > 3) {
            throw UsageError("--" + flag + ": expected re,im[,mult] items separated by ';'");
        }
        int mult = 1;
        if (parts.size() == 3) {
            const double m = parse_real(parts[2], flag);
            if (m < 1 || m != std::floor(m)) {
                throw UsageError("--" + flag + ": multiplicities must be positive integers");
            }
            mult = static_cast<int>(m);
        }
        D.add({parse_real(parts[0], flag), parse_real(parts[1], flag)}, mult, L);
    }
    return D;
}

bool has_lattice_flags(const RunConfig &cfg)
{
    return !cfg.omega1.empty() || !cfg.omega2.empty() || !cfg.tau.empty();
}

Lattice require_lattice(const RunConfig &cfg)
{
    const bool pair = !cfg.omega1.empty() || !cfg.omega2.empty();
    const bool tau = !cfg.tau.empty();
    if (pair && tau) {
        throw UsageError("give either --omega1/--omega2 or --tau, not both");
    }
    if (tau) {
        return make_lattice_from_tau(parse_complex(cfg.tau, "tau"));
    }
    if (cfg.omega1.empty() || cfg.omega2.empty()) {
        throw UsageError(pair ? "--omega1 and --omega2 must be given together"
                              : "this subcommand needs a lattice: --omega1/--omega2 or --tau");
    }
    return make_lattice(parse_complex(cfg.omega1, "omega1"), parse_complex(cfg.omega2, "omega2"));
}

int trunc_of(const RunConfig &cfg)
{
    const int n = cfg.trunc.value_or(default_theta_trunc);
    if (n < 1) {
        throw UsageError("--trunc must be positive");
    }
    return n;
}

json read_json_argument(const std::string &arg)
{
    std::string text = arg;
    if (arg.empty() || arg.front() != '{') {
        std::ifstream in(arg);
        if (!in) {
            throw Error(ErrorKind::invalid_argument, "read_function", "cannot open " + arg);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    }
    catch (const json::exception &e) {
        throw Error(ErrorKind::invalid_argument, "read_function", e.what());
    }
}

// Function input: --fn (file or inline JSON), or --zeros/--poles with lattice flags.
EllipticFunction require_function(const RunConfig &cfg, const Flags &flags)
{
    if (!flags.fn.empty()) {
        if (!flags.zeros.empty() || !flags.poles.empty() || has_lattice_flags(cfg)) {
            throw UsageError("--fn carries its own lattice and divisors; drop the other function flags");
        }
        const json doc = read_json_argument(flags.fn);
        // A build-fn report carries the function under "function".
        return elliptic_function_from_json(doc.contains("function") ? doc.at("function") : doc);
    }
    if (flags.zeros.empty() || flags.poles.empty()) {
        throw UsageError("this subcommand needs a function: --fn, or --zeros and --poles");
    }
    const Lattice L = require_lattice(cfg);
    auto f = build_from_divisors(parse_divisor(flags.zeros, "zeros", L), parse_divisor(flags.poles, "poles", L), L,
                                 trunc_of(cfg));
    if (!flags.scale.empty()) {
        f = f.with_scale(parse_complex(flags.scale, "scale"));
    }
    return f;
}

struct CubicChoice {
    Cubic cubic;
    std::optional<Lattice> lattice;
};

CubicChoice require_cubic(const RunConfig &cfg, const Flags &flags)
{
    if (!flags.t.empty()) {
        if (has_lattice_flags(cfg)) {
            throw UsageError("give either --t (Hesse cubic) or a lattice (Weierstrass cubic), not both");
        }
        return {hesse_cubic(parse_complex(flags.t, "t")), std::nullopt};
    }
    const Lattice L = require_lattice(cfg);
    return {weierstrass_cubic(L), L};
}

LocateOptions locate_options(const RunConfig &cfg, const Flags &flags)
{
    LocateOptions opts;
    opts.seed = cfg.seed;
    if (cfg.tol) {
        opts.tol = *cfg.tol;
    }
    if (flags.grid) {
        if (*flags.grid < 1) {
            throw UsageError("--grid must be positive");
        }
        opts.grid = *flags.grid;
    }
    return opts;
}

json family_json(const Cubic &C)
{
    if (C.family() == CubicFamily::hesse) {
        return {{"family", "hesse"}, {"t", to_json(C.t())}};
    }
    return {{"family", "weierstrass"}, {"g2", to_json(C.g2())}, {"g3", to_json(C.g3())}};
}

json divisor_list_json(const std::vector<Divisor> &list, const Lattice &L)
{
    json out = json::array();
    for (const auto &D : list) {
        out.push_back(to_json(D, L));
    }
    return out;
}

json proj_row(const ProjPoint &p)
{
    return json::array({p[0].real(), p[0].imag(), p[1].real(), p[1].imag(), p[2].real(), p[2].imag()});
}

std::vector<std::string> proj_header()
{
    return {"x_re", "x_im", "y_re", "y_im", "z_re", "z_im"};
}

std::vector<json> row_with(std::vector<json> head, const json &tail)
{
    for (const auto &v : tail) {
        head.push_back(v);
    }
    return head;
}

// Real affine trace of a cubic with optional real lines, as SVG.
std::string real_trace_svg(const Cubic &C, const std::vector<ProjLine> &lines, double R)
{
    const TernaryForm &F = C.form();
    const double scale = F.coefficient_norm();
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) {
            if (std::abs(F.coefficient(i, j, 3 - i - j).imag()) > 1e-12 * scale) {
                throw Error(ErrorKind::unsupported_format, "render_report",
                            "svg real trace needs a cubic with real coefficients");
            }
        }
    }
    const std::array<std::array<complex, 3>, 3> swap{{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
    const TernaryForm Fs = F.compose_linear(swap);

    const int size = 600;
    auto px = [&](double x) { return (x + R) / (2 * R) * size; };
    auto py = [&](double y) { return (R - y) / (2 * R) * size; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    svg << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"0\" y1=\"" << format_double(py(0)) << "\" x2=\"" << size << "\" y2=\""
        << format_double(py(0)) << "\" stroke=\"#ccc\"/>\n";
    svg << "<line x1=\"" << format_double(px(0)) << "\" y1=\"0\" x2=\"" << format_double(px(0)) << "\" y2=\""
        << size << "\" stroke=\"#ccc\"/>\n";

    for (const auto &l : lines) {
        const Vec3 &d = l.dual().coords();
        if (std::abs(d[0].imag()) > 1e-9 || std::abs(d[1].imag()) > 1e-9 || std::abs(d[2].imag()) > 1e-9) {
            continue;
        }
        const double a = d[0].real(), b = d[1].real(), c = d[2].real();
        if (std::abs(a) < 1e-12 && std::abs(b) < 1e-12) {
            continue;
        }
        double x1, y1, x2, y2;
        if (std::abs(b) >= std::abs(a)) {
            x1 = -R, x2 = R;
            y1 = -(a * x1 + c) / b, y2 = -(a * x2 + c) / b;
        }
        else {
            y1 = -R, y2 = R;
            x1 = -(b * y1 + c) / a, x2 = -(b * y2 + c) / a;
        }
        svg << "<line x1=\"" << format_double(px(x1)) << "\" y1=\"" << format_double(py(y1)) << "\" x2=\""
            << format_double(px(x2)) << "\" y2=\"" << format_double(py(y2)) << "\" stroke=\"#c33\"/>\n";
    }

    const int samples = 600;
    auto dots = [&](const TernaryForm &G, bool swapped) {
        for (int k = 0; k <= samples; ++k) {
            const double s = -R + 2 * R * k / samples;
            for (const complex r : polynomial_roots(G.restrict_in_y(s))) {
                if (std::abs(r.imag()) > 1e-7 || std::abs(r.real()) > R) {
                    continue;
                }
                const double x = swapped ? r.real() : s;
                const double y = swapped ? s : r.real();
                svg << "<circle cx=\"" << format_double(px(x)) << "\" cy=\"" << format_double(py(y))
                    << "\" r=\"1\" fill=\"#236\"/>\n";
            }
        }
    };
    dots(F, false);
    dots(Fs, true);
    svg << "</svg>\n";
    return svg.str();
}

std::vector<ProjLine> tangents_of(const std::vector<ProjPoint> &points, const Cubic &C)
{
    std::vector<ProjLine> out;
    for (const auto &p : points) {
        out.push_back(tangent_line(C, p));
    }
    return out;
}

// Subcommand handlers.

Report cmd_lattice(const RunConfig &cfg, const Flags &flags)
{
    const Lattice L = require_lattice(cfg);
    const auto cls = classify_lattice(L, cfg.tol.value_or(1e-9));
    const int radius = flags.sum_radius.value_or(50);
    if (radius < 1) {
        throw UsageError("--sum-radius must be positive");
    }
    const complex G4 = eisenstein_series(L, 4, radius);
    const complex G6 = eisenstein_series(L, 6, radius);
    Report r;
    r.document = {
        {"lattice", to_json(L)},
        {"tau", to_json(L.tau())},
        {"g2", to_json(L.g2())},
        {"g3", to_json(L.g3())},
        {"discriminant", to_json(L.g2() * L.g2() * L.g2() - 27.0 * L.g3() * L.g3())},
        {"area", L.area()},
        {"class", {{"kind", std::string(to_string(cls.kind))}, {"automorphism_count", cls.automorphism_count}}},
        {"equianharmonic", is_equianharmonic(L)},
        {"eisenstein",
         {{"radius", radius},
          {"G4", to_json(G4)},
          {"G6", to_json(G6)},
          {"tail_bound_G4", eisenstein_tail_bound(L, 4, radius)},
          {"tail_bound_G6", eisenstein_tail_bound(L, 6, radius)}}},
    };
    return r;
}

std::vector<complex> eval_points(const Flags &flags)
{
    std::vector<complex> zs;
    for (const auto &s : flags.z) {
        zs.push_back(parse_complex(s, "z"));
    }
    return zs;
}

Report cmd_theta(const RunConfig &cfg, const Flags &flags)
{
    const Lattice L = require_lattice(cfg);
    const int trunc = trunc_of(cfg);
    const auto zs = eval_points(flags);
    if (zs.empty()) {
        throw UsageError("theta needs at least one --z");
    }
    std::optional<TorusPoint> shift;
    if (!flags.x.empty()) {
        shift = reduce_mod_lattice(parse_complex(flags.x, "x"), L);
    }
    Report r;
    json values = json::array();
    Table table{{"z_re", "z_im", "value_re", "value_im"}, {}};
    for (const complex z : zs) {
        const complex v = shift ? theta_shifted(*shift, z, L, trunc) : theta(z, L, trunc);
        values.push_back({{"z", to_json(z)}, {"value", to_json(v)}});
        table.rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
    }
    r.document = {{"lattice", to_json(L)},
                  {"trunc", trunc},
                  {"tail_bound", theta_tail_bound(L.tau(), trunc)},
                  {"values", values}};
    if (shift) {
        r.document["shift"] = to_json(shift->rep);
    }
    r.table = table;
    return r;
}

Report cmd_wp(const RunConfig &cfg, const Flags &flags)
{
    const Lattice L = require_lattice(cfg);
    const auto zs = eval_points(flags);
    if (zs.empty()) {
        throw UsageError("wp needs at least one --z");
    }
    const Weierstrass W(L, trunc_of(cfg));
    const int radius = flags.sum_radius.value_or(400);
    Report r;
    json values = json::array();
    Table table{{"z", "p_re", "p_im", "pprime_re", "pprime_im"}, {}};
    auto cells = [](const SphereValue &v) -> std::vector<json> {
        if (v.is_infinite()) {
            return {"inf", "inf"};
        }
        return {v.value().real(), v.value().imag()};
    };
    for (const complex z : zs) {
        const WpPair p = flags.direct ? wp_pair_direct(z, L, radius) : W(z);
        values.push_back({{"z", to_json(z)}, {"p", to_json(p.p)}, {"pprime", to_json(p.pprime)}});
        std::vector<json> row{json(format_double(z.real()) + "," + format_double(z.imag()))};
        for (const auto &c : cells(p.p)) {
            row.push_back(c);
        }
        for (const auto &c : cells(p.pprime)) {
            row.push_back(c);
        }
        table.rows.push_back(row);
    }
    r.document = {{"lattice", to_json(L)}, {"method", flags.direct ? "direct" : "series"}, {"values", values}};
    if (flags.direct) {
        r.document["radius"] = radius;
    }
    r.table = table;
    return r;
}

Report cmd_build_fn(const RunConfig &cfg, const Flags &flags)
{
    const EllipticFunction f = require_function(cfg, flags);
    const Lattice &L = f.lattice();
    Report r;
    json values = json::array();
    Table table{{"z_re", "z_im", "value_re", "value_im"}, {}};
    for (const complex z : eval_points(flags)) {
        const SphereValue v = f(z);
        values.push_back({{"z", to_json(z)}, {"value", to_json(v)}});
        if (v.is_infinite()) {
            table.rows.push_back({z.real(), z.imag(), "inf", "inf"});
        }
        else {
            table.rows.push_back({z.real(), z.imag(), v.value().real(), v.value().imag()});
        }
    }
    r.document = {{"function", to_json(f)},
                  {"degree", f.degree()},
                  {"abel_defect", abel_defect(f.zeros(), f.poles(), L)},
                  {"values", values}};
    r.table = table;
    return r;
}

Report cmd_decompose2(const RunConfig &cfg, const Flags &flags)
{
    const EllipticFunction f = require_function(cfg, flags);
    const double tol = cfg.tol.value_or(default_reconstruction_tolerance);
    LocateOptions opts = locate_options(cfg, flags);
    opts.tol = 1e-5;
    const auto all = decompose_degree2_all(f, opts, tol);
    json candidates = json::array();
    for (const auto &d : all) {
        candidates.push_back({{"g", to_json(d.g)}, {"t", to_json(d.t.rep)}, {"error", d.error}});
    }
    Report r;
    r.document = {{"function", to_json(f)},
                  {"g", to_json(all.front().g)},
                  {"t", to_json(all.front().t.rep)},
                  {"error", all.front().error},
                  {"candidates", candidates}};
    return r;
}

Report cmd_zeros(const RunConfig &cfg, const Flags &flags)
{
    const LocateOptions opts = locate_options(cfg, flags);
    Report r;
    std::optional<Lattice> lattice;
    DivisorPair found;
    json source;
    if (flags.wp) {
        if (!flags.fn.empty() || !flags.zeros.empty() || !flags.poles.empty()) {
            throw UsageError("--wp cannot be combined with --fn, --zeros or --poles");
        }
        const Lattice L = require_lattice(cfg);
        const auto W = std::make_shared<Weierstrass>(L, trunc_of(cfg));
        TorusFunction tf;
        tf.value = [W](complex z) {
            const auto v = (*W)(z).p;
            return v.is_infinite() ? complex(INFINITY, 0) : v.value();
        };
        tf.log_derivative = [W](complex z) {
            const auto v = W->finite(z);
            return v[1] / v[0];
        };
        found = locate_divisors(tf, L, opts);
        lattice = L;
        source = "wp";
    }
    else {
        const EllipticFunction f = require_function(cfg, flags);
        found = locate_divisors(f.as_torus_function(), f.lattice(), opts);
        lattice = f.lattice();
        source = to_json(f);
        r.document["zero_error"] = divisor_distance(found.zeros, f.zeros(), f.lattice());
        r.document["pole_error"] = divisor_distance(found.poles, f.poles(), f.lattice());
    }
    const Lattice &L = *lattice;
    r.document["source"] = source;
    r.document["lattice"] = to_json(L);
    r.document["zeros"] = to_json(found.zeros, L);
    r.document["poles"] = to_json(found.poles, L);
    r.document["abel_defect"] = abel_defect(found.zeros, found.poles, L);
    Table table{{"kind", "re", "im", "multiplicity"}, {}};
    for (const auto &[kind, D] : {std::pair<const char *, const Divisor *>{"zero", &found.zeros},
                                  std::pair<const char *, const Divisor *>{"pole", &found.poles}}) {
        const Divisor sorted = D->sorted(L);
        for (const auto &e : sorted.entries()) {
            table.rows.push_back({kind, e.point.rep.real(), e.point.rep.imag(), e.multiplicity});
        }
    }
    r.table = table;
    return r;
}

Report cmd_cubic(const RunConfig &cfg, const Flags &flags)
{
    const auto choice = require_cubic(cfg, flags);
    const Cubic &C = choice.cubic;
    Report r;
    json coeffs = json::array();
    Table table{{"i", "j", "k", "re", "im"}, {}};
    for (int i = 3; i >= 0; --i) {
        for (int j = 3 - i; j >= 0; --j) {
            const int k = 3 - i - j;
            const complex c = C.form().coefficient(i, j, k);
            if (c != 0.0) {
                coeffs.push_back({{"monomial", {i, j, k}}, {"value", to_json(c)}});
                table.rows.push_back({i, j, k, c.real(), c.imag()});
            }
        }
    }
    r.document = family_json(C);
    r.document["coefficients"] = coeffs;
    r.document["smooth"] = C.is_smooth();
    r.document["identity"] = to_json(C.identity());
    if (C.family() == CubicFamily::hesse) {
        r.document["j"] = to_json(hesse_j(C.t()));
        r.document["equianharmonic"] = C.is_smooth() ? json(is_equianharmonic(C)) : json(nullptr);
    }
    else {
        const complex g2c = C.g2() * C.g2() * C.g2();
        const complex disc = g2c - 27.0 * C.g3() * C.g3();
        r.document["j"] = to_json(1728.0 * g2c / disc);
        r.document["equianharmonic"] = is_equianharmonic(C);
        r.document["lattice"] = to_json(*choice.lattice);
    }
    r.table = table;
    const double R = flags.radius.value_or(3.0);
    r.svg = [C, R] { return real_trace_svg(C, {}, R); };
    return r;
}

Report cmd_inflections(const RunConfig &cfg, const Flags &flags)
{
    const auto choice = require_cubic(cfg, flags);
    const Cubic &C = choice.cubic;
    std::vector<ProjPoint> points;
    std::vector<ProjLine> tangents;
    if (C.family() == CubicFamily::hesse) {
        if (!C.is_smooth()) {
            throw Error(ErrorKind::singular_input, "inflections", "the Hesse cubic is singular at this t");
        }
        const HesseData data = hesse_data(C.t());
        for (int i = 0; i < 9; ++i) {
            points.push_back(data.inflections[static_cast<std::size_t>(i)]);
            tangents.emplace_back(data.tangent_duals[static_cast<std::size_t>(i)]);
        }
    }
    else {
        points = inflection_points(C, cfg.seed);
        tangents = tangents_of(points, C);
    }
    Report r;
    r.document = family_json(C);
    json pts = json::array(), tans = json::array();
    double residual = 0;
    Table table{{"index"}, {}};
    for (const auto &h : proj_header()) {
        table.header.push_back(h);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        pts.push_back(to_json(points[i]));
        tans.push_back(to_json(tangents[i]));
        residual = std::max(residual, C.residual(points[i]));
        table.rows.push_back(row_with({static_cast<int>(i)}, proj_row(points[i])));
    }
    r.document["points"] = pts;
    r.document["tangents"] = tans;
    r.document["count"] = points.size();
    r.document["max_residual"] = residual;
    if (choice.lattice) {
        const Weierstrass W(*choice.lattice, trunc_of(cfg));
        json torus = json::array();
        for (const auto &p : points) {
            torus.push_back(to_json(unembed(p, C, W).rep));
        }
        r.document["torus"] = torus;
        r.document["lattice"] = to_json(*choice.lattice);
    }
    r.table = table;
    const double R = flags.radius.value_or(3.0);
    r.svg = [C, tangents, R] { return real_trace_svg(C, tangents, R); };
    return r;
}

json triples_json(const std::vector<ConcurrentTriple> &triples)
{
    json out = json::array();
    for (const auto &tr : triples) {
        out.push_back({{"indices", {tr.indices[0], tr.indices[1], tr.indices[2]}}, {"det_modulus", tr.det_modulus}});
    }
    return out;
}

std::string indices_cell(const ConcurrentTriple &tr)
{
    return std::to_string(tr.indices[0]) + " " + std::to_string(tr.indices[1]) + " " + std::to_string(tr.indices[2]);
}

struct ScanSample {
    complex t;
    std::optional<CyclotomicRational> exact;
    std::vector<ConcurrentTriple> triples;
};

ScanSample scan_one(complex t, bool exact, double tol)
{
    ScanSample s{t, std::nullopt, {}};
    if (exact) {
        s.exact = to_cyclotomic(t);
        s.t = s.exact->value();
        s.triples = concurrency_scan_exact(*s.exact);
    }
    else {
        s.triples = concurrency_scan(t, tol);
    }
    return s;
}

json cyclotomic_json(const CyclotomicRational &c)
{
    return {{"a", c.a}, {"b", c.b}, {"den", c.den}};
}

Report cmd_hesse_scan(const RunConfig &cfg, const Flags &flags)
{
    const double tol = cfg.tol.value_or(default_concurrency_tol);
    const bool single = !flags.t.empty();
    if (single == flags.grid.has_value()) {
        throw UsageError("hesse-scan needs exactly one of --t or --grid");
    }
    Report r;
    Table table{{"t_re", "t_im", "triple_indices", "det_modulus"}, {}};
    auto add_rows = [&table](const ScanSample &s) {
        for (const auto &tr : s.triples) {
            table.rows.push_back({s.t.real(), s.t.imag(), indices_cell(tr), tr.det_modulus});
        }
    };
    if (single) {
        const ScanSample s = scan_one(parse_complex(flags.t, "t"), flags.exact, tol);
        r.document = {{"t", to_json(s.t)},
                      {"exact", flags.exact},
                      {"tol", flags.exact ? json(0.0) : json(tol)},
                      {"singular", hesse_is_singular(s.t)},
                      {"j", to_json(hesse_j(s.t))},
                      {"concurrent", !s.triples.empty()},
                      {"triples", triples_json(s.triples)}};
        if (s.exact) {
            r.document["cyclotomic"] = cyclotomic_json(*s.exact);
        }
        add_rows(s);
    }
    else {
        const int n = *flags.grid;
        const double R = flags.radius.value_or(8.0);
        if (n < 2 || R <= 0) {
            throw UsageError("--grid needs n >= 2 and a positive --radius");
        }
        json hits = json::array();
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const double u = -R + 2 * R * i / (n - 1);
                const double v = -R + 2 * R * k / (n - 1);
                // Exact mode walks the grid in the coordinates of t = u + v eps.
                const complex t = flags.exact ? complex(u, 0) + v * epsilon : complex(u, v);
                const ScanSample s = scan_one(t, flags.exact, tol);
                if (s.triples.empty()) {
                    continue;
                }
                json hit = {{"t", to_json(s.t)},
                            {"singular", hesse_is_singular(s.t)},
                            {"triples", triples_json(s.triples)}};
                if (s.exact) {
                    hit["cyclotomic"] = cyclotomic_json(*s.exact);
                }
                hits.push_back(hit);
                add_rows(s);
            }
        }
        r.document = {{"grid", n},
                      {"radius", R},
                      {"exact", flags.exact},
                      {"samples", n * n},
                      {"coordinates", flags.exact ? "a+b*eps" : "re+i*im"},
                      {"concurrent", hits}};
    }
    r.table = table;
    return r;
}

ProjPoint random_base_point(const Cubic &C, std::uint64_t seed)
{
    Rng rng(seed);
    for (;;) {
        const ProjPoint q(rng.normal_complex(), rng.normal_complex(), rng.normal_complex());
        if (C.residual(q) > 1e-6) {
            return q;
        }
    }
}

Report cmd_fiber(const RunConfig &cfg, const Flags &flags)
{
    const auto choice = require_cubic(cfg, flags);
    const Cubic &C = choice.cubic;
    const ProjPoint q = flags.q.empty() ? random_base_point(C, cfg.seed) : parse_proj_point(flags.q, "q");
    const Fiber fib = lambda_fiber(C, q, cfg.seed);
    const CriticalCheck check = critical_locus_check(C, q, cfg.tol.value_or(default_critical_tol));
    double residual = 0, incidence = 0;
    Table table{{"index", "multiplicity"}, {}};
    for (const auto &h : proj_header()) {
        table.header.push_back(h);
    }
    for (std::size_t i = 0; i < fib.entries.size(); ++i) {
        const auto &e = fib.entries[i];
        residual = std::max(residual, C.residual(e.point));
        incidence = std::max(incidence, tangent_line(C, e.point).incidence(q));
        table.rows.push_back(row_with({static_cast<int>(i), e.multiplicity}, proj_row(e.point)));
    }
    Report r;
    r.document = family_json(C);
    r.document["fiber"] = to_json(fib);
    r.document["critical"] = {{"on_critical", check.on_critical}, {"tangents", check.tangents}};
    r.document["max_residual"] = residual;
    r.document["max_incidence"] = incidence;
    r.table = table;
    return r;
}

Report cmd_branch_divisors(const RunConfig &cfg, const Flags &flags)
{
    const EllipticFunction f = require_function(cfg, flags);
    const Lattice &L = f.lattice();
    const std::string &m = flags.method;
    if (m != "tangents" && m != "direct" && m != "both") {
        throw UsageError("--method must be tangents, direct or both");
    }
    Report r;
    r.document = {{"function", to_json(f)}};
    Table table{{"method", "divisor", "re", "im", "multiplicity"}, {}};
    auto emit = [&](const std::string &name, const std::vector<Divisor> &list) {
        r.document[name] = divisor_list_json(list, L);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Divisor sorted = list[i].sorted(L);
            for (const auto &e : sorted.entries()) {
                table.rows.push_back(
                    {name, static_cast<int>(i), e.point.rep.real(), e.point.rep.imag(), e.multiplicity});
            }
        }
    };
    std::optional<std::vector<Divisor>> via, direct;
    if (m != "direct") {
        via = branch_divisors_via_tangents(f, cfg.seed);
        emit("tangents", *via);
    }
    if (m != "tangents") {
        direct = branch_divisors_direct(f, locate_options(cfg, flags));
        emit("direct", *direct);
    }
    r.document["branching_order"] = branching_order(via ? *via : *direct);
    if (via && direct) {
        r.document["agree"] = same_divisor_list(*via, *direct, L, cfg.tol.value_or(1e-6));
    }
    r.table = table;
    return r;
}

Report cmd_monodromy(const RunConfig &cfg, const Flags &flags)
{
    const auto choice = require_cubic(cfg, flags);
    const Cubic &C = choice.cubic;
    if (flags.density < 1) {
        throw UsageError("--density must be positive");
    }
    const LoopFamily family = default_loops(C, cfg.seed, flags.density);
    const MonodromyReport rep = monodromy_group(C, family.basepoint, family.loops, {}, cfg.seed);
    json gens = json::array(), cycles = json::array(), crossings = json::array();
    Table table{{"loop", "images"}, {}};
    for (std::size_t i = 0; i < rep.generators.size(); ++i) {
        const auto &g = rep.generators[i];
        gens.push_back(to_json(g));
        cycles.push_back(g.cycle_type());
        std::string cell;
        for (const int v : g.images()) {
            cell += (cell.empty() ? "" : " ") + std::to_string(v + 1);
        }
        table.rows.push_back({static_cast<int>(i), cell});
    }
    for (const complex c : family.crossings) {
        crossings.push_back(to_json(c));
    }
    Report r;
    r.document = family_json(C);
    r.document["basepoint"] = to_json(rep.basepoint);
    r.document["generators"] = gens;
    r.document["cycle_types"] = cycles;
    r.document["crossings"] = crossings;
    r.document["transitive"] = rep.transitive;
    r.document["group_order"] = rep.order_capped ? json(">720") : json(rep.group_order);
    r.table = table;
    return r;
}

void print_error(std::ostream &err, const std::string &kind, const std::string &operation, const std::string &message)
{
    err << render_json({{"error", kind}, {"operation", operation}, {"message", message}});
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"elliptica: elliptic functions, theta quotients and plane cubics", "elliptica"};
    app.require_subcommand(1);

    RunConfig cfg;
    Flags flags;
    app.add_option("--omega1", cfg.omega1, "first period as re,im");
    app.add_option("--omega2", cfg.omega2, "second period as re,im");
    app.add_option("--tau", cfg.tau, "period ratio as re,im (lattice Z + tau Z)");
    app.add_option("--trunc", cfg.trunc, "theta series truncation");
    app.add_option("--tol", cfg.tol, "tolerance override for the subcommand");
    app.add_option("--seed", cfg.seed, "seed for every randomized choice")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "svg"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "write the report to this file");

    using Handler = Report (*)(const RunConfig &, const Flags &);
    std::map<std::string, Handler> handlers;
    auto sub = [&](const std::string &name, const std::string &help, Handler h) {
        handlers[name] = h;
        auto *s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    auto fn_flags = [&](CLI::App *s) {
        s->add_option("--fn", flags.fn, "elliptic function JSON (file path or inline object)");
        s->add_option("--zeros", flags.zeros, "zero divisor: re,im[,mult];...");
        s->add_option("--poles", flags.poles, "pole divisor: re,im[,mult];...");
        s->add_option("--scale", flags.scale, "constant factor as re,im");
    };

    sub("lattice", "reduced basis, invariants, class and Eisenstein sums", cmd_lattice)
        ->add_option("--sum-radius", flags.sum_radius, "Eisenstein truncation radius (default 50)");

    auto *theta_cmd = sub("theta", "theta function values", cmd_theta);
    theta_cmd->add_option("--z", flags.z, "evaluation point re,im (repeatable)");
    theta_cmd->add_option("--x", flags.x, "zero of the shifted theta function, re,im");

    auto *wp_cmd = sub("wp", "Weierstrass function and derivative", cmd_wp);
    wp_cmd->add_option("--z", flags.z, "evaluation point re,im (repeatable)");
    wp_cmd->add_flag("--direct", flags.direct, "use direct lattice summation");
    wp_cmd->add_option("--sum-radius", flags.sum_radius, "direct summation radius (default 400)");

    auto *build_cmd = sub("build-fn", "elliptic function from zero and pole divisors", cmd_build_fn);
    fn_flags(build_cmd);
    build_cmd->add_option("--z", flags.z, "evaluation point re,im (repeatable)");

    auto *dec_cmd = sub("decompose2", "write a degree-2 function as g o wp o translation", cmd_decompose2);
    fn_flags(dec_cmd);

    auto *zeros_cmd = sub("zeros", "locate zero and pole divisors by contour integration", cmd_zeros);
    fn_flags(zeros_cmd);
    zeros_cmd->add_flag("--wp", flags.wp, "use the Weierstrass function of the lattice");
    zeros_cmd->add_option("--grid", flags.grid, "cells per side of the search grid");

    auto *cubic_cmd = sub("cubic", "Weierstrass cubic of a lattice or Hesse cubic of --t", cmd_cubic);
    cubic_cmd->add_option("--t", flags.t, "Hesse parameter re,im");
    cubic_cmd->add_option("--radius", flags.radius, "half-width of the SVG window");

    auto *infl_cmd = sub("inflections", "the nine inflection points and their tangents", cmd_inflections);
    infl_cmd->add_option("--t", flags.t, "Hesse parameter re,im");
    infl_cmd->add_option("--radius", flags.radius, "half-width of the SVG window");

    auto *scan_cmd = sub("hesse-scan", "concurrent triples of inflectional tangents", cmd_hesse_scan);
    scan_cmd->add_option("--t", flags.t, "Hesse parameter re,im");
    scan_cmd->add_option("--grid", flags.grid, "scan an n x n grid of parameters");
    scan_cmd->add_option("--radius", flags.radius, "grid half-width (default 8)");
    scan_cmd->add_flag("--exact", flags.exact, "exact arithmetic over Q(eps)");

    auto *fiber_cmd = sub("fiber", "tangency points of the lines from a base point", cmd_fiber);
    fiber_cmd->add_option("--t", flags.t, "Hesse parameter re,im");
    fiber_cmd->add_option("--q", flags.q, "base point as three re,im pairs separated by ';'");

    auto *branch_cmd = sub("branch-divisors", "branch divisors of a degree-3 function", cmd_branch_divisors);
    fn_flags(branch_cmd);
    branch_cmd->add_option("--method", flags.method, "tangents, direct or both")->capture_default_str();
    branch_cmd->add_option("--grid", flags.grid, "cells per side for the direct method");

    auto *mono_cmd = sub("monodromy", "monodromy of the tangent-line covering", cmd_monodromy);
    mono_cmd->add_option("--t", flags.t, "Hesse parameter re,im");
    mono_cmd->add_option("--density", flags.density, "loop sampling density multiplier")->capture_default_str();

    std::vector<std::string> argv_store{"elliptica"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    }
    catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }

    std::string name;
    for (const auto *s : app.get_subcommands()) {
        name = s->get_name();
    }
    try {
        const Format format = parse_format(cfg.format);
        const Report report = handlers.at(name)(cfg, flags);
        const std::string bytes = render_report(report, format, name);
        if (cfg.out.empty()) {
            out << bytes;
        }
        else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) {
                throw Error(ErrorKind::invalid_argument, "render_report", "cannot write " + cfg.out);
            }
            file << bytes;
        }
        return 0;
    }
    catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }
    catch (const Error &e) {
        std::string message = e.what();
        const std::string prefix = e.operation() + ": ";
        if (message.rfind(prefix, 0) == 0) {
            message.erase(0, prefix.size());
        }
        print_error(err, std::string(to_string(e.kind())), e.operation(), message);
        return 1;
    }
    catch (const std::exception &e) {
        print_error(err, "internal_error", name, e.what());
        return 1;
    }
}

} // namespace elliptica::cli
