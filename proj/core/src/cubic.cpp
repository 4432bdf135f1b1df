#include "elliptica/cubic.hpp"

#include "elliptica/error.hpp"
#include "elliptica/random.hpp"
#include "elliptica/sphere.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace elliptica {

namespace {

using Mat3 = std::array<std::array<complex, 3>, 3>;

Vec3 mat_vec(const Mat3 &T, const Vec3 &v)
{
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = T[i][0] * v[0] + T[i][1] * v[1] + T[i][2] * v[2];
    }
    return r;
}

Mat3 random_unitary(Rng &rng)
{
    Eigen::Matrix3cd A;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            A(i, j) = rng.normal_complex();
        }
    }
    const Eigen::HouseholderQR<Eigen::Matrix3cd> qr(A);
    const Eigen::Matrix3cd Q = qr.householderQ();
    Mat3 T{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Q(i, j);
        }
    }
    return T;
}

complex resultant(const std::vector<complex> &f, const std::vector<complex> &g)
{
    // Sylvester determinant with coefficients listed from the leading term.
    const int m = static_cast<int>(f.size()) - 1;
    const int n = static_cast<int>(g.size()) - 1;
    const int size = m + n;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(size, size);
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i <= m; ++i) {
            S(r, r + i) = f[static_cast<std::size_t>(m - i)];
        }
    }
    for (int r = 0; r < m; ++r) {
        for (int i = 0; i <= n; ++i) {
            S(n + r, r + i) = g[static_cast<std::size_t>(n - i)];
        }
    }
    return S.partialPivLu().determinant();
}

double form_residual(const TernaryForm &F, const Vec3 &v)
{
    const ProjPoint p(v);
    return std::abs(F(p.coords())) / F.coefficient_norm();
}

// Newton on {F, G} in the chart of the largest coordinate.
Vec3 polish_common_zero(const TernaryForm &F, const TernaryForm &G, const std::array<TernaryForm, 3> &dF,
                        const std::array<TernaryForm, 3> &dG, Vec3 v)
{
    v = ProjPoint(v).coords();
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(v[i]) > std::abs(v[k])) {
            k = i;
        }
    }
    const std::size_t i0 = (k + 1) % 3, i1 = (k + 2) % 3;
    double res = form_residual(F, v) + form_residual(G, v);
    for (int it = 0; it < 12 && res > 0.0; ++it) {
        const complex f = F(v), g = G(v);
        const complex a = dF[i0](v), b = dF[i1](v), c = dG[i0](v), d = dG[i1](v);
        const complex det = a * d - b * c;
        if (std::abs(det) == 0.0) {
            break;
        }
        Vec3 w = v;
        w[i0] -= (d * f - b * g) / det;
        w[i1] -= (-c * f + a * g) / det;
        const double wres = form_residual(F, w) + form_residual(G, w);
        if (!(wres < res)) {
            break;
        }
        v = w;
        res = wres;
    }
    return v;
}

} // namespace

Cubic::Cubic(CubicFamily family, complex p0, complex p1, TernaryForm form)
    : m_family(family), m_params{p0, p1}, m_form(std::move(form))
{
    m_grad = m_form.gradient();
    for (std::size_t i = 0; i < 3; ++i) {
        m_second[i] = m_grad[i].gradient();
    }
}

Cubic Cubic::weierstrass(complex g2, complex g3)
{
    TernaryForm F(3);
    F.set_coefficient(0, 2, 1, 1.0);
    F.set_coefficient(3, 0, 0, -4.0);
    F.set_coefficient(1, 0, 2, g2);
    F.set_coefficient(0, 0, 3, g3);
    return Cubic(CubicFamily::weierstrass, g2, g3, std::move(F));
}

Cubic Cubic::hesse(complex t)
{
    TernaryForm F(3);
    F.set_coefficient(3, 0, 0, 1.0);
    F.set_coefficient(0, 3, 0, 1.0);
    F.set_coefficient(0, 0, 3, 1.0);
    F.set_coefficient(1, 1, 1, t);
    return Cubic(CubicFamily::hesse, t, 0.0, std::move(F));
}

Vec3 Cubic::gradient(const Vec3 &v) const noexcept
{
    return {m_grad[0](v), m_grad[1](v), m_grad[2](v)};
}

std::array<Vec3, 3> Cubic::hessian(const Vec3 &v) const noexcept
{
    std::array<Vec3, 3> H{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            H[i][j] = m_second[i][j](v);
        }
    }
    return H;
}

double Cubic::residual(const ProjPoint &p) const noexcept
{
    return std::abs(m_form(p.coords())) / m_form.coefficient_norm();
}

bool Cubic::is_smooth() const noexcept
{
    if (m_family == CubicFamily::weierstrass) {
        const complex g2 = m_params[0], g3 = m_params[1];
        const double scale = std::norm(g2) * std::abs(g2) + 27.0 * std::norm(g3);
        return std::abs(g2 * g2 * g2 - 27.0 * g3 * g3) > 1e-10 * scale;
    }
    const complex t = m_params[0];
    return std::abs(t * t * t + 27.0) > 1e-9 * (27.0 + std::norm(t) * std::abs(t));
}

ProjPoint Cubic::identity() const
{
    return m_family == CubicFamily::weierstrass ? ProjPoint(0.0, 1.0, 0.0) : ProjPoint(0.0, 1.0, -1.0);
}

Cubic weierstrass_cubic(const Lattice &L)
{
    Cubic C = Cubic::weierstrass(L.g2(), L.g3());
    if (!C.is_smooth()) {
        throw Error(ErrorKind::singular_cubic, "weierstrass_cubic", "discriminant g2^3 - 27 g3^2 vanishes");
    }
    return C;
}

Cubic hesse_cubic(complex t)
{
    return Cubic::hesse(t);
}

ProjPoint embed_point(complex z, const Weierstrass &W)
{
    const auto v = W(z);
    if (v.p.is_infinite()) {
        return ProjPoint(0.0, 1.0, 0.0);
    }
    return ProjPoint(v.p.value(), v.pprime.value(), 1.0);
}

ProjPoint embed_point(TorusPoint z, const Lattice &L)
{
    return embed_point(z.rep, Weierstrass(L));
}

TorusPoint unembed(const ProjPoint &p, const Cubic &C, const Weierstrass &W)
{
    if (!C.contains(p, 1e-6)) {
        throw Error(ErrorKind::point_off_curve, "unembed", "point does not lie on the cubic");
    }
    if (std::abs(p[2]) <= 1e-15) {
        return {0.0};
    }
    const complex z = W.inverse_pair(p[0] / p[2], p[1] / p[2]);
    return reduce_mod_lattice(z, W.lattice());
}

TorusPoint unembed(const ProjPoint &p, const Cubic &C, const Lattice &L)
{
    return unembed(p, C, Weierstrass(L));
}

ProjLine tangent_line(const Cubic &C, const ProjPoint &p)
{
    if (!C.contains(p, 1e-6)) {
        throw Error(ErrorKind::point_off_curve, "tangent_line", "point does not lie on the cubic");
    }
    const Vec3 g = C.gradient(p.coords());
    if (norm(g) <= 1e-10 * C.form().coefficient_norm()) {
        throw Error(ErrorKind::singular_point, "tangent_line", "gradient vanishes at the point");
    }
    return ProjLine(g);
}

IntersectionList line_intersect_cubic(const ProjLine &l, const Cubic &C)
{
    const auto [a, b] = l.span();
    const Vec3 ga = C.gradient(a), gb = C.gradient(b);
    // F(a + r b) = c0 + c1 r + c2 r^2 + c3 r^3 by polarization.
    const std::array<complex, 4> c{C.value(a), dot(ga, b), dot(gb, a), C.value(b)};
    const auto roots = polynomial_roots(c);

    std::vector<SphereValue> params(roots.begin(), roots.end());
    while (params.size() < 3) {
        params.push_back(SphereValue::infinity());
    }
    std::vector<std::vector<SphereValue>> groups;
    for (const auto &r : params) {
        bool placed = false;
        for (auto &g : groups) {
            if (chordal_distance(g.front(), r) < line_cluster_radius) {
                g.push_back(r);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({r});
        }
    }
    IntersectionList out;
    for (const auto &g : groups) {
        bool near_infinity = false;
        for (const auto &r : g) {
            near_infinity = near_infinity || r.is_infinite() || std::abs(r.value()) > 1.0;
        }
        Vec3 v{};
        if (!near_infinity) {
            complex mean = 0.0;
            for (const auto &r : g) {
                mean += r.value();
            }
            mean /= static_cast<double>(g.size());
            v = {a[0] + mean * b[0], a[1] + mean * b[1], a[2] + mean * b[2]};
        }
        else {
            complex mean = 0.0; // of 1/r
            for (const auto &r : g) {
                mean += r.is_infinite() ? complex(0.0) : 1.0 / r.value();
            }
            mean /= static_cast<double>(g.size());
            v = {b[0] + mean * a[0], b[1] + mean * a[1], b[2] + mean * a[2]};
        }
        out.push_back({ProjPoint(v), static_cast<int>(g.size())});
    }
    return out;
}

ProjPoint third_point(const Cubic &C, const ProjPoint &p, const ProjPoint &q)
{
    const Vec3 &u = p.coords();
    const Vec3 &v = q.coords();
    if (projective_distance(p, q) > 1e-8) {
        const complex A = dot(C.gradient(u), v);
        const complex B = dot(C.gradient(v), u);
        return ProjPoint(Vec3{B * u[0] - A * v[0], B * u[1] - A * v[1], B * u[2] - A * v[2]});
    }
    // Tangent at p: an auxiliary point w on the tangent, Hermitian-orthogonal to p.
    const Vec3 T = C.gradient(u);
    const Vec3 w = cross(T, Vec3{std::conj(u[0]), std::conj(u[1]), std::conj(u[2])});
    const complex s = C.value(w);
    const complex t = dot(C.gradient(w), u);
    return ProjPoint(Vec3{s * u[0] - t * w[0], s * u[1] - t * w[1], s * u[2] - t * w[2]});
}

ProjPoint group_add(const Cubic &C, const ProjPoint &p, const ProjPoint &q)
{
    for (const auto *x : {&p, &q}) {
        if (!C.contains(*x, 1e-6)) {
            throw Error(ErrorKind::point_off_curve, "group_add", "point does not lie on the cubic");
        }
    }
    return third_point(C, C.identity(), third_point(C, p, q));
}

ProjPoint group_negate(const Cubic &C, const ProjPoint &p)
{
    // For a non-inflectional identity O, -p is the third point of (p, third(O, O)).
    const ProjPoint O = C.identity();
    return third_point(C, p, third_point(C, O, O));
}

IntersectionList intersect_curves(const TernaryForm &F, const TernaryForm &G, std::uint64_t seed, double cluster_radius)
{
    static constexpr const char *op = "intersect_curves";
    const int d1 = F.degree(), d2 = G.degree();
    const int n = d1 * d2;
    if (d1 < 1 || d2 < 1) {
        throw Error(ErrorKind::invalid_argument, op, "forms must have positive degree");
    }
    const auto dF = F.gradient();
    const auto dG = G.gradient();
    Rng rng(seed);
    constexpr int samples = 32;

    for (int attempt = 0; attempt < 12; ++attempt) {
        const Mat3 U = random_unitary(rng);
        const TernaryForm Fu = F.compose_linear(U) * complex(1.0 / F.coefficient_norm());
        const TernaryForm Gu = G.compose_linear(U) * complex(1.0 / G.coefficient_norm());
        if (std::abs(Fu.coefficient(0, d1, 0)) < 1e-3 || std::abs(Gu.coefficient(0, d2, 0)) < 1e-3) {
            continue;
        }
        // Resultant in y as a polynomial in x, recovered from samples on the unit circle.
        std::vector<complex> values(samples);
        for (int k = 0; k < samples; ++k) {
            const complex x = std::polar(1.0, 2.0 * pi * k / samples);
            values[static_cast<std::size_t>(k)] = resultant(Fu.restrict_in_y(x), Gu.restrict_in_y(x));
        }
        std::vector<complex> coeffs(static_cast<std::size_t>(n) + 1);
        double cmax = 0.0, tail = 0.0;
        for (int j = 0; j < samples; ++j) {
            complex c = 0.0;
            for (int k = 0; k < samples; ++k) {
                c += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * pi * j * k / samples);
            }
            c /= static_cast<double>(samples);
            if (j <= n) {
                coeffs[static_cast<std::size_t>(j)] = c;
                cmax = std::max(cmax, std::abs(c));
            }
            else {
                tail = std::max(tail, std::abs(c));
            }
        }
        if (std::abs(coeffs.back()) < 1e-6 * cmax || tail > 1e-8 * cmax) {
            continue;
        }
        const auto xs = polynomial_roots(coeffs);
        if (static_cast<int>(xs.size()) != n) {
            continue;
        }
        const auto clusters = cluster_values(xs, cluster_radius);

        IntersectionList out;
        bool consistent = true;
        for (const auto &cl : clusters) {
            const complex x = cl.value;
            const auto ys = polynomial_roots(Fu.restrict_in_y(x));
            if (ys.empty()) {
                consistent = false;
                break;
            }
            complex best_y = ys.front();
            double best = std::abs(Gu(Vec3{x, best_y, 1.0}));
            for (const complex y : ys) {
                const double r = std::abs(Gu(Vec3{x, y, 1.0}));
                if (r < best) {
                    best = r;
                    best_y = y;
                }
            }
            Vec3 v = mat_vec(U, Vec3{x, best_y, 1.0});
            if (cl.multiplicity == 1) {
                v = polish_common_zero(F, G, dF, dG, v);
            }
            else {
                // A multiple root must come from a tangency, not two points sharing x.
                const Vec3 gf{dF[0](v), dF[1](v), dF[2](v)};
                const Vec3 gg{dG[0](v), dG[1](v), dG[2](v)};
                if (projective_distance(gf, gg) > 1e-3) {
                    consistent = false;
                    break;
                }
            }
            const double res = form_residual(F, v) + form_residual(G, v);
            if (res > (cl.multiplicity == 1 ? 1e-10 : 1e-7)) {
                consistent = false;
                break;
            }
            out.push_back({ProjPoint(v), cl.multiplicity});
        }
        if (!consistent) {
            continue;
        }
        // Distinct clusters must be distinct points.
        for (std::size_t i = 0; i < out.size() && consistent; ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                if (projective_distance(out[i].point, out[j].point) < cluster_radius) {
                    consistent = false;
                    break;
                }
            }
        }
        if (!consistent) {
            continue;
        }
        std::sort(out.begin(), out.end(),
                  [](const Intersection &a, const Intersection &b) { return lexicographic_less(a.point, b.point); });
        return out;
    }
    throw Error(ErrorKind::numerical_failure, op, "no coordinate change gave a consistent intersection");
}

std::vector<ProjPoint> inflection_points(const Cubic &C, std::uint64_t seed)
{
    if (!C.is_smooth()) {
        throw Error(ErrorKind::singular_cubic, "inflection_points", "cubic is singular");
    }
    const TernaryForm H = hessian_determinant(C.form());
    for (std::uint64_t s = seed; s < seed + 4; ++s) {
        const auto pts = intersect_curves(C.form(), H, s);
        if (pts.size() == 9) {
            std::vector<ProjPoint> out;
            for (const auto &p : pts) {
                out.push_back(p.point);
            }
            return out;
        }
    }
    throw Error(ErrorKind::numerical_failure, "inflection_points", "fewer than 9 distinct inflection points found");
}

} // namespace elliptica
