#include "elliptica/hesse.hpp"

#include "elliptica/error.hpp"

#include <cmath>

namespace elliptica {

namespace {

__extension__ typedef __int128 int128;

// a + b eps over the integers.
struct ZEps {
    int128 a = 0;
    int128 b = 0;

    friend ZEps operator+(ZEps x, ZEps y) { return {x.a + y.a, x.b + y.b}; }
    friend ZEps operator-(ZEps x, ZEps y) { return {x.a - y.a, x.b - y.b}; }
    friend ZEps operator*(ZEps x, ZEps y)
    {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    bool is_zero() const { return a == 0 && b == 0; }
    complex value() const { return static_cast<double>(a) + static_cast<double>(b) * epsilon; }
};

const ZEps z_one{1, 0};
const ZEps z_eps{0, 1};
const ZEps z_eps2{-1, -1};

// Inflection table, with the tangent at entry i listed as dual_slot[i] in the
// printed dual table.
const std::array<std::array<ZEps, 3>, 9> inflection_table{{
    {{{0, 0}, z_one, ZEps{-1, 0}}},
    {{{0, 0}, z_one, ZEps{0, -1}}},
    {{{0, 0}, z_one, ZEps{1, 1}}},
    {{z_one, {0, 0}, ZEps{-1, 0}}},
    {{z_one, {0, 0}, ZEps{1, 1}}},
    {{z_one, {0, 0}, ZEps{0, -1}}},
    {{z_one, ZEps{-1, 0}, {0, 0}}},
    {{z_one, ZEps{0, -1}, {0, 0}}},
    {{z_one, ZEps{1, 1}, {0, 0}}},
}};

// Printed dual table: entry k = (c, u) means coordinate c is -t*u and the
// other two coordinates are 3 times the listed units.
struct DualPattern {
    int t_slot;
    ZEps t_unit;
    std::array<ZEps, 3> threes; // unit multiplying 3 at each slot (ignored at t_slot)
};

const std::array<DualPattern, 9> dual_table{{
    {0, z_one, {{{}, z_one, z_one}}},
    {1, z_one, {{z_one, {}, z_one}}},
    {2, z_one, {{z_one, z_one, {}}}},
    {0, z_eps, {{{}, z_one, z_eps2}}},
    {1, z_eps2, {{z_one, {}, z_eps}}},
    {2, z_eps, {{z_one, z_eps2, {}}}},
    {0, z_eps2, {{{}, z_one, z_eps}}},
    {1, z_eps, {{z_one, {}, z_eps2}}},
    {2, z_eps2, {{z_one, z_eps, {}}}},
}};

// Printed dual index for each inflection index.
constexpr std::array<int, 9> dual_of_inflection{0, 3, 6, 1, 4, 7, 2, 5, 8};

// Dual coordinates scaled by den, for t = (ta + tb eps) / den.
std::array<std::array<ZEps, 3>, 9> exact_duals(const CyclotomicRational &t)
{
    const ZEps tt{t.a, t.b};
    const ZEps three_den{3 * static_cast<int128>(t.den), 0};
    std::array<std::array<ZEps, 3>, 9> out{};
    for (std::size_t i = 0; i < 9; ++i) {
        const auto &pat = dual_table[static_cast<std::size_t>(dual_of_inflection[i])];
        for (int c = 0; c < 3; ++c) {
            const auto cu = static_cast<std::size_t>(c);
            out[i][cu] = c == pat.t_slot ? ZEps{} - tt * pat.t_unit : three_den * pat.threes[cu];
        }
    }
    return out;
}

template <class T>
T det3(const std::array<T, 3> &r0, const std::array<T, 3> &r1, const std::array<T, 3> &r2)
{
    return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
           r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

} // namespace

complex CyclotomicRational::value() const noexcept
{
    return (static_cast<double>(a) + static_cast<double>(b) * epsilon) / static_cast<double>(den);
}

const std::array<ProjPoint, 9> &hesse_inflections()
{
    static const std::array<ProjPoint, 9> pts = [] {
        std::array<ProjPoint, 9> p{};
        for (std::size_t i = 0; i < 9; ++i) {
            const auto &r = inflection_table[i];
            p[i] = ProjPoint(r[0].value(), r[1].value(), r[2].value());
        }
        return p;
    }();
    return pts;
}

HesseData hesse_data(complex t)
{
    HesseData d{Cubic::hesse(t), hesse_inflections(), {}};
    for (std::size_t i = 0; i < 9; ++i) {
        const auto &pat = dual_table[static_cast<std::size_t>(dual_of_inflection[i])];
        Vec3 v{};
        for (int c = 0; c < 3; ++c) {
            const auto cu = static_cast<std::size_t>(c);
            v[cu] = c == pat.t_slot ? -t * pat.t_unit.value() : 3.0 * pat.threes[cu].value();
        }
        d.tangent_duals[i] = ProjPoint(v);
    }
    return d;
}

std::vector<ConcurrentTriple> concurrency_determinants(complex t)
{
    const HesseData d = hesse_data(t);
    std::vector<ConcurrentTriple> out;
    for (int i = 0; i < 9; ++i) {
        for (int j = i + 1; j < 9; ++j) {
            for (int k = j + 1; k < 9; ++k) {
                const complex det = det3(d.tangent_duals[static_cast<std::size_t>(i)].coords(),
                                         d.tangent_duals[static_cast<std::size_t>(j)].coords(),
                                         d.tangent_duals[static_cast<std::size_t>(k)].coords());
                out.push_back({{i, j, k}, std::abs(det)});
            }
        }
    }
    return out;
}

std::vector<ConcurrentTriple> concurrency_scan(complex t, double tol)
{
    std::vector<ConcurrentTriple> out;
    for (const auto &c : concurrency_determinants(t)) {
        if (c.det_modulus < tol) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<ConcurrentTriple> concurrency_determinants_exact(const CyclotomicRational &t)
{
    const auto duals = exact_duals(t);
    std::vector<ConcurrentTriple> out;
    for (int i = 0; i < 9; ++i) {
        for (int j = i + 1; j < 9; ++j) {
            for (int k = j + 1; k < 9; ++k) {
                const ZEps det = det3(duals[static_cast<std::size_t>(i)], duals[static_cast<std::size_t>(j)],
                                      duals[static_cast<std::size_t>(k)]);
                out.push_back({{i, j, k}, det.is_zero() ? 0.0 : std::abs(det.value())});
            }
        }
    }
    return out;
}

std::vector<ConcurrentTriple> concurrency_scan_exact(const CyclotomicRational &t)
{
    std::vector<ConcurrentTriple> out;
    for (const auto &c : concurrency_determinants_exact(t)) {
        if (c.det_modulus == 0.0) {
            out.push_back(c);
        }
    }
    return out;
}

CyclotomicRational to_cyclotomic(complex t, std::int64_t max_den)
{
    // t = a + b eps with eps = -1/2 + i sqrt(3)/2.
    const double b = t.imag() / epsilon.imag();
    const double a = t.real() + 0.5 * b;
    const double scale = 1.0 + std::abs(t);
    for (std::int64_t den = 1; den <= max_den; den = den < 1000 ? den + 1 : den * 10) {
        const double na = std::round(a * den), nb = std::round(b * den);
        const CyclotomicRational c{static_cast<std::int64_t>(na), static_cast<std::int64_t>(nb), den};
        if (std::abs(c.value() - t) <= 1e-12 * scale) {
            return c;
        }
    }
    throw Error(ErrorKind::invalid_argument, "concurrency_scan", "parameter is not a low-denominator element of Q(eps)");
}

SphereValue hesse_j(complex t)
{
    const complex t3 = t * t * t;
    const complex u = 1.0 - t3 / 216.0;
    const complex v = 1.0 + t3 / 27.0;
    return SphereValue::from_homogeneous(8.0 * t3 * u * u * u, 27.0 * v * v * v);
}

bool hesse_is_singular(complex t, double tol)
{
    return std::abs(t * t * t + 27.0) <= tol * (27.0 + std::norm(t) * std::abs(t));
}

bool is_equianharmonic(const Lattice &L, double tol)
{
    return classify_lattice(L, tol).kind == LatticeKind::hexagonal;
}

bool is_equianharmonic(const Cubic &C, double tol)
{
    if (C.family() == CubicFamily::hesse) {
        if (hesse_is_singular(C.t())) {
            throw Error(ErrorKind::singular_input, "is_equianharmonic", "Hesse cubic is singular for t^3 = -27");
        }
        return chordal_distance(hesse_j(C.t()), complex(0.0)) <= tol;
    }
    if (!C.is_smooth()) {
        throw Error(ErrorKind::singular_input, "is_equianharmonic", "cubic is singular");
    }
    const complex g2 = C.g2(), g3 = C.g3();
    const double g2c = std::norm(g2) * std::abs(g2);
    return g2c <= tol * (g2c + 27.0 * std::norm(g3));
}

} // namespace elliptica
