#include "elliptica/projective.hpp"

#include "elliptica/error.hpp"

#include <cmath>
#include <tuple>

namespace elliptica {

Vec3 cross(const Vec3 &a, const Vec3 &b) noexcept
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

complex dot(const Vec3 &a, const Vec3 &b) noexcept
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3 &a) noexcept
{
    return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

ProjPoint::ProjPoint(const Vec3 &v)
{
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(v[i]) > std::abs(v[k])) {
            k = i;
        }
    }
    if (!(std::abs(v[k]) > 0.0) || !std::isfinite(std::abs(v[k]))) {
        throw Error(ErrorKind::invalid_argument, "projective_point", "coordinates must be finite and not all zero");
    }
    for (std::size_t i = 0; i < 3; ++i) {
        m_coords[i] = i == k ? complex(1.0) : v[i] / v[k];
    }
}

double projective_distance(const Vec3 &a, const Vec3 &b) noexcept
{
    return norm(cross(a, b)) / (norm(a) * norm(b));
}

double projective_distance(const ProjPoint &a, const ProjPoint &b) noexcept
{
    return projective_distance(a.coords(), b.coords());
}

bool projectively_equal(const ProjPoint &a, const ProjPoint &b, double tol) noexcept
{
    return projective_distance(a, b) <= tol;
}

double ProjLine::incidence(const ProjPoint &p) const noexcept
{
    return std::abs(dot(m_dual.coords(), p.coords())) / (norm(m_dual.coords()) * norm(p.coords()));
}

std::array<Vec3, 2> ProjLine::span() const
{
    const Vec3 &l = m_dual.coords();
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(l[i]) < std::abs(l[k])) {
            k = i;
        }
    }
    Vec3 e{0.0, 0.0, 0.0};
    e[k] = 1.0;
    Vec3 a = cross(l, e);
    const double na = norm(a);
    for (auto &c : a) {
        c /= na;
    }
    const Vec3 ac{std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
    Vec3 b = cross(l, ac);
    const double nb = norm(b);
    for (auto &c : b) {
        c /= nb;
    }
    return {a, b};
}

ProjLine line_through(const ProjPoint &a, const ProjPoint &b)
{
    return ProjLine(cross(a.coords(), b.coords()));
}

ProjPoint intersection(const ProjLine &a, const ProjLine &b)
{
    return ProjPoint(cross(a.dual().coords(), b.dual().coords()));
}

bool lexicographic_less(const ProjPoint &a, const ProjPoint &b) noexcept
{
    auto key = [](const ProjPoint &p) {
        return std::make_tuple(p[0].real(), p[0].imag(), p[1].real(), p[1].imag(), p[2].real(), p[2].imag());
    };
    return key(a) < key(b);
}

} // namespace elliptica
