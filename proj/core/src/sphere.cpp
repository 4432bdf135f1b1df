#include "elliptica/sphere.hpp"

#include "elliptica/error.hpp"

#include <algorithm>
#include <cmath>

namespace elliptica {

SphereValue SphereValue::from_homogeneous(complex num, complex den, double rel_tol)
{
    if (std::abs(den) <= rel_tol * std::abs(num) || den == 0.0) {
        return infinity();
    }
    return SphereValue(num / den);
}

double chordal_distance(const SphereValue &a, const SphereValue &b) noexcept
{
    if (a.is_infinite() && b.is_infinite()) {
        return 0.0;
    }
    if (a.is_infinite()) {
        return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
    }
    if (b.is_infinite()) {
        return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
    }
    const complex x = a.value();
    const complex y = b.value();
    return 2.0 * std::abs(x - y) / std::sqrt((1.0 + std::norm(x)) * (1.0 + std::norm(y)));
}

MobiusTransform::MobiusTransform(complex a, complex b, complex c, complex d) : m_a(a), m_b(b), m_c(c), m_d(d)
{
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (!(scale > 0.0) || std::abs(a * d - b * c) <= 1e-14 * scale * scale) {
        throw Error(ErrorKind::invalid_argument, "MobiusTransform", "ad - bc must be nonzero");
    }
}

namespace {

using Vec2 = std::array<complex, 2>;

complex det2(const Vec2 &u, const Vec2 &v) { return u[0] * v[1] - u[1] * v[0]; }

// Matrix rows (r0, r1) sending v1 -> [0:1], v2 -> [1:1], v3 -> [1:0].
std::array<Vec2, 2> to_standard(const Vec2 &v1, const Vec2 &v2, const Vec2 &v3)
{
    // Row r annihilating v: r = (v[1], -v[0]) so r.x = det(x, v) up to sign.
    const complex alpha = det2(v2, v3);
    const complex beta = det2(v2, v1);
    const Vec2 r0{alpha * v1[1], -alpha * v1[0]};
    const Vec2 r1{beta * v3[1], -beta * v3[0]};
    return {r0, r1};
}

} // namespace

MobiusTransform MobiusTransform::from_three_points(const std::array<SphereValue, 3> &z, const std::array<SphereValue, 3> &w)
{
    const auto mz = to_standard(z[0].homogeneous(), z[1].homogeneous(), z[2].homogeneous());
    const auto mw = to_standard(w[0].homogeneous(), w[1].homogeneous(), w[2].homogeneous());
    // g = mw^-1 * mz; inverse of [[p, q], [r, s]] is [[s, -q], [-r, p]] up to scale.
    const complex p = mw[0][0], q = mw[0][1], r = mw[1][0], s = mw[1][1];
    const complex a = s * mz[0][0] - q * mz[1][0];
    const complex b = s * mz[0][1] - q * mz[1][1];
    const complex c = -r * mz[0][0] + p * mz[1][0];
    const complex d = -r * mz[0][1] + p * mz[1][1];
    return MobiusTransform(a, b, c, d).normalized();
}

SphereValue MobiusTransform::operator()(const SphereValue &z) const noexcept
{
    const auto h = z.homogeneous();
    const complex num = m_a * h[0] + m_b * h[1];
    const complex den = m_c * h[0] + m_d * h[1];
    return SphereValue::from_homogeneous(num, den, 1e-300);
}

MobiusTransform MobiusTransform::compose(const MobiusTransform &o) const
{
    return MobiusTransform(m_a * o.m_a + m_b * o.m_c, m_a * o.m_b + m_b * o.m_d, m_c * o.m_a + m_d * o.m_c,
                           m_c * o.m_b + m_d * o.m_d)
        .normalized();
}

MobiusTransform MobiusTransform::inverse() const
{
    return MobiusTransform(m_d, -m_b, -m_c, m_a).normalized();
}

MobiusTransform MobiusTransform::normalized() const
{
    const std::array<complex, 4> v{m_a, m_b, m_c, m_d};
    const complex lead = *std::max_element(v.begin(), v.end(),
                                           [](complex x, complex y) { return std::abs(x) < std::abs(y); });
    const complex inv = 1.0 / lead;
    MobiusTransform out = *this;
    out.m_a *= inv;
    out.m_b *= inv;
    out.m_c *= inv;
    out.m_d *= inv;
    return out;
}

bool MobiusTransform::projectively_equal(const MobiusTransform &other, double tol) const noexcept
{
    // Rank-one test on the 2x4 matrix of coefficient vectors.
    const std::array<complex, 4> u{m_a, m_b, m_c, m_d};
    const std::array<complex, 4> v{other.m_a, other.m_b, other.m_c, other.m_d};
    double nu = 0.0, nv = 0.0, worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        nu += std::norm(u[i]);
        nv += std::norm(v[i]);
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            worst = std::max(worst, std::abs(u[i] * v[j] - u[j] * v[i]));
        }
    }
    return worst <= tol * std::sqrt(nu * nv);
}

} // namespace elliptica
