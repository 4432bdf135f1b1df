#include "elliptica/weierstrass.hpp"

#include "elliptica/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elliptica {

Weierstrass::Weierstrass(const Lattice &L, int trunc)
    : m_lattice(L), m_theta(L.tau(), trunc), m_laurent_radius(0.4 * std::abs(L.omega1()))
{
    const complex w1 = L.omega1();
    const complex z0 = 0.3 * w1;
    const complex v0 = z0 / w1 - 0.5 * (1.0 + L.tau());
    const auto jet = m_theta.jet(v0, 2);
    m_offset = laurent(z0)[0] + jet.log_d2() / (w1 * w1);
}

std::array<complex, 2> Weierstrass::laurent(complex z) const
{
    const auto &c = m_lattice.laurent_coefficients();
    const complex w = z * z;
    // sum_k c_k w^(k-1) and its derivative in w.
    complex s = 0.0, ds = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        const double power = static_cast<double>(i + 1);
        s = s * w + c[i];
        ds = ds * w + power * c[i];
    }
    s *= w;
    const complex p = 1.0 / w + s;
    // d/dz [w^(k-1)] = 2 (k-1) z^(2k-3)
    const complex dp = -2.0 / (w * z) + 2.0 * ds * z;
    return {p, dp};
}

std::array<complex, 2> Weierstrass::finite(complex z) const
{
    const complex r = z - m_lattice.nearest_point(z);
    if (std::abs(r) <= m_laurent_radius) {
        return laurent(r);
    }
    const complex w1 = m_lattice.omega1();
    const complex v = r / w1 - 0.5 * (1.0 + m_lattice.tau());
    const auto jet = m_theta.jet(v, 3);
    const complex w1sq = w1 * w1;
    return {m_offset - jet.log_d2() / w1sq, -jet.log_d3() / (w1sq * w1)};
}

WpPair Weierstrass::operator()(complex z) const
{
    if (m_lattice.distance_to_lattice(z) <= default_pole_threshold * std::abs(m_lattice.omega1())) {
        return {};
    }
    const auto v = finite(z);
    return {v[0], v[1]};
}

complex Weierstrass::polish_pair(complex z, complex x, complex y) const
{
    // Gauss-Newton on the consistent pair of equations wp = x, wp' = y.
    const double s = 1.0 / (1.0 + std::sqrt(std::abs(x)));
    for (int it = 0; it < 60; ++it) {
        const auto v = finite(z);
        const complex r0 = v[0] - x;
        const complex r1 = (v[1] - y) * s;
        const complex j0 = v[1];
        const complex j1 = second_derivative(v[0]) * s;
        const double norm = std::norm(j0) + std::norm(j1);
        if (norm == 0.0) {
            break;
        }
        complex step = -(std::conj(j0) * r0 + std::conj(j1) * r1) / norm;
        const double limit = 0.25 * std::abs(m_lattice.omega1());
        if (std::abs(step) > limit) {
            step *= limit / std::abs(step);
        }
        z += step;
        if (std::abs(step) < 1e-15 * std::abs(m_lattice.omega1())) {
            break;
        }
    }
    return z;
}

complex Weierstrass::inverse(const SphereValue &w) const
{
    if (w.is_infinite()) {
        return 0.0;
    }
    const complex x = w.value();
    const complex g2 = m_lattice.g2(), g3 = m_lattice.g3();
    // Either square root of the cubic gives a valid wp' value.
    const complex y = std::sqrt(4.0 * x * x * x - g2 * x - g3);
    return inverse_pair(x, y);
}

complex Weierstrass::inverse_pair(complex x, complex y) const
{
    const double s = 1.0 / (1.0 + std::sqrt(std::abs(x)));
    auto misfit = [&](complex z) {
        const auto v = finite(z);
        return std::abs(v[0] - x) + std::abs(v[1] - y) * s;
    };

    complex best = 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    auto consider = [&](complex seed) {
        const complex z = polish_pair(seed, x, y);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return;
        }
        const double e = misfit(z);
        if (e < best_err) {
            best_err = e;
            best = z;
        }
    };

    if (y != 0.0) {
        // Near the pole wp/wp' ~ -z/2.
        consider(-2.0 * x / y);
    }
    if (!(best_err < 1e-11 * (1.0 + std::abs(x)))) {
        constexpr int n = 10;
        std::vector<std::pair<double, complex>> seeds;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const complex z = m_lattice.point((i + 0.5) / n, (j + 0.5) / n);
                seeds.emplace_back(misfit(z), z);
            }
        }
        std::partial_sort(seeds.begin(), seeds.begin() + 6, seeds.end(),
                          [](const auto &a, const auto &b) { return a.first < b.first; });
        for (int k = 0; k < 6; ++k) {
            consider(seeds[static_cast<std::size_t>(k)].second);
            if (best_err < 1e-11 * (1.0 + std::abs(x))) {
                break;
            }
        }
    }
    if (!(best_err < 1e-7 * (1.0 + std::abs(x) + std::abs(y) * s))) {
        throw Error(ErrorKind::no_preimage, "unembed", "Newton refinement did not converge from any seed");
    }
    return reduce_mod_lattice(best, m_lattice).rep;
}

WpPair wp_pair(complex z, const Lattice &L)
{
    return Weierstrass(L)(z);
}

WpPair wp_pair_direct(complex z, const Lattice &L, int radius)
{
    if (L.distance_to_lattice(z) <= default_pole_threshold * std::abs(L.omega1())) {
        return {};
    }
    const complex r = z - L.nearest_point(z);
    complex p = 1.0 / (r * r);
    complex dp = -2.0 / (r * r * r);
    for (int m = -radius; m <= radius; ++m) {
        for (int n = -radius; n <= radius; ++n) {
            if (m == 0 && n == 0) {
                continue;
            }
            const complex w = L.point(m, n);
            const complex d = r - w;
            p += 1.0 / (d * d) - 1.0 / (w * w);
            dp += -2.0 / (d * d * d);
        }
    }
    return {p, dp};
}

} // namespace elliptica
