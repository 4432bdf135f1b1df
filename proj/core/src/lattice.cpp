#include "elliptica/lattice.hpp"

#include "elliptica/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elliptica {

namespace {

constexpr int laurent_terms = 40;

// Lambert series sum n^p q^n / (1 - q^n) until the terms drop below 1e-20.
complex lambert_sum(complex q, int p)
{
    complex sum = 0.0;
    complex qn = q;
    for (int n = 1; n < 400; ++n) {
        const double np = std::pow(static_cast<double>(n), p);
        const complex term = np * qn / (1.0 - qn);
        sum += term;
        if (std::abs(term) < 1e-20 * (1.0 + std::abs(sum)) && n > 2) {
            break;
        }
        qn *= q;
    }
    return sum;
}

WeierstrassInvariants invariants_from_basis(complex w1, complex tau)
{
    const complex q = std::exp(complex(0.0, 2.0 * pi) * tau);
    const complex e4 = 1.0 + 240.0 * lambert_sum(q, 3);
    const complex e6 = 1.0 - 504.0 * lambert_sum(q, 5);
    const double pi4 = pi * pi * pi * pi;
    const double pi6 = pi4 * pi * pi;
    const complex w2 = w1 * w1;
    return {(4.0 * pi4 / 3.0) * e4 / (w2 * w2), (8.0 * pi6 / 27.0) * e6 / (w2 * w2 * w2)};
}

std::vector<complex> laurent_from_invariants(complex g2, complex g3)
{
    // c_2 = g2/20, c_3 = g3/28, c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}.
    std::vector<complex> c(laurent_terms);
    c[0] = g2 / 20.0;
    c[1] = g3 / 28.0;
    for (int k = 4; k < laurent_terms + 2; ++k) {
        complex s = 0.0;
        for (int m = 2; m <= k - 2; ++m) {
            s += c[m - 2] * c[k - m - 2];
        }
        c[k - 2] = 3.0 / static_cast<double>((2 * k + 1) * (k - 3)) * s;
    }
    return c;
}

double snap_to_integer(double x)
{
    const double r = std::round(x);
    return std::abs(x - r) < 1e-12 ? r : x;
}

} // namespace

std::string_view to_string(LatticeKind kind) noexcept
{
    switch (kind) {
    case LatticeKind::square: return "square";
    case LatticeKind::hexagonal: return "hexagonal";
    case LatticeKind::generic: return "generic";
    }
    return "generic";
}

Lattice::Lattice(complex w1, complex w2) : m_omega1(w1), m_omega2(w2), m_tau(w2 / w1)
{
    const auto inv = invariants_from_basis(m_omega1, m_tau);
    m_g2 = inv.g2;
    m_g3 = inv.g3;
    m_laurent = laurent_from_invariants(m_g2, m_g3);
}

Lattice make_lattice(complex w1, complex w2)
{
    if (w1 == 0.0 || !std::isfinite(std::abs(w1)) || !std::isfinite(std::abs(w2))) {
        throw Error(ErrorKind::degenerate_generators, "make_lattice", "first generator is zero or not finite");
    }
    complex ratio = w2 / w1;
    if (std::abs(ratio.imag()) < 1e-12 * std::abs(ratio)) {
        throw Error(ErrorKind::degenerate_generators, "make_lattice", "generators are linearly dependent over R");
    }
    if (ratio.imag() < 0.0) {
        w2 = -w2;
    }

    // Gauss reduction of tau into the modular fundamental domain.
    for (int iter = 0; iter < 10000; ++iter) {
        complex tau = w2 / w1;
        const double m = std::round(tau.real());
        if (m != 0.0) {
            w2 -= m * w1;
            tau = w2 / w1;
        }
        if (std::norm(tau) < 1.0 - 1e-15) {
            const complex old = w1;
            w1 = w2;
            w2 = -old;
            continue;
        }
        break;
    }

    // Canonical representative on the boundary of the fundamental domain.
    complex tau = w2 / w1;
    if (tau.real() > 0.5 - 1e-14) {
        w2 -= w1;
        tau = w2 / w1;
    }
    if (std::abs(std::abs(tau) - 1.0) < 1e-14 && tau.real() > 1e-14) {
        const complex old = w1;
        w1 = w2;
        w2 = -old;
    }
    return Lattice(w1, w2);
}

std::array<double, 2> Lattice::coordinates(complex z) const noexcept
{
    const complex t = z / m_omega1;
    const double b = t.imag() / m_tau.imag();
    const double a = t.real() - b * m_tau.real();
    return {a, b};
}

complex Lattice::nearest_point(complex z) const noexcept
{
    const auto [a, b] = coordinates(z);
    const double ra = std::round(a);
    const double rb = std::round(b);
    complex best = point(ra, rb);
    double best_dist = std::abs(z - best);
    for (int da = -1; da <= 1; ++da) {
        for (int db = -1; db <= 1; ++db) {
            const complex cand = point(ra + da, rb + db);
            const double d = std::abs(z - cand);
            if (d < best_dist) {
                best_dist = d;
                best = cand;
            }
        }
    }
    return best;
}

double Lattice::area() const noexcept
{
    return std::abs((std::conj(m_omega1) * m_omega2).imag());
}

LatticeClass classify_lattice(const Lattice &L, double tol)
{
    const complex tau = L.tau();
    const complex rho(0.5, std::sqrt(3.0) / 2.0);
    if (std::abs(tau - complex(0.0, 1.0)) < tol) {
        return {LatticeKind::square, 4};
    }
    if (std::abs(tau - rho) < tol || std::abs(tau - (rho - 1.0)) < tol) {
        return {LatticeKind::hexagonal, 6};
    }
    return {LatticeKind::generic, 2};
}

complex eisenstein_series(const Lattice &L, int k, int radius)
{
    if (k < 3) {
        throw Error(ErrorKind::invalid_order, "eisenstein_series", "order must be at least 3");
    }
    if (radius < 1) {
        throw Error(ErrorKind::invalid_argument, "eisenstein_series", "radius must be at least 1");
    }
    if (k % 2 != 0) {
        return 0.0;
    }
    // Even k: w and -w contribute equally, so sum over a half plane and double.
    const complex w1 = L.omega1();
    const complex w2 = L.omega2();
    complex total = 0.0;
    for (int n = 0; n <= radius; ++n) {
        complex row = 0.0;
        for (int m = -radius; m <= radius; ++m) {
            if (n == 0 && m <= 0) {
                continue;
            }
            const complex w = static_cast<double>(m) * w1 + static_cast<double>(n) * w2;
            const complex inv2 = 1.0 / (w * w);
            complex p = 1.0;
            for (int j = 0; j < k / 2; ++j) {
                p *= inv2;
            }
            row += p;
        }
        total += row;
    }
    return 2.0 * total;
}

double eisenstein_tail_bound(const Lattice &L, int k, int radius)
{
    if (k < 3) {
        throw Error(ErrorKind::invalid_order, "eisenstein_tail_bound", "order must be at least 3");
    }
    // Distance from 0 to the segment p + t d, t in [-1, 1].
    auto seg_dist = [](complex p, complex d) {
        const double t = std::clamp(-(std::conj(d) * p).real() / std::norm(d), -1.0, 1.0);
        return std::abs(p + t * d);
    };
    const complex w1 = L.omega1();
    const complex w2 = L.omega2();
    const double s = std::min({seg_dist(w1, w2), seg_dist(-w1, w2), seg_dist(w2, w1), seg_dist(-w2, w1)});
    return 8.0 * std::pow(s, -k) * std::pow(static_cast<double>(radius), 2 - k) / (k - 2);
}

WeierstrassInvariants weierstrass_invariants(const Lattice &L)
{
    return {L.g2(), L.g3()};
}

TorusPoint reduce_mod_lattice(complex z, const Lattice &L)
{
    auto [a, b] = L.coordinates(z);
    a = snap_to_integer(a);
    b = snap_to_integer(b);
    const double fa = std::floor(a);
    const double fb = std::floor(b);
    if (a == fa && b == fb) {
        return {complex(0.0, 0.0)};
    }
    complex rep = z - fa * L.omega1() - fb * L.omega2();
    if (a == fa) {
        rep = (b - fb) * L.omega2();
    } else if (b == fb) {
        rep = (a - fa) * L.omega1();
    }
    return {rep};
}

std::vector<TorusPoint> torsion_points(const Lattice &L, int n)
{
    if (n < 1) {
        throw Error(ErrorKind::invalid_argument, "torsion_points", "n must be positive");
    }
    std::vector<TorusPoint> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            out.push_back({L.point(static_cast<double>(a) / n, static_cast<double>(b) / n)});
        }
    }
    return out;
}

} // namespace elliptica
