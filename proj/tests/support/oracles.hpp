#pragma once

// Reference computations for the tests. None of these call into the library
// numerics; they only share the complex type.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const complex two_pi_i{0.0, 2.0 * pi};
inline const complex eps{-0.5, 0.86602540378443864676};

struct Gen {
    explicit Gen(std::uint64_t seed) : engine(seed) {}
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    complex disc(double r)
    {
        for (;;) {
            const complex z(real(-r, r), real(-r, r));
            if (std::abs(z) <= r) {
                return z;
            }
        }
    }
    complex gauss() { return {std::normal_distribution<double>()(engine), std::normal_distribution<double>()(engine)}; }
    std::mt19937_64 engine;
};

// Coordinates (a, b) of z = a w1 + b w2 by Cramer's rule.
inline std::array<double, 2> coords(complex z, complex w1, complex w2)
{
    const double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    const double a = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
    const double b = (w1.real() * z.imag() - w1.imag() * z.real()) / det;
    return {a, b};
}

// Distance from z to the lattice w1 Z + w2 Z by scanning nearby lattice points.
inline double lattice_distance(complex z, complex w1, complex w2)
{
    const auto ab = coords(z, w1, w2);
    const double a0 = std::floor(ab[0]), b0 = std::floor(ab[1]);
    double best = INFINITY;
    for (int i = -2; i <= 3; ++i) {
        for (int j = -2; j <= 3; ++j) {
            best = std::min(best, std::abs(z - (a0 + i) * w1 - (b0 + j) * w2));
        }
    }
    return best;
}

// Plain partial sum of exp(pi i (n^2 tau + 2 n u)).
inline complex theta_naive(complex u, complex tau, int N = 80)
{
    complex s = 0.0;
    for (int n = -N; n <= N; ++n) {
        s += std::exp(complex(0.0, pi) * (double(n) * n * tau + 2.0 * n * u));
    }
    return s;
}

// wp and wp' of w1 Z + w2 Z from the q-expansion
// wp(u) = (2 pi i)^2 (1/12 + sum_n q^n x/(1 - q^n x)^2 - 2 sum_{n>0} q^n/(1 - q^n)^2),
// x = exp(2 pi i u), u = z / w1, q = exp(2 pi i tau).
inline std::array<complex, 2> wp_qseries(complex z, complex w1, complex w2)
{
    const complex tau = w2 / w1;
    const int N = 4 + static_cast<int>(40.0 / (2.0 * pi * tau.imag()));
    complex u = z / w1;
    // shift to 0 <= Im-coordinate < 1 in tau
    const double k = std::floor(u.imag() / tau.imag());
    u -= k * tau;
    u -= std::floor(u.real());
    const complex q = std::exp(two_pi_i * tau);
    const complex x = std::exp(two_pi_i * u);
    complex p = 1.0 / 12.0, dp = 0.0;
    for (int n = -N; n <= N; ++n) {
        const complex y = std::pow(q, n) * x;
        const complex d = 1.0 - y;
        p += y / (d * d);
        dp += y * (1.0 + y) / (d * d * d);
    }
    complex qn = 1.0;
    for (int n = 1; n <= N; ++n) {
        qn *= q;
        p -= 2.0 * qn / ((1.0 - qn) * (1.0 - qn));
    }
    const complex c = two_pi_i / w1;
    return {c * c * p, c * c * c * dp};
}

// Truncated absolutely convergent sum of w^-k over the nonzero lattice points.
inline complex eisenstein_direct(complex w1, complex w2, int k, int R)
{
    complex s = 0.0;
    for (int m = -R; m <= R; ++m) {
        for (int n = -R; n <= R; ++n) {
            if (m || n) {
                s += std::pow(double(m) * w1 + double(n) * w2, -k);
            }
        }
    }
    return s;
}

// Chordal distance on the Riemann sphere; inf encoded as a non-finite value.
inline double chordal(complex a, complex b)
{
    const bool ia = !std::isfinite(std::abs(a)), ib = !std::isfinite(std::abs(b));
    if (ia && ib) {
        return 0.0;
    }
    if (ia) {
        return 2.0 / std::sqrt(1.0 + std::norm(b));
    }
    if (ib) {
        return 2.0 / std::sqrt(1.0 + std::norm(a));
    }
    return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

using V3 = std::array<complex, 3>;

inline complex det3(const V3 &a, const V3 &b, const V3 &c)
{
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline double vnorm(const V3 &a)
{
    return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// |a x b| / (|a| |b|).
inline double proj_dist(const V3 &a, const V3 &b)
{
    const V3 c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    return vnorm(c) / (vnorm(a) * vnorm(b));
}

// Weierstrass cubic y^2 z - 4 x^3 + g2 x z^2 + g3 z^3 and its gradient.
inline complex weierstrass_form(const V3 &v, complex g2, complex g3)
{
    const complex x = v[0], y = v[1], z = v[2];
    return y * y * z - 4.0 * x * x * x + g2 * x * z * z + g3 * z * z * z;
}

inline V3 weierstrass_gradient(const V3 &v, complex g2, complex g3)
{
    const complex x = v[0], y = v[1], z = v[2];
    return {-12.0 * x * x + g2 * z * z, 2.0 * y * z, y * y + 2.0 * g2 * x * z + 3.0 * g3 * z * z};
}

// Hesse cubic x^3 + y^3 + z^3 + t xyz and its gradient.
inline complex hesse_form(const V3 &v, complex t)
{
    return v[0] * v[0] * v[0] + v[1] * v[1] * v[1] + v[2] * v[2] * v[2] + t * v[0] * v[1] * v[2];
}

inline V3 hesse_gradient(const V3 &v, complex t)
{
    return {3.0 * v[0] * v[0] + t * v[1] * v[2], 3.0 * v[1] * v[1] + t * v[0] * v[2], 3.0 * v[2] * v[2] + t * v[0] * v[1]};
}

// Uniform point of the fundamental parallelogram.
inline complex torus_point(Gen &g, complex w1, complex w2)
{
    return g.real(0, 1) * w1 + g.real(0, 1) * w2;
}

} // namespace oracle
