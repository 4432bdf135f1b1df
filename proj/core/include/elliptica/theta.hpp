#pragma once

#include "elliptica/lattice.hpp"

#include <array>
#include <vector>

namespace elliptica {

inline constexpr int default_theta_trunc = 24;

/// theta(u) = sum_n exp(pi i (n^2 tau + 2 n u)), |n| <= trunc, in the
/// coordinate u = z / omega1 of the normalized lattice Z + tau Z.
///
/// Arguments are first recentered with the quasi-periods: u = u0 + k tau + m,
/// |Im u0| <= Im(tau)/2, and theta(u) = exp(-pi i (k^2 tau + 2 k u0)) theta(u0).
/// The series is evaluated at u0 only, where the terms decay like
/// exp(-pi Im(tau) n (n - 1)), so the omitted tail is below theta_tail_bound().
/// Terms n and -n are paired, which makes theta even at the summation level.
class ThetaSeries {
public:
    explicit ThetaSeries(complex tau, int trunc = default_theta_trunc);

    complex tau() const noexcept { return m_tau; }
    int trunc() const noexcept { return static_cast<int>(m_coeffs.size()); }

    // Value and derivatives of the recentered series, with the exponential
    // prefactor kept separately to avoid overflow.
    struct Jet {
        complex log_scale; // theta(u) = exp(log_scale) * d[0]
        complex slope;     // derivative of log_scale in u
        std::array<complex, 4> d;

        complex value() const { return std::exp(log_scale) * d[0]; }
        // (log theta)', (log theta)'', (log theta)''' in u.
        complex log_d1() const { return d[1] / d[0] + slope; }
        complex log_d2() const
        {
            const complex r = d[1] / d[0];
            return d[2] / d[0] - r * r;
        }
        complex log_d3() const
        {
            const complex r1 = d[1] / d[0];
            return d[3] / d[0] - 3.0 * (d[2] / d[0]) * r1 + 2.0 * r1 * r1 * r1;
        }
    };

    // order = highest derivative needed (0..3).
    Jet jet(complex u, int order = 0) const;

    complex operator()(complex u) const { return jet(u, 0).value(); }

private:
    complex m_tau;
    std::vector<complex> m_coeffs; // exp(pi i n^2 tau), n = 1..trunc
};

double theta_tail_bound(complex tau, int trunc);

// theta(z / omega1).
complex theta(complex z, const Lattice &L, int trunc = default_theta_trunc);

// theta((z - x) / omega1 - (1 + tau)/2): simple zeros exactly on x + L.
complex theta_shifted(TorusPoint x, complex z, const Lattice &L, int trunc = default_theta_trunc);

} // namespace elliptica
