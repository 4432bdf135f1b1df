#include "elliptica/theta.hpp"

#include "elliptica/error.hpp"

#include <cmath>

namespace elliptica {

ThetaSeries::ThetaSeries(complex tau, int trunc) : m_tau(tau)
{
    if (trunc < 1) {
        throw Error(ErrorKind::invalid_argument, "theta", "truncation must be at least 1");
    }
    if (!(tau.imag() > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "theta", "Im(tau) must be positive");
    }
    m_coeffs.reserve(static_cast<std::size_t>(trunc));
    for (int n = 1; n <= trunc; ++n) {
        const double n2 = static_cast<double>(n) * n;
        m_coeffs.push_back(std::exp(complex(0.0, pi) * n2 * tau));
    }
}

ThetaSeries::Jet ThetaSeries::jet(complex u, int order) const
{
    const double k = std::round(u.imag() / m_tau.imag());
    complex u0 = u - k * m_tau;
    u0 -= std::round(u0.real());

    Jet out{};
    out.log_scale = complex(0.0, -pi) * (k * k * m_tau + 2.0 * k * u0);
    out.slope = complex(0.0, -2.0 * pi * k);

    // s_n = b^n + b^-n and a_n = b^n - b^-n with b = exp(2 pi i u0),
    // both driven by the Chebyshev recurrence in s_1.
    const double x = 2.0 * pi * u0.real();
    const double y = 2.0 * pi * u0.imag();
    const complex s1(2.0 * std::cos(x) * std::cosh(y), -2.0 * std::sin(x) * std::sinh(y));
    const complex sin_b(std::sin(x) * std::cosh(y), std::cos(x) * std::sinh(y));
    const complex a1 = complex(0.0, 2.0) * sin_b;

    complex s_prev = 2.0, s_cur = s1;
    complex a_prev = 0.0, a_cur = a1;
    complex t0 = 1.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
    const complex two_pi_i(0.0, 2.0 * pi);
    for (std::size_t idx = 0; idx < m_coeffs.size(); ++idx) {
        const double n = static_cast<double>(idx + 1);
        const complex c = m_coeffs[idx];
        t0 += c * s_cur;
        if (order >= 1) {
            const complex f = two_pi_i * n;
            t1 += c * f * a_cur;
            if (order >= 2) {
                t2 += c * f * f * s_cur;
                if (order >= 3) {
                    t3 += c * f * f * f * a_cur;
                }
            }
        }
        const complex s_next = s1 * s_cur - s_prev;
        s_prev = s_cur;
        s_cur = s_next;
        const complex a_next = s1 * a_cur - a_prev;
        a_prev = a_cur;
        a_cur = a_next;
    }
    out.d = {t0, t1, t2, t3};
    return out;
}

double theta_tail_bound(complex tau, int trunc)
{
    double sum = 0.0;
    for (int n = trunc + 1; n < trunc + 60; ++n) {
        sum += 2.0 * std::exp(-pi * tau.imag() * (static_cast<double>(n) * n - n));
    }
    return sum;
}

complex theta(complex z, const Lattice &L, int trunc)
{
    return ThetaSeries(L.tau(), trunc)(z / L.omega1());
}

complex theta_shifted(TorusPoint x, complex z, const Lattice &L, int trunc)
{
    const complex half = 0.5 * (1.0 + L.tau());
    return ThetaSeries(L.tau(), trunc)((z - x.rep) / L.omega1() - half);
}

} // namespace elliptica
