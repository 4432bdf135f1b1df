#pragma once

#include "elliptica/divisor.hpp"
#include "elliptica/sphere.hpp"
#include "elliptica/theta.hpp"
#include "elliptica/weierstrass.hpp"

#include <memory>
#include <utility>

namespace elliptica {

inline constexpr double default_abel_tolerance = 1e-9;

/// f(z) = scale * prod theta^(x_i)(z) / prod theta^(y_i)(z) for a zero divisor
/// x and a pole divisor y of equal degree satisfying the Abel condition.
class EllipticFunction {
public:
    const Lattice &lattice() const noexcept { return m_lattice; }
    const Divisor &zeros() const noexcept { return m_zeros; }
    const Divisor &poles() const noexcept { return m_poles; }
    complex scale() const noexcept { return m_scale; }
    int degree() const noexcept { return m_zeros.degree(); }
    int trunc() const noexcept { return m_theta->trunc(); }

    EllipticFunction with_scale(complex scale) const;

    SphereValue operator()(complex z) const;

    // f'/f and its derivative (finite off the divisor supports).
    complex log_derivative(complex z) const;
    std::array<complex, 2> log_derivative_jet(complex z) const;

    // View for divisor-tools (value is finite off the poles).
    TorusFunction as_torus_function() const;

    // f' as a function with analytic log-derivative f''/f'.
    TorusFunction derivative_function() const;

    // The lifts used in the theta quotient (they sum to zero exactly).
    const std::vector<complex> &zero_lifts() const noexcept { return m_zero_lifts; }
    const std::vector<complex> &pole_lifts() const noexcept { return m_pole_lifts; }

private:
    EllipticFunction(Lattice L, Divisor zeros, Divisor poles, int trunc);
    friend EllipticFunction build_from_divisors(const Divisor &, const Divisor &, const Lattice &, int, double);

    complex shifted_arg(complex z, complex lift) const;
    // Value of the quotient at reduced z, with log-prefactor folded in.
    complex quotient(complex z) const;

    Lattice m_lattice;
    Divisor m_zeros;
    Divisor m_poles;
    complex m_scale = 1.0;
    std::vector<complex> m_zero_lifts;
    std::vector<complex> m_pole_lifts;
    std::shared_ptr<const ThetaSeries> m_theta;
};

// Throws degree_mismatch, abel_violation (defect in the message), overlapping_divisors.
EllipticFunction build_from_divisors(const Divisor &zeros, const Divisor &poles, const Lattice &L,
                                     int trunc = default_theta_trunc, double abel_tol = default_abel_tolerance);

SphereValue eval_elliptic(const EllipticFunction &f, complex z);

// Ramification divisor: zeros of f' plus (m - 1) at every pole of order m.
Divisor critical_points(const EllipticFunction &f, const LocateOptions &opts = {});

// Sup over an n x n grid of the chordal distance between f and g o wp o tau_{-t}.
double decomposition_error(const EllipticFunction &f, const MobiusTransform &g, complex t, int n = 12);

struct Degree2Decomposition {
    MobiusTransform g;
    TorusPoint t;
    double error;
};

inline constexpr double default_reconstruction_tolerance = 1e-6;

// f = g o wp o tau_{-t}. Throws not_degree_2 and reconstruction_failure.
Degree2Decomposition decompose_degree2(const EllipticFunction &f, const LocateOptions &opts = {},
                                       double tol = default_reconstruction_tolerance);

// Every admissible (g, t), ordered by increasing distance of t to the lattice.
std::vector<Degree2Decomposition> decompose_degree2_all(const EllipticFunction &f, const LocateOptions &opts = {},
                                                        double tol = default_reconstruction_tolerance);

struct StabilizerElement {
    MobiusTransform g;
    TorusPoint t;
};

// The four pairs (g_t, t), t in {0, b1, b2, b3}, with g_t o wp o tau_{-t} = wp.
std::vector<StabilizerElement> wp_stabilizer(const Lattice &L);

// wp as a theta quotient: zeros {y, -y} with wp(y) = 0, double pole at 0, scaled to match.
EllipticFunction wp_as_elliptic(const Lattice &L);

// g o wp o tau_{-t} as a theta quotient.
EllipticFunction synthesize_degree2(const Lattice &L, const MobiusTransform &g, complex t);

} // namespace elliptica
