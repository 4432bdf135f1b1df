#pragma once

#include "elliptica/lattice.hpp"
#include "elliptica/sphere.hpp"
#include "elliptica/theta.hpp"

namespace elliptica {

struct WpPair {
    SphereValue p;
    SphereValue pprime;
};

inline constexpr double default_pole_threshold = 1e-9;

/// Evaluator for the Weierstrass function of a fixed lattice.
///
/// Near a lattice point the Laurent expansion is summed; farther out wp is
/// taken from the second logarithmic derivative of theta, whose additive
/// constant is matched to the Laurent value once at construction.
class Weierstrass {
public:
    explicit Weierstrass(const Lattice &L, int trunc = default_theta_trunc);

    const Lattice &lattice() const noexcept { return m_lattice; }

    // (inf, inf) within pole_threshold * |omega1| of a lattice point.
    WpPair operator()(complex z) const;

    // Finite values; precondition: z is not a lattice point.
    std::array<complex, 2> finite(complex z) const;

    // wp'' = 6 wp^2 - g2/2.
    complex second_derivative(complex p) const { return 6.0 * p * p - 0.5 * m_lattice.g2(); }

    // A point z with wp(z) = w (the other preimage is -z); w = inf gives 0.
    complex inverse(const SphereValue &w) const;

    // The point z with (wp(z), wp'(z)) = (x, y); throws no_preimage on failure.
    complex inverse_pair(complex x, complex y) const;

private:
    std::array<complex, 2> laurent(complex z) const;
    complex polish_pair(complex z, complex x, complex y) const;

    Lattice m_lattice;
    ThetaSeries m_theta;
    complex m_offset;
    double m_laurent_radius;
};

WpPair wp_pair(complex z, const Lattice &L);

// Direct lattice summation over |m|, |n| <= radius (slow reference evaluation).
WpPair wp_pair_direct(complex z, const Lattice &L, int radius = 400);

} // namespace elliptica
