#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace elliptica {

using complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// A point of the torus C/L, stored by its representative in the half-open
// fundamental parallelogram {a*omega1 + b*omega2 : 0 <= a, b < 1}. The owning
// lattice is passed explicitly to every operation.
struct TorusPoint {
    complex rep;

    friend bool operator==(const TorusPoint &, const TorusPoint &) = default;
};

enum class LatticeKind { square, hexagonal, generic };

std::string_view to_string(LatticeKind kind) noexcept;

struct LatticeClass {
    LatticeKind kind;
    int automorphism_count;
};

/// Rank-2 lattice omega1*Z + omega2*Z with a Gauss-reduced, positively oriented
/// basis: tau = omega2/omega1 satisfies Im tau > 0, |Re tau| <= 1/2, |tau| >= 1.
///
/// The Weierstrass invariants and the Laurent coefficients of the Weierstrass
/// function are computed once at construction.
class Lattice {
public:
    complex omega1() const noexcept { return m_omega1; }
    complex omega2() const noexcept { return m_omega2; }
    complex tau() const noexcept { return m_tau; }

    complex g2() const noexcept { return m_g2; }
    complex g3() const noexcept { return m_g3; }

    // c_k for k = 2, 3, ... (element k - 2) in wp(z) = z^-2 + sum c_k z^(2k-2).
    const std::vector<complex> &laurent_coefficients() const noexcept { return m_laurent; }

    // Real coordinates (a, b) with z = a*omega1 + b*omega2.
    std::array<double, 2> coordinates(complex z) const noexcept;
    complex point(double a, double b) const noexcept { return a * m_omega1 + b * m_omega2; }

    complex nearest_point(complex z) const noexcept;
    double distance_to_lattice(complex z) const noexcept { return std::abs(z - nearest_point(z)); }

    // Positive area of the fundamental parallelogram.
    double area() const noexcept;

private:
    Lattice(complex w1, complex w2);
    friend Lattice make_lattice(complex w1, complex w2);

    complex m_omega1;
    complex m_omega2;
    complex m_tau;
    complex m_g2;
    complex m_g3;
    std::vector<complex> m_laurent;
};

// Throws ErrorKind::degenerate_generators when |Im(w2/w1)| < 1e-12 |w2/w1| or w1 = 0.
Lattice make_lattice(complex w1, complex w2);
inline Lattice make_lattice_from_tau(complex tau) { return make_lattice(1.0, tau); }

LatticeClass classify_lattice(const Lattice &L, double tol = 1e-9);

inline constexpr int default_eisenstein_radius = 200;

// Truncated lattice sum of w^-k over nonzero m*omega1 + n*omega2 with
// |m|, |n| <= radius. Odd k gives exactly 0. Throws invalid_order for k < 3.
complex eisenstein_series(const Lattice &L, int k, int radius = default_eisenstein_radius);

// Upper bound on the omitted tail: 8 s^-k radius^(2-k) / (k-2), where
// s = min |a*omega1 + b*omega2| over max(|a|,|b|) = 1.
double eisenstein_tail_bound(const Lattice &L, int k, int radius);

struct WeierstrassInvariants {
    complex g2;
    complex g3;
};

// g2 = 60 G4, g3 = 140 G6, evaluated through the q-expansions of the
// normalized Eisenstein series (accurate to machine precision).
WeierstrassInvariants weierstrass_invariants(const Lattice &L);

TorusPoint reduce_mod_lattice(complex z, const Lattice &L);

// Distance between a and b on the torus.
inline double torus_distance(complex a, complex b, const Lattice &L)
{
    return L.distance_to_lattice(a - b);
}

// The n^2 points (a*omega1 + b*omega2)/n, 0 <= a, b < n, in row-major (a, b) order.
std::vector<TorusPoint> torsion_points(const Lattice &L, int n);

} // namespace elliptica
