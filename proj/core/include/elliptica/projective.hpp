#pragma once

#include <array>
#include <complex>

namespace elliptica {

using complex = std::complex<double>;
using Vec3 = std::array<complex, 3>;

Vec3 cross(const Vec3 &a, const Vec3 &b) noexcept;
complex dot(const Vec3 &a, const Vec3 &b) noexcept; // bilinear, no conjugation
double norm(const Vec3 &a) noexcept;                 // Euclidean length

/// Point of P^2 with the largest-modulus coordinate scaled to exactly 1.
class ProjPoint {
public:
    ProjPoint() : m_coords{0.0, 0.0, 1.0} {}
    // Throws invalid_argument for the zero vector.
    explicit ProjPoint(const Vec3 &v);
    ProjPoint(complex x, complex y, complex z) : ProjPoint(Vec3{x, y, z}) {}

    const Vec3 &coords() const noexcept { return m_coords; }
    complex operator[](std::size_t i) const noexcept { return m_coords[i]; }

private:
    Vec3 m_coords;
};

// |a x b| / (|a| |b|): zero iff the points coincide projectively.
double projective_distance(const ProjPoint &a, const ProjPoint &b) noexcept;
double projective_distance(const Vec3 &a, const Vec3 &b) noexcept;

bool projectively_equal(const ProjPoint &a, const ProjPoint &b, double tol = 1e-10) noexcept;

/// Line aX + bY + cZ = 0, stored by its dual point.
class ProjLine {
public:
    ProjLine() = default;
    explicit ProjLine(const ProjPoint &dual) : m_dual(dual) {}
    explicit ProjLine(const Vec3 &coeffs) : m_dual(coeffs) {}

    const ProjPoint &dual() const noexcept { return m_dual; }

    // |l . p| / (|l| |p|).
    double incidence(const ProjPoint &p) const noexcept;
    bool contains(const ProjPoint &p, double tol = 1e-8) const noexcept { return incidence(p) <= tol; }

    // Two points spanning the line, orthonormal in the Hermitian sense.
    std::array<Vec3, 2> span() const;

private:
    ProjPoint m_dual;
};

ProjLine line_through(const ProjPoint &a, const ProjPoint &b);
ProjPoint intersection(const ProjLine &a, const ProjLine &b);

// Lexicographic order on (Re, Im) of the normalized coordinates.
bool lexicographic_less(const ProjPoint &a, const ProjPoint &b) noexcept;

} // namespace elliptica
