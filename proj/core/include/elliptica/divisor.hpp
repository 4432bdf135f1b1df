#pragma once

#include "elliptica/lattice.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace elliptica {

struct DivisorEntry {
    TorusPoint point;
    int multiplicity;
};

/// Effective divisor on C/L: distinct torus points with positive multiplicities.
class Divisor {
public:
    Divisor() = default;

    // Each point is reduced mod L; points within merge_tol of an existing entry
    // (torus distance) increase its multiplicity instead.
    static Divisor from_points(std::span<const complex> points, const Lattice &L, double merge_tol = 1e-12);

    void add(complex z, int multiplicity, const Lattice &L, double merge_tol = 1e-12);

    const std::vector<DivisorEntry> &entries() const noexcept { return m_entries; }
    int degree() const noexcept;
    bool empty() const noexcept { return m_entries.empty(); }

    // Representatives repeated according to multiplicity.
    std::vector<complex> expanded() const;

    // The divisor of points p + t.
    Divisor translated(complex t, const Lattice &L) const;

    // Entries in lexicographic order of their lattice coordinates.
    Divisor sorted(const Lattice &L) const;

private:
    std::vector<DivisorEntry> m_entries;
};

// Multiset equality: same degree and a multiplicity-preserving matching of
// points within tol (torus distance).
bool same_divisor(const Divisor &a, const Divisor &b, const Lattice &L, double tol);

// Largest torus distance of an optimal pointwise matching of the expanded
// multisets (infinite when the degrees differ).
double divisor_distance(const Divisor &a, const Divisor &b, const Lattice &L);

// Sum of k_i p_i reduced mod L; throws empty_divisor.
TorusPoint jacobi_sum(const Divisor &D, const Lattice &L);

// Distance from sum(x_i - y_i) of the representatives to the lattice; throws degree_mismatch.
double abel_defect(const Divisor &zeros, const Divisor &poles, const Lattice &L);

/// A meromorphic function given by callbacks. log_derivative (f'/f) is
/// optional; when empty, central differences of value are used.
struct TorusFunction {
    std::function<complex(complex)> value;
    std::function<complex(complex)> log_derivative;

    complex log_derivative_at(complex z, double step) const;

    // 1/f, whose log-derivative is the negated one.
    TorusFunction reciprocal() const;
};

struct PowerSums {
    // values[p] = sum of w^p over enclosed zeros, w = z - center; values[0] is the count.
    std::vector<complex> values;
    int count = 0;
    int nodes = 0; // quadrature nodes of the accepted evaluation
};

// Trapezoidal quadrature of (1/2 pi i) of the contour integral of (f'/f) w^p dw on
// |z - center| = radius. Starts with 256 nodes and doubles until two
// successive counts agree. Throws contour_too_close and non_integer_count.
PowerSums contour_power_sums(const TorusFunction &f, complex center, double radius, int kmax, const Lattice &L);

// Elementary symmetric values s_1..s_k from power sums p_1..p_k, k = count.
// Throws insufficient_sums.
std::vector<complex> newton_elementary(const PowerSums &sums);
std::vector<complex> newton_elementary(std::span<const complex> power_sums, int k);

// Monic polynomial (constant term first) with the given elementary symmetric values.
std::vector<complex> polynomial_from_elementary(std::span<const complex> s);

struct LocateOptions {
    double tol = 1e-5;        // multiplicity clustering radius
    std::uint64_t seed = 0;   // grid offsets
    int grid = 4;             // cells per side
    int max_shifts = 8;
    int panels = 8;           // boundary quadrature panels per cell edge
};

// Zero divisor of an elliptic function inside one fundamental parallelogram.
// Throws subdivision_failure when no grid placement gives reliable cell sums.
Divisor locate_zeros(const TorusFunction &f, const Lattice &L, const LocateOptions &opts = {});

struct DivisorPair {
    Divisor zeros;
    Divisor poles;
};

// Zeros of f and zeros of 1/f.
DivisorPair locate_divisors(const TorusFunction &f, const Lattice &L, const LocateOptions &opts = {});

} // namespace elliptica
