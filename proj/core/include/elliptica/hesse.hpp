#pragma once

#include "elliptica/cubic.hpp"
#include "elliptica/sphere.hpp"

#include <cstdint>
#include <vector>

namespace elliptica {

// Primitive cube root of unity exp(2 pi i / 3).
inline const complex epsilon{-0.5, 0.86602540378443864676};

struct HesseData {
    Cubic cubic;
    std::array<ProjPoint, 9> inflections;
    // tangent_duals[i] is the tangent line at inflections[i].
    std::array<ProjPoint, 9> tangent_duals;
};

HesseData hesse_data(complex t);

// The nine inflections x^3 + y^3 + z^3 = xyz = 0, independent of t.
const std::array<ProjPoint, 9> &hesse_inflections();

struct ConcurrentTriple {
    std::array<int, 3> indices; // into hesse_data().tangent_duals, increasing
    double det_modulus;
};

inline constexpr double default_concurrency_tol = 1e-9;

// Triples of inflectional tangents whose max-normalized duals have |det| < tol.
std::vector<ConcurrentTriple> concurrency_scan(complex t, double tol = default_concurrency_tol);

/// Element (a + b eps) / den of Q(eps), eps^2 = -1 - eps.
struct CyclotomicRational {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t den = 1;

    complex value() const noexcept;
};

// Nearest element with denominator at most max_den; throws invalid_argument
// when t is not representable to 1e-12 (relative).
CyclotomicRational to_cyclotomic(complex t, std::int64_t max_den = 1000000);

// The same scan with exact arithmetic in Z[eps]; det_modulus is 0 for every
// returned triple and reports |det| of the scaled integer determinant otherwise.
std::vector<ConcurrentTriple> concurrency_scan_exact(const CyclotomicRational &t);

// Modulus of all 84 determinants (exact mode: |det| of the integer value).
std::vector<ConcurrentTriple> concurrency_determinants(complex t);
std::vector<ConcurrentTriple> concurrency_determinants_exact(const CyclotomicRational &t);

// j(t) = [8 t^3 (1 - t^3/216)^3 : 27 (1 + t^3/27)^3].
SphereValue hesse_j(complex t);

bool hesse_is_singular(complex t, double tol = 1e-9);

bool is_equianharmonic(const Lattice &L, double tol = 1e-9);
// Throws singular_input for singular Hesse parameters.
bool is_equianharmonic(const Cubic &C, double tol = 1e-9);

} // namespace elliptica
