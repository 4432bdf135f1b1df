#pragma once

#include <array>
#include <complex>
#include <optional>

namespace elliptica {

using complex = std::complex<double>;

// A point of the Riemann sphere: a finite complex number or infinity.
class SphereValue {
public:
    SphereValue() = default; // infinity
    SphereValue(complex value) : m_value(value) {}

    static SphereValue infinity() { return SphereValue(); }

    bool is_infinite() const noexcept { return !m_value.has_value(); }
    bool is_finite() const noexcept { return m_value.has_value(); }

    // Precondition: is_finite().
    complex value() const { return *m_value; }

    // Homogeneous coordinates [value : 1] or [1 : 0].
    std::array<complex, 2> homogeneous() const noexcept
    {
        return m_value ? std::array<complex, 2>{*m_value, 1.0} : std::array<complex, 2>{1.0, 0.0};
    }
    static SphereValue from_homogeneous(complex num, complex den, double rel_tol = 1e-300);

private:
    std::optional<complex> m_value;
};

// Chordal distance on the unit-diameter-2 sphere; 2 between antipodes.
double chordal_distance(const SphereValue &a, const SphereValue &b) noexcept;

// z -> (a z + b) / (c z + d), defined up to a common nonzero scale.
class MobiusTransform {
public:
    MobiusTransform() : MobiusTransform(1.0, 0.0, 0.0, 1.0) {}
    // Throws invalid_argument when ad - bc vanishes relative to the coefficient scale.
    MobiusTransform(complex a, complex b, complex c, complex d);

    static MobiusTransform identity() { return {}; }

    // The unique transform sending z[i] to w[i] for i = 0, 1, 2 (points pairwise distinct).
    static MobiusTransform from_three_points(const std::array<SphereValue, 3> &z, const std::array<SphereValue, 3> &w);

    complex a() const noexcept { return m_a; }
    complex b() const noexcept { return m_b; }
    complex c() const noexcept { return m_c; }
    complex d() const noexcept { return m_d; }

    SphereValue operator()(const SphereValue &z) const noexcept;

    // (this o other)(z) = this(other(z)).
    MobiusTransform compose(const MobiusTransform &other) const;
    MobiusTransform inverse() const;

    // Rescaled so that the largest-modulus coefficient equals 1 and is positive real.
    MobiusTransform normalized() const;

    bool projectively_equal(const MobiusTransform &other, double tol) const noexcept;

private:
    complex m_a, m_b, m_c, m_d;
};

} // namespace elliptica
