#pragma once

#include "elliptica/lattice.hpp"
#include "elliptica/polynomial.hpp"
#include "elliptica/projective.hpp"
#include "elliptica/weierstrass.hpp"

#include <cstdint>
#include <vector>

namespace elliptica {

enum class CubicFamily { weierstrass, hesse };

/// Plane cubic of the Weierstrass family y^2 z - 4x^3 + g2 x z^2 + g3 z^3
/// or the Hesse family x^3 + y^3 + z^3 + t xyz.
class Cubic {
public:
    static Cubic weierstrass(complex g2, complex g3);
    static Cubic hesse(complex t);

    CubicFamily family() const noexcept { return m_family; }
    complex g2() const noexcept { return m_params[0]; }
    complex g3() const noexcept { return m_params[1]; }
    complex t() const noexcept { return m_params[0]; }

    const TernaryForm &form() const noexcept { return m_form; }

    complex value(const Vec3 &v) const noexcept { return m_form(v); }
    Vec3 gradient(const Vec3 &v) const noexcept;
    // Matrix of second partials.
    std::array<Vec3, 3> hessian(const Vec3 &v) const noexcept;

    // |F(p)| / coefficient norm at the max-normalized representative.
    double residual(const ProjPoint &p) const noexcept;
    bool contains(const ProjPoint &p, double tol = 1e-8) const noexcept { return residual(p) <= tol; }

    bool is_smooth() const noexcept;

    // Neutral element of the group law: [0,1,0] (Weierstrass) or [0,1,-1] (Hesse).
    ProjPoint identity() const;

private:
    Cubic(CubicFamily family, complex p0, complex p1, TernaryForm form);

    CubicFamily m_family;
    std::array<complex, 2> m_params;
    TernaryForm m_form;
    std::array<TernaryForm, 3> m_grad;
    std::array<std::array<TernaryForm, 3>, 3> m_second;
};

// Throws singular_cubic when g2^3 - 27 g3^2 vanishes relative to scale.
Cubic weierstrass_cubic(const Lattice &L);
Cubic hesse_cubic(complex t);

// z -> [wp(z), wp'(z), 1], with lattice points sent to [0,1,0].
ProjPoint embed_point(complex z, const Weierstrass &W);
ProjPoint embed_point(TorusPoint z, const Lattice &L);

// Inverse of embed_point; throws point_off_curve and no_preimage.
TorusPoint unembed(const ProjPoint &p, const Cubic &C, const Weierstrass &W);
TorusPoint unembed(const ProjPoint &p, const Cubic &C, const Lattice &L);

// Throws point_off_curve and singular_point.
ProjLine tangent_line(const Cubic &C, const ProjPoint &p);

struct Intersection {
    ProjPoint point;
    int multiplicity;
};
using IntersectionList = std::vector<Intersection>;

inline constexpr double line_cluster_radius = 1e-4;

IntersectionList line_intersect_cubic(const ProjLine &l, const Cubic &C);

// Residual intersection of the chord through p and q (the tangent when p = q).
ProjPoint third_point(const Cubic &C, const ProjPoint &p, const ProjPoint &q);

// Chord-tangent addition with neutral element C.identity(); throws point_off_curve.
ProjPoint group_add(const Cubic &C, const ProjPoint &p, const ProjPoint &q);
ProjPoint group_negate(const Cubic &C, const ProjPoint &p);

// Common zeros of two ternary forms counted with multiplicity, by a resultant
// after a seeded random unitary change of coordinates. Points closer than
// cluster_radius merge. Throws numerical_failure when no coordinate change
// gives a consistent answer.
IntersectionList intersect_curves(const TernaryForm &F, const TernaryForm &G, std::uint64_t seed = 0,
                                  double cluster_radius = 1e-6);

// The nine inflection points (intersection with the Hessian curve).
std::vector<ProjPoint> inflection_points(const Cubic &C, std::uint64_t seed = 0);

} // namespace elliptica
