#include <doctest.h>

#include "elliptica/cubic.hpp"
#include "elliptica/error.hpp"
#include "oracles.hpp"

using namespace elliptica;
using oracle::Gen;

namespace {

oracle::V3 v3(const ProjPoint &p)
{
    return {p[0], p[1], p[2]};
}

// [wp, wp', 1] from the q-expansion.
oracle::V3 embed_ref(complex z, const Lattice &L)
{
    const auto w = oracle::wp_qseries(z, L.omega1(), L.omega2());
    return {w[0], w[1], 1.0};
}

} // namespace

TEST_CASE("projective basics")
{
    const ProjPoint p(complex(2, 0), complex(0, 4), complex(1, 0));
    CHECK(p[1] == complex(1, 0));
    CHECK(std::abs(p[0] - complex(0, -0.5)) < 1e-15);
    CHECK_THROWS_AS(ProjPoint(0.0, 0.0, 0.0), Error);
    const ProjPoint a(1.0, 2.0, 3.0), b(-1.0, 0.5, 2.0);
    const ProjLine l = line_through(a, b);
    CHECK(l.contains(a));
    CHECK(l.contains(b));
    const ProjLine m(Vec3{1.0, 1.0, -1.0});
    const ProjPoint x = intersection(l, m);
    CHECK(l.contains(x));
    CHECK(m.contains(x));
    const auto sp = l.span();
    CHECK(l.contains(ProjPoint(sp[0])));
    CHECK(l.contains(ProjPoint(sp[1])));
    CHECK(projectively_equal(ProjPoint(2.0, 4.0, 6.0), a));
}

TEST_CASE("weierstrass cubic contains the embedded torus")
{
    const Lattice L = make_lattice(complex(1.1, 0.2), complex(0.3, 1.2));
    const Cubic C = weierstrass_cubic(L);
    CHECK(C.is_smooth());
    const Weierstrass W(L);
    Gen g(7);
    for (int i = 0; i < 30; ++i) {
        const complex z = oracle::torus_point(g, L.omega1(), L.omega2());
        const ProjPoint p = embed_point(z, W);
        CHECK(C.contains(p));
        CHECK(oracle::proj_dist(v3(p), embed_ref(z, L)) < 1e-9);
        const auto ref = embed_ref(z, L);
        CHECK(std::abs(oracle::weierstrass_form(ref, L.g2(), L.g3())) < 1e-8 * std::pow(oracle::vnorm(ref), 3));
        CHECK(torus_distance(unembed(p, C, W).rep, z, L) < 1e-9);
    }
    CHECK(projectively_equal(embed_point(0.0, W), C.identity()));
    CHECK_THROWS_AS(unembed(ProjPoint(1.0, 1.0, 1.0), C, W), Error);
}

TEST_CASE("singular members are detected")
{
    // g2^3 = 27 g3^2
    CHECK_FALSE(Cubic::weierstrass(3.0, 1.0).is_smooth());
    CHECK(Cubic::weierstrass(3.0, 0.7).is_smooth());
    CHECK_FALSE(Cubic::hesse(-3.0).is_smooth());
    CHECK(Cubic::hesse(2.0).is_smooth());
}

TEST_CASE("gradient and hessian of the hesse cubic")
{
    const complex t(1.3, -0.4);
    const Cubic C = Cubic::hesse(t);
    const Vec3 v{complex(0.3, 0.1), complex(-1.2, 0.5), complex(0.7, 0.0)};
    const auto g = C.gradient(v);
    const auto ref = oracle::hesse_gradient({v[0], v[1], v[2]}, t);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(g[static_cast<std::size_t>(i)] - ref[static_cast<std::size_t>(i)]) < 1e-13);
    }
    const auto H = C.hessian(v);
    CHECK(std::abs(H[0][0] - 6.0 * v[0]) < 1e-13);
    CHECK(std::abs(H[0][1] - t * v[2]) < 1e-13);
    CHECK(std::abs(C.value(v) - oracle::hesse_form({v[0], v[1], v[2]}, t)) < 1e-13);
}

TEST_CASE("chord-tangent law matches torus addition")
{
    const Lattice L = make_lattice(complex(1.0, 0.0), complex(0.23, 1.07));
    const Cubic C = weierstrass_cubic(L);
    const Weierstrass W(L);
    Gen g(8);
    for (int i = 0; i < 30; ++i) {
        const complex a = oracle::torus_point(g, L.omega1(), L.omega2());
        const complex b = oracle::torus_point(g, L.omega1(), L.omega2());
        const ProjPoint pa = embed_point(a, W), pb = embed_point(b, W);
        CHECK(oracle::proj_dist(v3(group_add(C, pa, pb)), embed_ref(a + b, L)) < 1e-7);
        CHECK(oracle::proj_dist(v3(group_add(C, pa, pa)), embed_ref(2.0 * a, L)) < 1e-7);
        CHECK(oracle::proj_dist(v3(group_negate(C, pa)), embed_ref(-a, L)) < 1e-9);
        CHECK(oracle::proj_dist(v3(third_point(C, pa, pb)), embed_ref(-a - b, L)) < 1e-7);
        CHECK(projectively_equal(group_add(C, pa, C.identity()), pa, 1e-9));
    }
}

TEST_CASE("line intersections with multiplicity")
{
    const Cubic C = Cubic::hesse(2.0);
    // the inflection [0, 1, -1]: its tangent meets the curve three times there
    const ProjPoint p(0.0, 1.0, -1.0);
    const ProjLine tl = tangent_line(C, p);
    const auto pts = line_intersect_cubic(tl, C);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].multiplicity == 3);
    CHECK(projectively_equal(pts[0].point, p, 1e-6));
    // a generic line gives three simple points on C and on the line
    const ProjLine gl(Vec3{complex(0.3, 0.1), complex(-1.0, 0.4), complex(0.8, -0.2)});
    const auto gen = line_intersect_cubic(gl, C);
    int total = 0;
    for (const auto &x : gen) {
        total += x.multiplicity;
        CHECK(C.contains(x.point));
        CHECK(gl.contains(x.point));
    }
    CHECK(total == 3);
    CHECK_THROWS_AS(tangent_line(C, ProjPoint(1.0, 1.0, 1.0)), Error);
}

TEST_CASE("intersection of two curves obeys Bezout")
{
    // circle x^2 + y^2 = z^2 and the pair of lines x y = 0
    TernaryForm F(2), G(2);
    F.set_coefficient(2, 0, 0, 1.0);
    F.set_coefficient(0, 2, 0, 1.0);
    F.set_coefficient(0, 0, 2, -1.0);
    G.set_coefficient(1, 1, 0, 1.0);
    const auto pts = intersect_curves(F, G, 3);
    int total = 0;
    for (const auto &x : pts) {
        total += x.multiplicity;
        CHECK(std::abs(F(x.point.coords())) < 1e-9);
        CHECK(std::abs(G(x.point.coords())) < 1e-9);
    }
    CHECK(total == 4);
    CHECK(pts.size() == 4);
    // y = z touches the circle at [0, 1, 1]; x = 2z meets it at [2, +-i sqrt 3, 1]
    const TernaryForm T = TernaryForm::linear(0.0, 1.0, -1.0) * TernaryForm::linear(1.0, 0.0, -2.0);
    const auto tan = intersect_curves(F, T, 5);
    REQUIRE(tan.size() == 3);
    int doubled = 0;
    for (const auto &x : tan) {
        if (x.multiplicity == 2) {
            ++doubled;
            CHECK(projectively_equal(x.point, ProjPoint(0.0, 1.0, 1.0), 1e-6));
        }
        else {
            CHECK(x.multiplicity == 1);
            CHECK(std::abs(std::abs(x.point[1] / x.point[2]) - std::sqrt(3.0)) < 1e-9);
        }
    }
    CHECK(doubled == 1);
}

TEST_CASE("inflections of the weierstrass cubic are the 3-torsion points")
{
    const Lattice L = make_lattice(complex(0.9, 0.1), complex(-0.2, 1.3));
    const Cubic C = weierstrass_cubic(L);
    const auto infl = inflection_points(C, 1);
    REQUIRE(infl.size() == 9);
    int matched = 0;
    for (const auto &t : torsion_points(L, 3)) {
        const oracle::V3 ref = t.rep == 0.0 ? oracle::V3{0.0, 1.0, 0.0} : embed_ref(t.rep, L);
        for (const auto &p : infl) {
            if (oracle::proj_dist(v3(p), ref) < 1e-7) {
                ++matched;
                break;
            }
        }
    }
    CHECK(matched == 9);
}
