#include <doctest.h>

#include "elliptica/covering.hpp"
#include "elliptica/error.hpp"
#include "elliptica/hesse.hpp"
#include "oracles.hpp"

using namespace elliptica;
using oracle::Gen;

namespace {

ProjPoint random_point(Gen &g)
{
    return ProjPoint(g.gauss(), g.gauss(), g.gauss());
}

} // namespace

TEST_CASE("permutation algebra")
{
    const Permutation a({1, 2, 0, 3});
    const Permutation b({1, 0, 2, 3});
    CHECK(a.compose(b).images() == std::vector<int>{2, 1, 0, 3});
    CHECK(a.compose(a.inverse()).is_identity());
    CHECK(b.is_transposition());
    CHECK_FALSE(a.is_transposition());
    CHECK(a.cycle_type() == std::vector<int>{3, 1});
    CHECK(Permutation::identity(3).is_identity());
    CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
}

TEST_CASE("polar conic cuts out the tangency points")
{
    const Cubic C = Cubic::hesse({2.0, 0.3});
    Gen g(3);
    for (int i = 0; i < 10; ++i) {
        const ProjPoint q = random_point(g);
        const TernaryForm P = polar_conic(C, q);
        CHECK(P.degree() == 2);
        const Fiber f = lambda_fiber(C, q, static_cast<std::uint64_t>(i));
        CHECK(f.total() == 6);
        CHECK(f.points().size() == 6);
        for (const auto &e : f.entries) {
            const auto &v = e.point.coords();
            CHECK(std::abs(oracle::hesse_form({v[0], v[1], v[2]}, C.t())) < 1e-10);
            const auto grad = oracle::hesse_gradient({v[0], v[1], v[2]}, C.t());
            const complex inc = grad[0] * q[0] + grad[1] * q[1] + grad[2] * q[2];
            CHECK(std::abs(inc) < 1e-9 * oracle::vnorm(grad) * oracle::vnorm({q[0], q[1], q[2]}));
        }
    }
    CHECK_THROWS_AS(polar_conic(C, hesse_inflections()[0]), Error);
}

TEST_CASE("critical locus is the union of the inflectional tangents")
{
    const Cubic C = Cubic::hesse(2.0);
    const HesseData h = hesse_data(2.0);
    const auto lines = inflectional_tangents(C);
    REQUIRE(lines.size() == 9);
    for (std::size_t k = 0; k < 9; ++k) {
        const auto sp = lines[k].span();
        const ProjPoint q(Vec3{sp[0][0] + complex(0.3, 0.7) * sp[1][0], sp[0][1] + complex(0.3, 0.7) * sp[1][1],
                               sp[0][2] + complex(0.3, 0.7) * sp[1][2]});
        const CriticalCheck cc = critical_locus_check(C, q);
        CHECK(cc.on_critical);
        CHECK(cc.tangents == std::vector<int>{static_cast<int>(k)});
        const Fiber f = lambda_fiber(C, q);
        CHECK(f.total() == 6);
        CHECK(f.entries.size() == 5);
        int doubled = 0;
        for (const auto &e : f.entries) {
            if (e.multiplicity == 2) {
                ++doubled;
                CHECK(projectively_equal(e.point, h.inflections[k], 1e-6));
            }
        }
        CHECK(doubled == 1);
    }
    Gen g(9);
    CHECK_FALSE(critical_locus_check(C, random_point(g)).on_critical);
    CHECK(concurrent_tangent_points(C).empty());
    CHECK_FALSE(concurrent_tangent_points(Cubic::hesse(0.0)).empty());
}

TEST_CASE("branch divisors of wp")
{
    const Lattice L = make_lattice_from_tau({0.1, 1.2});
    const auto divs = branch_divisors_direct(wp_as_elliptic(L));
    CHECK(divs.size() == 4);
    CHECK(branching_order(divs) == 4);
    std::vector<Divisor> ref;
    for (const complex b : {complex(0.0), 0.5 * L.omega1(), 0.5 * L.omega2(), 0.5 * (L.omega1() + L.omega2())}) {
        Divisor d;
        d.add(b, 2, L);
        ref.push_back(d);
    }
    CHECK(same_divisor_list(divs, ref, L, 1e-6));
    CHECK_THROWS_AS(branch_divisors_via_tangents(wp_as_elliptic(L)), Error);
}

TEST_CASE("branch divisors have the shape 2x + (-2x) after translation")
{
    const Lattice L = make_lattice(complex(1.0, 0.1), complex(0.3, 1.1));
    const std::vector<complex> x{{0.1, 0.2}, {0.55, 0.3}, {0.3, 0.75}};
    const std::vector<complex> y{{0.2, 0.1}, {0.65, 0.6}, x[0] + x[1] + x[2] - complex(0.2, 0.1) - complex(0.65, 0.6)};
    const EllipticFunction f = build_from_divisors(Divisor::from_points(x, L), Divisor::from_points(y, L), L);
    const auto via = branch_divisors_via_tangents(f, 0);
    CHECK(branching_order(via) == 6);
    CHECK(via.size() <= 6);
    for (const auto &D : via) {
        CHECK(D.degree() == 3);
        // f takes a single value on the divisor
        const auto pts = D.expanded();
        const SphereValue v0 = f(pts[0]);
        for (const complex z : pts) {
            CHECK(chordal_distance(f(z), v0) < 1e-6);
        }
    }
}

TEST_CASE("continuation along a small loop away from the critical locus")
{
    const Cubic C = Cubic::hesse(2.0);
    const ProjPoint q0(complex(0.3, 0.2), complex(-0.7, 0.1), complex(1.0, 0.0));
    REQUIRE_FALSE(critical_locus_check(C, q0, 1e-3).on_critical);
    LoopPath loop;
    for (int k = 0; k <= 64; ++k) {
        const complex e = 1e-3 * (std::exp(complex(0, 2 * pi * k / 64.0)) - 1.0);
        loop.samples.emplace_back(q0[0] + e, q0[1], q0[2]);
    }
    const Fiber start = lambda_fiber(C, q0);
    CHECK(loop_permutation(C, loop, start).is_identity());
}
