#include <doctest.h>

#include "elliptica/elliptic_function.hpp"
#include "elliptica/error.hpp"
#include "oracles.hpp"

using namespace elliptica;
using oracle::Gen;

namespace {

complex val(const SphereValue &v)
{
    return v.is_infinite() ? complex(INFINITY, 0) : v.value();
}

EllipticFunction random_degree3(const Lattice &L, Gen &g)
{
    for (;;) {
        std::vector<complex> x, y;
        for (int i = 0; i < 3; ++i) {
            x.push_back(oracle::torus_point(g, L.omega1(), L.omega2()));
        }
        for (int i = 0; i < 2; ++i) {
            y.push_back(oracle::torus_point(g, L.omega1(), L.omega2()));
        }
        y.push_back(x[0] + x[1] + x[2] - y[0] - y[1]);
        double sep = INFINITY;
        for (const complex a : x) {
            for (const complex b : y) {
                sep = std::min(sep, oracle::lattice_distance(a - b, L.omega1(), L.omega2()));
            }
        }
        if (sep > 0.05) {
            return build_from_divisors(Divisor::from_points(x, L), Divisor::from_points(y, L), L);
        }
    }
}

} // namespace

TEST_CASE("theta quotient is elliptic with the prescribed divisors")
{
    Gen g(21);
    const Lattice L = make_lattice(complex(1.0, 0.2), complex(0.35, 1.15));
    for (int trial = 0; trial < 5; ++trial) {
        const EllipticFunction f = random_degree3(L, g);
        CHECK(f.degree() == 3);
        for (int i = 0; i < 20; ++i) {
            const complex z = oracle::torus_point(g, L.omega1(), L.omega2());
            const complex v = val(f(z));
            CHECK(std::abs(val(f(z + L.omega1())) - v) <= 1e-9 * std::max(1.0, std::abs(v)));
            CHECK(std::abs(val(f(z - 2.0 * L.omega2())) - v) <= 1e-9 * std::max(1.0, std::abs(v)));
            // analytic log-derivative against a central difference
            const double h = 1e-6;
            const complex num = (val(f(z + h)) - val(f(z - h))) / (2 * h) / v;
            CHECK(std::abs(f.log_derivative(z) - num) <= 1e-5 * std::max(1.0, std::abs(num)));
        }
        for (const auto &e : f.zeros().entries()) {
            CHECK(std::abs(val(f(e.point.rep + 1e-6))) < 1e-4 * std::abs(val(f(e.point.rep + 0.05))));
            CHECK(std::abs(val(f(e.point.rep + L.omega2()))) < 1e-8);
        }
        for (const auto &e : f.poles().entries()) {
            CHECK(f(e.point.rep).is_infinite());
        }
        double lift_sum = 0;
        complex s = 0.0;
        for (const complex z : f.zero_lifts()) {
            s += z;
        }
        for (const complex z : f.pole_lifts()) {
            s -= z;
        }
        lift_sum = std::abs(s);
        CHECK(lift_sum < 1e-12);
    }
}

TEST_CASE("wp as a theta quotient agrees with the q-expansion")
{
    const Lattice L = make_lattice_from_tau({-0.3, 1.05});
    const EllipticFunction f = wp_as_elliptic(L);
    Gen g(1);
    for (int i = 0; i < 40; ++i) {
        const complex z = oracle::torus_point(g, L.omega1(), L.omega2());
        const complex ref = oracle::wp_qseries(z, L.omega1(), L.omega2())[0];
        CHECK(std::abs(val(f(z)) - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("construction preconditions")
{
    const Lattice L = make_lattice_from_tau({0, 1.2});
    const Divisor x = Divisor::from_points(std::vector<complex>{{0.1, 0.1}, {0.4, 0.2}}, L);
    const Divisor y_bad = Divisor::from_points(std::vector<complex>{{0.2, 0.5}, {0.6, 0.1}}, L);
    const Divisor y_one = Divisor::from_points(std::vector<complex>{{0.2, 0.5}}, L);
    Divisor y_overlap;
    y_overlap.add({0.1, 0.1}, 1, L);
    y_overlap.add({0.4, 0.2}, 1, L);
    auto kind_of = [&](const Divisor &zeros, const Divisor &poles) {
        try {
            build_from_divisors(zeros, poles, L);
        }
        catch (const Error &e) {
            return e.kind();
        }
        return ErrorKind::numerical_failure;
    };
    CHECK(kind_of(x, y_one) == ErrorKind::degree_mismatch);
    CHECK(kind_of(x, y_bad) == ErrorKind::abel_violation);
    CHECK(kind_of(x, y_overlap) == ErrorKind::overlapping_divisors);
}

TEST_CASE("critical points of wp are the half periods and the pole")
{
    const Lattice L = make_lattice(complex(1.0, -0.1), complex(0.2, 1.3));
    const Divisor crit = critical_points(wp_as_elliptic(L));
    CHECK(crit.degree() == 4);
    Divisor ref;
    for (const complex b : {complex(0.0), 0.5 * L.omega1(), 0.5 * L.omega2(), 0.5 * (L.omega1() + L.omega2())}) {
        ref.add(b, 1, L);
    }
    CHECK(divisor_distance(crit, ref, L) < 1e-6);
}

TEST_CASE("degree-2 decomposition of a synthesized function")
{
    const Lattice L = make_lattice_from_tau({0.15, 1.1});
    const MobiusTransform g0({1.0, 0.5}, {-0.3, 0.2}, {0.2, -0.1}, {1.0, 0.0});
    const complex t0(0.37, 0.42);
    const EllipticFunction f = synthesize_degree2(L, g0, t0);
    const auto d = decompose_degree2(f);
    Gen gen(2);
    for (int i = 0; i < 30; ++i) {
        const complex z = oracle::torus_point(gen, L.omega1(), L.omega2());
        const complex p = oracle::wp_qseries(z - d.t.rep, L.omega1(), L.omega2())[0];
        const complex lhs = val(f(z));
        const complex rhs = val(d.g(p));
        CHECK(oracle::chordal(lhs, rhs) < 1e-7);
    }
    CHECK(d.error < 1e-6);
    CHECK_THROWS_AS(decompose_degree2(wp_as_elliptic(L).with_scale(2.0).with_scale(1.0), {}, -1.0), Error);
}

TEST_CASE("wp stabilizer")
{
    const Lattice L = make_lattice_from_tau({0.3, 1.4});
    const auto stab = wp_stabilizer(L);
    REQUIRE(stab.size() == 4);
    Gen g(6);
    for (const auto &s : stab) {
        for (int i = 0; i < 10; ++i) {
            const complex z = oracle::torus_point(g, L.omega1(), L.omega2());
            const complex lhs = val(s.g(oracle::wp_qseries(z - s.t.rep, L.omega1(), L.omega2())[0]));
            CHECK(oracle::chordal(lhs, oracle::wp_qseries(z, L.omega1(), L.omega2())[0]) < 1e-8);
        }
        CHECK(L.distance_to_lattice(2.0 * s.t.rep) < 1e-12);
    }
}
