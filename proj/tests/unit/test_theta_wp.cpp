#include <doctest.h>

#include "elliptica/theta.hpp"
#include "elliptica/weierstrass.hpp"
#include "oracles.hpp"

using namespace elliptica;
using oracle::Gen;

TEST_CASE("theta series matches plain summation")
{
    Gen g(1);
    for (const complex tau : {complex(0, 1), complex(0.5, 0.8660254037844386), complex(-0.3, 1.9)}) {
        const ThetaSeries th(tau);
        for (int i = 0; i < 40; ++i) {
            // keep the plain sum well conditioned
            const complex u(g.real(-1, 1), g.real(-0.7, 0.7) * tau.imag());
            const complex ref = oracle::theta_naive(u, tau);
            CHECK(std::abs(th(u) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("theta quasi-periodicity and zero")
{
    Gen g(2);
    const complex tau(0.17, 1.13);
    const ThetaSeries th(tau);
    const complex i_pi(0, pi);
    for (int i = 0; i < 50; ++i) {
        const complex u = g.disc(2.0);
        const complex v = th(u);
        CHECK(std::abs(th(u + 1.0) - v) <= 1e-11 * std::abs(v));
        CHECK(std::abs(th(u + tau) - std::exp(-i_pi * (tau + 2.0 * u)) * v) <= 1e-11 * std::abs(th(u + tau)));
        CHECK(std::abs(th(-u) - v) <= 1e-11 * std::abs(v));
    }
    CHECK(std::abs(th(0.5 * (1.0 + tau))) < 1e-14);
    // derivative jet against finite differences of the plain sum
    const complex u(0.23, 0.31);
    const auto jet = th.jet(u, 3);
    const double h = 1e-4;
    const complex d1 = (oracle::theta_naive(u + h, tau) - oracle::theta_naive(u - h, tau)) / (2 * h);
    CHECK(std::abs(jet.log_d1() - d1 / th(u)) < 1e-6);
    CHECK(theta_tail_bound(tau, 24) < 1e-200);
}

TEST_CASE("shifted theta vanishes on the translated lattice")
{
    const Lattice L = make_lattice(complex(0.8, 0.2), complex(0.1, 1.4));
    const TorusPoint x = reduce_mod_lattice({0.33, 0.41}, L);
    for (int m = -2; m <= 2; ++m) {
        for (int n = -2; n <= 2; ++n) {
            const complex z = x.rep + double(m) * L.omega1() + double(n) * L.omega2();
            CHECK(std::abs(theta_shifted(x, z, L)) < 1e-10 * std::abs(theta_shifted(x, z + 0.1, L)));
        }
    }
}

TEST_CASE("wp against the q-expansion")
{
    Gen g(3);
    const std::vector<std::pair<complex, complex>> bases{
        {1.0, complex(0, 1)}, {complex(0.7, 0.3), complex(0.7, 0.3) * complex(0.5, 0.8660254037844386)},
        {complex(2.0, -0.5), complex(0.4, 2.9)}, {complex(0.3, 0), complex(0.05, 0.41)}};
    for (const auto &[w1, w2] : bases) {
        const Lattice L = make_lattice(w1, w2);
        const Weierstrass W(L);
        for (int i = 0; i < 60; ++i) {
            const complex z = oracle::torus_point(g, w1, w2) + double(i % 3 - 1) * w1;
            if (oracle::lattice_distance(z, w1, w2) < 0.02 * std::abs(w1)) {
                continue;
            }
            const auto ref = oracle::wp_qseries(z, w1, w2);
            const auto v = W.finite(z);
            CHECK(std::abs(v[0] - ref[0]) <= 1e-9 * std::max(1.0, std::abs(ref[0])));
            CHECK(std::abs(v[1] - ref[1]) <= 1e-9 * std::max(1.0, std::abs(ref[1])));
        }
    }
}

TEST_CASE("wp basic identities")
{
    const Lattice L = make_lattice_from_tau({0.2, 1.1});
    const Weierstrass W(L);
    Gen g(4);
    for (int i = 0; i < 30; ++i) {
        const complex z = oracle::torus_point(g, L.omega1(), L.omega2());
        const auto a = W.finite(z), b = W.finite(-z);
        CHECK(std::abs(a[0] - b[0]) < 1e-10 * std::abs(a[0]));
        CHECK(std::abs(a[1] + b[1]) < 1e-10 * std::abs(a[1]));
        const auto c = W.finite(z + L.omega2());
        CHECK(std::abs(a[0] - c[0]) < 1e-10 * std::abs(a[0]));
        // inverse returns a preimage of the pair
        const complex w = W.inverse_pair(a[0], a[1]);
        CHECK(std::abs(z - w - L.nearest_point(z - w)) < 1e-8);
        // second derivative against a central difference of wp'
        const double h = 1e-5;
        const complex d2 = (W.finite(z + h)[1] - W.finite(z - h)[1]) / (2 * h);
        CHECK(std::abs(W.second_derivative(a[0]) - d2) < 1e-5 * std::max(1.0, std::abs(d2)));
    }
    const auto half = W.finite(0.5 * L.omega1());
    CHECK(std::abs(half[1]) < 1e-9);
    CHECK(W(0.0).p.is_infinite());
    CHECK(W(L.omega1()).pprime.is_infinite());
}

TEST_CASE("direct summation agrees loosely")
{
    const Lattice L = make_lattice_from_tau({0.1, 1.05});
    const complex z(0.31, 0.22);
    const auto ref = oracle::wp_qseries(z, L.omega1(), L.omega2());
    const auto d = wp_pair_direct(z, L, 200);
    CHECK(std::abs(d.p.value() - ref[0]) < 1e-4 * std::abs(ref[0]));
    CHECK(std::abs(d.pprime.value() - ref[1]) < 1e-4 * std::abs(ref[1]));
}
