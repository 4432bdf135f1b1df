#include <doctest.h>

#include "elliptica/error.hpp"
#include "elliptica/hesse.hpp"
#include "oracles.hpp"

using namespace elliptica;
using oracle::Gen;

TEST_CASE("inflections lie on every member of the pencil")
{
    const auto &pts = hesse_inflections();
    for (const complex t : {complex(0), complex(2), complex(1.5, -2.5)}) {
        for (const auto &p : pts) {
            const oracle::V3 v{p[0], p[1], p[2]};
            CHECK(std::abs(oracle::hesse_form(v, t)) < 1e-14);
        }
    }
    // pairwise distinct
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            CHECK(projective_distance(pts[i], pts[j]) > 0.1);
        }
    }
}

TEST_CASE("tabulated tangents are the tangent lines at the inflections")
{
    const complex t(1.7, 0.4);
    const HesseData h = hesse_data(t);
    for (std::size_t i = 0; i < 9; ++i) {
        const auto &p = h.inflections[i];
        const auto g = oracle::hesse_gradient({p[0], p[1], p[2]}, t);
        const oracle::V3 d{h.tangent_duals[i][0], h.tangent_duals[i][1], h.tangent_duals[i][2]};
        CHECK(oracle::proj_dist(g, d) < 1e-12);
    }
}

TEST_CASE("concurrency at the special parameters")
{
    CHECK(concurrency_scan(0.0).size() > 0);
    CHECK(concurrency_scan(6.0).size() > 0);
    CHECK(concurrency_scan(6.0 * oracle::eps).size() > 0);
    CHECK(concurrency_scan(1.0).empty());
    CHECK(concurrency_scan({2.5, 1.0}).empty());
    CHECK(concurrency_determinants(1.0).size() == 84);
    for (const auto &tr : concurrency_scan(6.0)) {
        CHECK(tr.indices[0] < tr.indices[1]);
        CHECK(tr.indices[1] < tr.indices[2]);
        CHECK(tr.det_modulus < 1e-9);
    }
}

TEST_CASE("cyclotomic conversion")
{
    const CyclotomicRational c = to_cyclotomic((2.0 + 3.0 * oracle::eps) / 5.0);
    CHECK(c.a == 2);
    CHECK(c.b == 3);
    CHECK(c.den == 5);
    CHECK(std::abs(c.value() - (2.0 + 3.0 * oracle::eps) / 5.0) < 1e-15);
    const CyclotomicRational six = to_cyclotomic(6.0);
    CHECK(six.a == 6);
    CHECK(six.b == 0);
    CHECK(six.den == 1);
    CHECK_THROWS_AS(to_cyclotomic(complex(std::sqrt(2.0), 0.1)), Error);
}

TEST_CASE("exact and floating scans agree on rational parameters")
{
    Gen g(42);
    for (int i = 0; i < 40; ++i) {
        const CyclotomicRational t{static_cast<std::int64_t>(g.real(-30, 30)), static_cast<std::int64_t>(g.real(-30, 30)),
                                   1 + static_cast<std::int64_t>(g.real(0, 6))};
        const auto exact = concurrency_scan_exact(t);
        const auto approx = concurrency_scan(t.value());
        CHECK(exact.size() == approx.size());
    }
    const auto at6 = concurrency_scan_exact({6, 0, 1});
    REQUIRE(at6.size() == concurrency_scan(6.0).size());
    for (std::size_t i = 0; i < at6.size(); ++i) {
        CHECK(at6[i].indices == concurrency_scan(6.0)[i].indices);
        CHECK(at6[i].det_modulus == 0.0);
    }
}

TEST_CASE("j-invariant of the pencil")
{
    const auto j0 = hesse_j(0.0), j6 = hesse_j(6.0);
    REQUIRE(j0.is_finite());
    CHECK(std::abs(j0.value()) < 1e-12);
    CHECK(std::abs(j6.value()) < 1e-12);
    CHECK(hesse_j(-3.0).is_infinite());
    CHECK(hesse_is_singular(-3.0 * oracle::eps));
    CHECK_FALSE(hesse_is_singular(2.0));
    // the formula evaluated directly
    const complex t(0.7, -1.1);
    const complex num = 8.0 * t * t * t * std::pow(1.0 - t * t * t / 216.0, 3);
    const complex den = 27.0 * std::pow(1.0 + t * t * t / 27.0, 3);
    CHECK(std::abs(hesse_j(t).value() - num / den) < 1e-12 * std::abs(num / den));
}

TEST_CASE("equianharmonic predicate")
{
    CHECK(is_equianharmonic(make_lattice_from_tau({0.5, std::sqrt(3.0) / 2})));
    CHECK_FALSE(is_equianharmonic(make_lattice_from_tau({0, 1})));
    CHECK(is_equianharmonic(Cubic::hesse(0.0)));
    CHECK(is_equianharmonic(Cubic::hesse(6.0)));
    CHECK_FALSE(is_equianharmonic(Cubic::hesse(2.0)));
    CHECK_THROWS_AS(is_equianharmonic(Cubic::hesse(-3.0)), Error);
}
