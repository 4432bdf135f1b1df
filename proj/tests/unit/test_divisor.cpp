#include <doctest.h>

#include "elliptica/divisor.hpp"
#include "elliptica/error.hpp"
#include "oracles.hpp"

#include <memory>

using namespace elliptica;
using oracle::Gen;

namespace {

// wp(z) - wp(a) through the q-expansion, with a central-difference log-derivative.
TorusFunction shifted_wp(const Lattice &L, complex a)
{
    const complex w1 = L.omega1(), w2 = L.omega2();
    const complex pa = oracle::wp_qseries(a, w1, w2)[0];
    TorusFunction f;
    f.value = [=](complex z) { return oracle::wp_qseries(z, w1, w2)[0] - pa; };
    f.log_derivative = [=](complex z) {
        const auto v = oracle::wp_qseries(z, w1, w2);
        return v[1] / (v[0] - pa);
    };
    return f;
}

} // namespace

TEST_CASE("divisor bookkeeping")
{
    const Lattice L = make_lattice_from_tau({0.1, 1.2});
    const std::vector<complex> pts{{0.2, 0.3}, {1.2, 0.3}, {0.5, 0.5}};
    const Divisor D = Divisor::from_points(pts, L);
    CHECK(D.degree() == 3);
    CHECK(D.entries().size() == 2);
    Divisor E;
    E.add({0.5, 0.5}, 1, L);
    E.add(complex(0.2, 0.3) + L.omega2(), 2, L);
    CHECK(same_divisor(D, E, L, 1e-9));
    CHECK(divisor_distance(D, E, L) < 1e-12);
    CHECK(D.expanded().size() == 3);
    const Divisor T = D.translated(L.omega1(), L);
    CHECK(same_divisor(D, T, L, 1e-9));
    const complex s = jacobi_sum(D, L).rep;
    CHECK(oracle::lattice_distance(s - (2.0 * complex(0.2, 0.3) + complex(0.5, 0.5)), L.omega1(), L.omega2()) < 1e-12);
    CHECK_THROWS_AS(jacobi_sum(Divisor{}, L), Error);
    CHECK_THROWS_AS(abel_defect(D, Divisor::from_points(std::vector<complex>{{0.1, 0.1}}, L), L), Error);
}

TEST_CASE("newton identities on a known polynomial")
{
    // roots 1, 2, 3 + i
    const std::vector<complex> r{1.0, 2.0, {3, 1}};
    std::vector<complex> p(4, 0.0);
    for (int k = 0; k <= 3; ++k) {
        for (const complex x : r) {
            p[static_cast<std::size_t>(k)] += std::pow(x, k);
        }
    }
    const auto s = newton_elementary(std::span<const complex>(p).subspan(1), 3);
    CHECK(std::abs(s[0] - (6.0 + complex(0, 1))) < 1e-12);
    CHECK(std::abs(s[1] - (2.0 + 3.0 * complex(3, 1))) < 1e-12);
    CHECK(std::abs(s[2] - 2.0 * complex(3, 1)) < 1e-12);
    const auto poly = polynomial_from_elementary(s);
    // monic with constant term -e3
    CHECK(std::abs(poly[0] + s[2]) < 1e-12);
    CHECK(std::abs(poly[3] - 1.0) < 1e-12);
    PowerSums short_sums;
    short_sums.values = {3.0, 1.0};
    short_sums.count = 3;
    CHECK_THROWS_AS(newton_elementary(short_sums), Error);
}

TEST_CASE("contour power sums count enclosed zeros")
{
    const Lattice L = make_lattice_from_tau({0.05, 1.1});
    const complex a(0.3, 0.25);
    const auto f = shifted_wp(L, a);
    const auto sums = contour_power_sums(f, a, 0.1, 3, L);
    CHECK(sums.count == 1);
    CHECK(std::abs(sums.values[1]) < 1e-9);
    // the double pole at 0 counts as -2
    const auto at_pole = contour_power_sums(f, 0.0, 0.1, 2, L);
    CHECK(at_pole.count == -2);
}

TEST_CASE("locate zeros and poles of an independently evaluated function")
{
    const Lattice L = make_lattice(complex(1.1, 0.1), complex(0.3, 1.3));
    for (const complex a : {complex(0.31, 0.27), complex(0.52, 0.81), complex(0.05, 0.6)}) {
        const auto f = shifted_wp(L, a);
        const DivisorPair dp = locate_divisors(f, L);
        Divisor zeros;
        zeros.add(a, 1, L);
        zeros.add(-a, 1, L);
        Divisor poles;
        poles.add(0.0, 2, L);
        CHECK(divisor_distance(dp.zeros, zeros, L) < 1e-6);
        CHECK(divisor_distance(dp.poles, poles, L) < 1e-6);
        CHECK(abel_defect(dp.zeros, dp.poles, L) < 1e-6);
    }
    // the double zero of wp - e1 at the half period
    const complex b = 0.5 * L.omega1();
    const Divisor dz = locate_zeros(shifted_wp(L, b), L);
    REQUIRE(dz.entries().size() == 1);
    CHECK(dz.entries()[0].multiplicity == 2);
    CHECK(torus_distance(dz.entries()[0].point.rep, b, L) < 1e-6);
}

TEST_CASE("locate zeros is reproducible for a fixed seed")
{
    const Lattice L = make_lattice_from_tau({0.2, 1.0});
    const auto f = shifted_wp(L, {0.4, 0.3});
    LocateOptions opts;
    opts.seed = 9;
    const Divisor a = locate_zeros(f, L, opts), b = locate_zeros(f, L, opts);
    REQUIRE(a.entries().size() == b.entries().size());
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        CHECK(a.entries()[i].point.rep == b.entries()[i].point.rep);
    }
}
