#include "elliptica/elliptica.hpp"

#include <benchmark/benchmark.h>

using namespace elliptica;

namespace {

Lattice bench_lattice()
{
    return make_lattice(complex(1.05, 0.15), complex(0.27, 1.19));
}

EllipticFunction bench_function()
{
    const Lattice L = bench_lattice();
    const std::vector<complex> x{{0.1, 0.2}, {0.55, 0.3}, {0.3, 0.75}};
    const std::vector<complex> y{{0.2, 0.1}, {0.65, 0.6}, x[0] + x[1] + x[2] - complex(0.2, 0.1) - complex(0.65, 0.6)};
    return build_from_divisors(Divisor::from_points(x, L), Divisor::from_points(y, L), L);
}

void bm_lattice_construction(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_lattice(complex(1.05, 0.15), complex(0.27, 1.19)));
    }
}
BENCHMARK(bm_lattice_construction);

void bm_wp(benchmark::State &state)
{
    const Weierstrass W(bench_lattice());
    complex z(0.31, 0.47);
    for (auto _ : state) {
        benchmark::DoNotOptimize(W.finite(z));
        z += complex(1e-7, 0);
    }
}
BENCHMARK(bm_wp);

void bm_theta(benchmark::State &state)
{
    const ThetaSeries th(complex(0.27, 1.19));
    complex u(0.3, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(th.jet(u, 3));
        u += complex(1e-7, 0);
    }
}
BENCHMARK(bm_theta);

void bm_elliptic_eval(benchmark::State &state)
{
    const EllipticFunction f = bench_function();
    complex z(0.41, 0.37);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f(z));
        z += complex(1e-7, 0);
    }
}
BENCHMARK(bm_elliptic_eval);

void bm_locate_divisors(benchmark::State &state)
{
    const EllipticFunction f = bench_function();
    for (auto _ : state) {
        benchmark::DoNotOptimize(locate_divisors(f.as_torus_function(), f.lattice()));
    }
}
BENCHMARK(bm_locate_divisors)->Unit(benchmark::kMillisecond);

void bm_group_add(benchmark::State &state)
{
    const Lattice L = bench_lattice();
    const Cubic C = weierstrass_cubic(L);
    const Weierstrass W(L);
    const ProjPoint a = embed_point(complex(0.3, 0.2), W), b = embed_point(complex(0.6, 0.9), W);
    for (auto _ : state) {
        benchmark::DoNotOptimize(group_add(C, a, b));
    }
}
BENCHMARK(bm_group_add);

void bm_lambda_fiber(benchmark::State &state)
{
    const Cubic C = hesse_cubic(2.0);
    const ProjPoint q(complex(0.3, 0.2), complex(-0.7, 0.1), complex(1.0, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_fiber(C, q));
    }
}
BENCHMARK(bm_lambda_fiber)->Unit(benchmark::kMicrosecond);

void bm_hesse_scan(benchmark::State &state)
{
    const bool exact = state.range(0) != 0;
    for (auto _ : state) {
        if (exact) {
            benchmark::DoNotOptimize(concurrency_scan_exact({6, 0, 1}));
        }
        else {
            benchmark::DoNotOptimize(concurrency_scan(6.0));
        }
    }
}
BENCHMARK(bm_hesse_scan)->Arg(0)->Arg(1);

void bm_branch_divisors(benchmark::State &state)
{
    const EllipticFunction f = bench_function();
    for (auto _ : state) {
        benchmark::DoNotOptimize(branch_divisors_via_tangents(f));
    }
}
BENCHMARK(bm_branch_divisors)->Unit(benchmark::kMillisecond);

void bm_monodromy(benchmark::State &state)
{
    const Cubic C = hesse_cubic(2.0);
    for (auto _ : state) {
        const LoopFamily fam = default_loops(C, 0, 1);
        benchmark::DoNotOptimize(monodromy_group(C, fam.basepoint, fam.loops));
    }
}
BENCHMARK(bm_monodromy)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
