#include <benchmark/benchmark.h>

#include "dn/dn_ops.hpp"
#include "dn/monodromy.hpp"
#include "dn/rng.hpp"
#include "dn/roots.hpp"
#include "dn/spectral.hpp"

namespace {

using namespace dn;

void weyl_multiply(benchmark::State& state) {
    Rng rng(1);
    WeylElement a = rng.weyl(6, 6, 8, true);
    WeylElement b = rng.weyl(6, 6, 8, true);
    for (auto _ : state) {
        WeylElement c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(weyl_multiply);

void operator_build(benchmark::State& state) {
    Rng rng(2);
    int n = static_cast<int>(state.range(0));
    DNMatrix a = rng.dn_matrix(n, true);
    for (auto _ : state) {
        WeylElement l = build_l_infinity(a);
        benchmark::DoNotOptimize(l);
    }
}
BENCHMARK(operator_build)->Arg(3)->Arg(6);

void matrix_reconstruct(benchmark::State& state) {
    Rng rng(3);
    int n = static_cast<int>(state.range(0));
    DNMatrix a = rng.dn_matrix(n, true);
    CanonicalDN c = to_canonical(build_l_infinity(a), n);
    for (auto _ : state) {
        DNMatrix back = reconstruct(c);
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(matrix_reconstruct)->Arg(3)->Arg(5);

void det_permutation_oracle(benchmark::State& state) {
    Rng rng(4);
    OperatorMatrix m(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (i == j + 1)
                m.at(i, j) = -WeylElement::one();
            else if (i <= j)
                m.at(i, j) = rng.weyl(2, 2, 2);
        }
    for (auto _ : state) {
        WeylElement d = detright_permutation(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(det_permutation_oracle);

void polynomial_roots(benchmark::State& state) {
    std::vector<cx> coeffs;
    for (int k = 0; k <= 12; ++k) coeffs.push_back(cx(std::cos(3.0 * k), std::sin(2.0 * k)));
    for (auto _ : state) {
        auto r = poly_roots(coeffs);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(polynomial_roots);

void monodromy_loop(benchmark::State& state) {
    DNMatrix a(2);
    a.set(0, 0, Gaussian(2));
    a.set(0, 1, Gaussian(frac(1, 3)));
    a.set(0, 2, Gaussian(7));
    a.set(1, 1, Gaussian(-1));
    a.set(1, 2, Gaussian(frac(1, 3)));
    a.set(2, 2, Gaussian(2));
    ConnectionSpectrum spec = eigendecompose(a);
    LoopPlan plan = plan_loops(spec.lambdas);
    for (auto _ : state) {
        CMat m = continue_solution(a, plan.finite[0].path, 1e-12);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(monodromy_loop);

}  // namespace

BENCHMARK_MAIN();
