#include <benchmark/benchmark.h>

#include "bratteli/amalgam.hpp"
#include "bratteli/certificates.hpp"
#include "bratteli/chain.hpp"
#include "bratteli/dimdrop.hpp"
#include "bratteli/numeric.hpp"

namespace {

using namespace bratteli;

TracedProblem headline_problem() {
  TracedProblem p;
  p.A = make_algebra({1, 1});
  p.alpha = make_trace({Rat(1, 2), Rat(1, 2)});
  p.B = make_algebra({2, 2});
  p.beta = make_trace({Rat(1, 2), Rat(1, 2)});
  p.phi = make_embedding(p.A, p.B, {{1, 1}, {1, 1}});
  p.C = make_algebra({3, 3});
  p.gamma = make_trace({Rat(1, 2), Rat(1, 2)});
  p.psi = make_embedding(p.A, p.C, {{1, 2}, {2, 1}});
  return p;
}

void bm_solve_matrix_amalgam(benchmark::State& state) {
  TracedProblem p = headline_problem();
  for (auto _ : state) benchmark::DoNotOptimize(solve_matrix_amalgam(p));
}
BENCHMARK(bm_solve_matrix_amalgam);

void bm_amalgamate_width_n(benchmark::State& state) {
  TracedProblem p = headline_problem();
  for (auto _ : state) benchmark::DoNotOptimize(amalgamate_width_n(p, 6));
}
BENCHMARK(bm_amalgamate_width_n);

void bm_bruteforce_absence(benchmark::State& state) {
  FdAlgebra a = make_algebra({1, 1});
  BratteliMap phi = make_embedding(a, make_algebra({2}), {{1, 1}});
  BratteliMap psi = make_embedding(a, make_algebra({3}), {{1, 2}});
  Int bound = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(find_exact_amalgam_bruteforce(phi, psi, bound));
}
BENCHMARK(bm_bruteforce_absence)->Arg(12)->Arg(36)->Arg(60);

void bm_build_uhf_chain(benchmark::State& state) {
  SupernaturalNumber program = parse_supernatural("2^inf*3");
  for (auto _ : state) benchmark::DoNotOptimize(build_uhf_chain(program, state.range(0)));
}
BENCHMARK(bm_build_uhf_chain)->Arg(6)->Arg(12);

void bm_build_width_chain(benchmark::State& state) {
  RationalTrace tau = make_trace({Rat(1, 3), Rat(2, 3)});
  for (auto _ : state) benchmark::DoNotOptimize(build_width_class_chain(2, tau, state.range(0)));
}
BENCHMARK(bm_build_width_chain)->Arg(4)->Arg(8);

void bm_k0_of_chain(benchmark::State& state) {
  InductiveChain chain = build_width_class_chain(2, make_trace({Rat(1, 3), Rat(2, 3)}), 8);
  for (auto _ : state) benchmark::DoNotOptimize(k0_of_chain(chain));
}
BENCHMARK(bm_k0_of_chain);

void bm_generator_distance(benchmark::State& state) {
  FdAlgebra source = make_algebra({1, 1});
  FdAlgebra target = make_algebra({static_cast<Int>(state.range(0))});
  Int n = state.range(0);
  ConcreteEmbedding f = realize_embedding(make_embedding(source, target, {{1, n - 1}}));
  ConcreteEmbedding g = realize_embedding(make_embedding(source, target, {{n - 1, 1}}));
  for (auto _ : state)
    benchmark::DoNotOptimize(generator_distance(f, g, MatrixNorm::Operator));
}
BENCHMARK(bm_generator_distance)->Arg(8)->Arg(32);

void bm_haar_unitary(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(state.range(0), seed++));
}
BENCHMARK(bm_haar_unitary)->Arg(8)->Arg(32);

void bm_dimdrop_trace(benchmark::State& state) {
  DimensionDropAlgebra zz = make_zpq(2, 3);
  Poly t = poly_make({Rat(0), Rat(1)});
  DimDropElement e = dd_mul(scalar_element(zz, pw_poly(Rat(0), Rat(1), t)), identity_element(zz));
  QuantileMeasure square = make_quantile(pw_poly(Rat(0), Rat(1), poly_make({Rat(0), Rat(0), Rat(1)})));
  for (auto _ : state) benchmark::DoNotOptimize(trace_eval(dd_mul(dd_adjoint(e), e), square));
}
BENCHMARK(bm_dimdrop_trace);

}  // namespace

BENCHMARK_MAIN();
