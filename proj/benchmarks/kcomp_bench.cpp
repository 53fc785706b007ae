#include <benchmark/benchmark.h>

#include "kcomp/completion.hpp"
#include "kcomp/restricted.hpp"

using namespace kcomp;

namespace {

NodeSequence punctured_integers(int radius) {
  std::vector<cplx> pts;
  for (int n = -radius; n <= radius; ++n) {
    if (n != 0) pts.push_back({static_cast<double>(n), 0.0});
  }
  return NodeSequence::truncated(pts, radius + 0.5);
}

AmbientSpace dim6_space() {
  return AmbientSpace::weighted(StructureFunction(
      0.0,
      {{-2.0, -1.0}, {-1.2, -0.6}, {-0.4, -1.4}, {0.4, -0.9}, {1.2, -1.1}, {2.0, -0.7}},
      0.0));
}

void bm_kernel_eval_pw(benchmark::State& state) {
  const auto pw = AmbientSpace::paley_wiener();
  const cplx w(0.37, 0.21);
  cplx z(1.3, -0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_value(pw, w, z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(bm_kernel_eval_pw);

void bm_kernel_eval_polynomial(benchmark::State& state) {
  const auto h6 = dim6_space();
  const cplx w(0.37, 0.21);
  cplx z(1.3, -0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_value(h6, w, z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(bm_kernel_eval_polynomial);

void bm_gram_build(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  const auto pw = AmbientSpace::paley_wiener();
  const auto seq = punctured_integers(radius);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RestrictedSpace::build(pw, seq));
  }
  state.SetComplexityN(radius);
}
BENCHMARK(bm_gram_build)->Arg(50)->Arg(100)->Arg(200)->Complexity();

void bm_kappa_section_eval(benchmark::State& state) {
  const auto rs = RestrictedSpace::build(AmbientSpace::paley_wiener(),
                                         punctured_integers(200));
  const auto sec = rs.kappa_section({0.0, 0.0});
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sec({x, 0.0}));
    x += 1e-9;
  }
}
BENCHMARK(bm_kappa_section_eval);

void bm_restricted_inner(benchmark::State& state) {
  const auto rs = RestrictedSpace::build(dim6_space(),
                                         NodeSequence::exact({{0.0, 1.0}, {1.5, -0.5}}));
  const KappaCombination f{{cplx(0.3, 0.0), cplx(-1.1, 0.0), cplx(0.9, 0.0)},
                           {cplx(1.0, 0.2), cplx(-0.4, 0.0), cplx(0.2, -0.7)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rs.restricted_inner(f, f));
  }
}
BENCHMARK(bm_restricted_inner);

void bm_complete_finite_dim(benchmark::State& state) {
  const auto rs = RestrictedSpace::build(dim6_space(),
                                         NodeSequence::exact({{0.0, 1.0}, {1.5, -0.5}}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(complete(rs));
  }
}
BENCHMARK(bm_complete_finite_dim);

}  // namespace

BENCHMARK_MAIN();
