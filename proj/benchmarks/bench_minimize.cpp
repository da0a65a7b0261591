#include <benchmark/benchmark.h>

#include "hullforge/families.hpp"
#include "hullforge/minimize.hpp"
#include "hullforge/props.hpp"

using namespace hullforge;

static void BM_PairMinOnSphere(benchmark::State& state) {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  BBOptions opts;
  opts.tol = std::pow(10.0, -double(state.range(0)));
  for (auto _ : state) {
    BBResult r = pair_min_on_sphere(f, g, 0.9, opts);
    benchmark::DoNotOptimize(r.lower);
  }
}
BENCHMARK(BM_PairMinOnSphere)->Arg(3)->Arg(5)->Arg(7);

static void BM_CertifiedMinAnnulus(benchmark::State& state) {
  std::vector<AffineFunction> funcs = {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  for (auto _ : state) {
    RegionSampler region = annulus_sampler_by_count(0.9, 1.0, state.range(0));
    CertifiedMin cm = certified_min(funcs, region);
    benchmark::DoNotOptimize(cm.bound);
  }
}
BENCHMARK(BM_CertifiedMinAnnulus)->Arg(10000)->Arg(100000);

static void BM_TorusSample(benchmark::State& state) {
  AffineFunction f{-0.5, 1.0, 0.0};
  SolidTorus t = make_torus(f, 0.05, 1.0, 1);
  for (auto _ : state) {
    TorusMesh m = torus_sample(t, 3, 16, (int)state.range(0));
    benchmark::DoNotOptimize(m.points.size());
  }
}
BENCHMARK(BM_TorusSample)->Arg(32)->Arg(128);

static void BM_Lemma2Tangent(benchmark::State& state) {
  double s = 0.3, sigma = 0.05;
  double t = solve_footprint_t(s, (5.0 / 3.0) * sigma);
  double eps = 1e-4;
  DerivedConstants d = derive_constants(s, t, 0.0);
  Equidistributed e = equidistributed_points(d.R2 * (1.0 - t), 10.0, eps);
  TorusFamily fam = make_tangent_family(s, t, e.count, eps, 1, "bench");
  for (auto _ : state) {
    Certificate c = lemma2_disjointness(fam, eps);
    benchmark::DoNotOptimize(c.margin);
  }
}
BENCHMARK(BM_Lemma2Tangent);

BENCHMARK_MAIN();
