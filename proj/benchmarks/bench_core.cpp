#include <benchmark/benchmark.h>

#include "bicons/geodesic.hpp"
#include "bicons/geometry.hpp"
#include "bicons/immersion.hpp"

using namespace bicons;

namespace {

ProfileParams params(int eps, double C) {
  ProfileParams p;
  p.eps = SpaceFormSign(eps);
  p.C = C;
  return p;
}

GluedMetric metric(int eps, double C) { return GluedMetric(GluedProfile(ProfileSolution(params(eps, C)))); }

void BM_FindRoots(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(find_roots(SpaceFormSign(1), 3.0));
}
BENCHMARK(BM_FindRoots);

void BM_ProfileConstruction(benchmark::State& st) {
  const int eps = static_cast<int>(st.range(0));
  const double C = eps == 1 ? 3.0 : (eps == 0 ? 1.0 : 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(ProfileSolution(params(eps, C)).rho_minus());
}
BENCHMARK(BM_ProfileConstruction)->Arg(-1)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_GluedJet(benchmark::State& st) {
  const GluedMetric gm = metric(1, 3.0);
  double rho = -2.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(gm.profile().jet(rho));
    rho += 1e-3;
    if (rho > 3.0) rho = -2.0;
  }
}
BENCHMARK(BM_GluedJet);

void BM_IdentitySweep(benchmark::State& st) {
  const GluedMetric gm = metric(1, 3.0);
  const SweepOptions sw = default_sweep(gm, 1000);
  for (auto _ : st) benchmark::DoNotOptimize(verify_curvature_ode(gm, sw));
}
BENCHMARK(BM_IdentitySweep)->Unit(benchmark::kMillisecond);

void BM_Geodesic(benchmark::State& st) {
  const GluedMetric gm = metric(1, 3.0);
  const GeodesicState s = unit_speed_state(gm, 0.1, 0.0, 0.8);
  for (auto _ : st) benchmark::DoNotOptimize(geodesic_integrate(s, 100.0, gm).steps);
}
BENCHMARK(BM_Geodesic)->Unit(benchmark::kMillisecond);

void BM_Immersion(benchmark::State& st) {
  const GluedMetric gm = metric(1, 3.0);
  const AmbientModel m{SpaceFormSign(1)};
  const ImmersionGridSpec spec = default_grid_spec(gm, static_cast<int>(st.range(0)), 64);
  for (auto _ : st) benchmark::DoNotOptimize(integrate_immersion(gm, m, spec).max_drift);
}
BENCHMARK(BM_Immersion)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
