#include <benchmark/benchmark.h>

#include "ddverify/chernsimons.hpp"
#include "ddverify/models.hpp"
#include "ddverify/runner.hpp"

namespace {

const ddv::CentralExtensionModel& u2() {
  static const ddv::CentralExtensionModel m = ddv::build_u2_so3();
  return m;
}

void BM_ShatDeltaTheta(benchmark::State& state) {
  const auto& m = u2();
  const ddv::FormField s = ddv::shat_delta_theta(m, m.theta);
  const auto samples = ddv::sample_frames(*m.ng->level(2), 1, 64, 1);
  for (auto _ : state) {
    double acc = 0.0;
    for (const auto& f : samples) acc += s(f.point, f.frame);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples.size()));
}
BENCHMARK(BM_ShatDeltaTheta);

void BM_ChernForm(benchmark::State& state) {
  const auto& m = u2();
  const ddv::FormField c1 = ddv::chern_form(m, m.theta);
  const auto samples = ddv::sample_frames(*m.ng->level(1), 2, 64, 2);
  for (auto _ : state) {
    double acc = 0.0;
    for (const auto& f : samples) acc += c1(f.point, f.frame);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples.size()));
}
BENCHMARK(BM_ChernForm);

// One full check at the default sample count, over 1 and 4 threads.
void BM_RunCheck(benchmark::State& state, const char* check, const char* model) {
  ddv::VerifyOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ddv::run(check, model, opts).max_residual);
}
BENCHMARK_CAPTURE(BM_RunCheck, cocycle_u2, "cocycle", "u2_so3")->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunCheck, thm41_u2, "thm41", "u2_so3")->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunCheck, thm31, "thm31", "so3_coboundary")->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CoboundarySearch(benchmark::State& state) {
  const auto ext = ddv::build_finite_extension("q8_over_v4");
  const auto c = ddv::section_cocycle(ext);
  for (auto _ : state) benchmark::DoNotOptimize(ddv::coboundary_by_search(c, ext.g).trivial);
}
BENCHMARK(BM_CoboundarySearch);

void BM_CoboundaryElimination(benchmark::State& state) {
  const auto ext = ddv::build_finite_extension("q8_over_v4");
  const auto c = ddv::section_cocycle(ext);
  for (auto _ : state) benchmark::DoNotOptimize(ddv::coboundary_by_elimination(c, ext.g).trivial);
}
BENCHMARK(BM_CoboundaryElimination);

void BM_RunAll(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ddv::run_many("all", "all", ddv::VerifyOptions{}).size());
}
BENCHMARK(BM_RunAll)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
