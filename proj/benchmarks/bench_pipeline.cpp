// Copyright 2026 The qscissors Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qscissors/apparatus.hpp"
#include "qscissors/report.hpp"

using namespace qscissors;

static void BM_KrausBuild(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const BeamSplitterSpec spec = BeamSplitterSpec::symmetric(0.02);
  for (auto _ : state) benchmark::DoNotOptimize(lossy_bs_kraus(spec, "d", cutoff, "e", cutoff));
}
BENCHMARK(BM_KrausBuild)->Arg(10)->Arg(15)->Arg(26)->Unit(benchmark::kMillisecond);

static void BM_ScissorsStrongDrive(benchmark::State& state) {
  ScissorsConfig sc;
  sc.drive.gamma = 2.0;
  sc.bs1 = sc.bs2 = BeamSplitterSpec::symmetric(0.02);
  sc.detectors = {DetectorSpec(0.7), DetectorSpec(0.7)};
  ChannelCache cache;
  for (auto _ : state) benchmark::DoNotOptimize(run_scissors(sc, &cache));
}
BENCHMARK(BM_ScissorsStrongDrive)->Unit(benchmark::kMillisecond);

static void BM_FullPipeline(benchmark::State& state) {
  ScissorsConfig sc;
  sc.bs1 = sc.bs2 = BeamSplitterSpec::symmetric(0.02);
  sc.detectors = {DetectorSpec(0.7), DetectorSpec(0.7)};
  TeleportConfig tc;
  tc.bs1 = tc.bs2 = sc.bs1;
  tc.detectors = sc.detectors;
  ChannelCache cache;
  for (auto _ : state) benchmark::DoNotOptimize(full_pipeline(sc, tc, &cache));
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

static void BM_DefaultSweep(benchmark::State& state) {
  const RunConfig cfg = parse_config("{}");
  const SweepGrid grid = SweepGrid::default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg, grid));
}
BENCHMARK(BM_DefaultSweep)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
