//
// Copyright 2026 The contcount Authors
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
//

#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "contcount/gaussian_sampler.h"
#include "contcount/linalg.h"
#include "contcount/mechanism.h"
#include "contcount/privacy_budget.h"
#include "contcount/streaming_counter.h"

namespace contcount {
namespace {

PrivacyBudget Budget() { return *PrivacyBudget::Create(1.0, 1e-6); }

void BM_StreamingCounterStep(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const StreamingCounter prepared = *StreamingCounter::Create(n, Budget(), 1);
  StreamingCounter counter = prepared;
  std::int64_t t = 0;
  for (auto _ : state) {
    if (t == n) {
      state.PauseTiming();
      counter = prepared;
      t = 0;
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(*counter.Step(static_cast<int>(t & 1)));
    ++t;
  }
}
BENCHMARK(BM_StreamingCounterStep)->RangeMultiplier(16)->Range(1 << 10, 1 << 20);

void BM_StreamingCounterCreate(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(StreamingCounter::Create(n, Budget(), 1));
  }
}
BENCHMARK(BM_StreamingCounterCreate)
    ->Arg(1024)
    ->Arg(4096)
    ->Arg(4097)
    ->Arg(1 << 16)
    ->Unit(benchmark::kMillisecond);

void BM_BinaryMechanismStep(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const BinaryMechanism prepared = *BinaryMechanism::Create(n, Budget(), 1);
  BinaryMechanism mech = prepared;
  std::int64_t t = 0;
  for (auto _ : state) {
    if (t == n) {
      state.PauseTiming();
      mech = prepared;
      t = 0;
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(*mech.Step(static_cast<int>(t & 1)));
    ++t;
  }
}
BENCHMARK(BM_BinaryMechanismStep)->RangeMultiplier(16)->Range(1 << 10, 1 << 20);

std::vector<double> Normals(std::int64_t n, std::uint64_t seed) {
  GaussianSampler sampler(seed);
  return sampler.StandardNormals(n);
}

void BM_ToeplitzDirect(benchmark::State& state) {
  const std::vector<double> c = Normals(state.range(0), 1);
  const std::vector<double> x = Normals(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ToeplitzLowerMatVec(c, x));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToeplitzDirect)
    ->RangeMultiplier(4)
    ->Range(256, 16384)
    ->Complexity(benchmark::oNSquared);

void BM_ToeplitzFft(benchmark::State& state) {
  const std::vector<double> c = Normals(state.range(0), 1);
  const std::vector<double> x = Normals(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ToeplitzLowerMatVecFft(c, x));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToeplitzFft)
    ->RangeMultiplier(4)
    ->Range(256, 1 << 20)
    ->Complexity(benchmark::oNLogN);

}  // namespace
}  // namespace contcount

BENCHMARK_MAIN();
