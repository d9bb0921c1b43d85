// Copyright 2026 The ceaudit Authors
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

#include <cstdint>
#include <random>

#include <benchmark/benchmark.h>

#include "ceaudit/ce_analysis.h"
#include "ceaudit/nash_analysis.h"
#include "ceaudit/oracle.h"

namespace ceaudit {
namespace {

Game MakeGame(std::size_t players, std::size_t actions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Shape shape(players, actions);
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<Rational>> payoffs;
  for (std::size_t i = 0; i < players; ++i) {
    names.push_back("p" + std::to_string(i));
    std::vector<std::string> acts;
    for (std::size_t a = 0; a < actions; ++a) acts.push_back("a" + std::to_string(a));
    labels.push_back(std::move(acts));
    std::vector<Rational> u;
    for (std::size_t k = 0; k < NumProfiles(shape); ++k) {
      u.emplace_back(static_cast<std::int64_t>(rng() % 21) - 10,
                     static_cast<std::int64_t>(rng() % 10) + 1);
    }
    payoffs.push_back(std::move(u));
  }
  return Game(std::move(names), std::move(labels), std::move(payoffs));
}

MarginalProfile Uniform(const Shape& shape) {
  std::vector<std::vector<Rational>> probs;
  for (std::size_t n : shape) {
    probs.emplace_back(n, Rational(1, static_cast<std::int64_t>(n)));
  }
  return MarginalProfile(std::move(probs));
}

void BM_TestCeUniform(benchmark::State& state) {
  const Game g = MakeGame(state.range(0), state.range(1), 7);
  const MarginalProfile p = Uniform(g.shape());
  for (auto _ : state) benchmark::DoNotOptimize(TestCeCompatibility(g, p));
}
BENCHMARK(BM_TestCeUniform)->Args({2, 2})->Args({2, 3})->Args({3, 3})->Args({2, 5})->Args({4, 2});

void BM_TestCeSampled(benchmark::State& state) {
  const Game g = MakeGame(state.range(0), state.range(1), 11);
  const MarginalProfile p = MarginalsOf(RandomCe(g, 1));
  for (auto _ : state) benchmark::DoNotOptimize(TestCeCompatibility(g, p));
}
BENCHMARK(BM_TestCeSampled)->Args({2, 3})->Args({3, 3});

void BM_TestNash(benchmark::State& state) {
  const Game g = MakeGame(state.range(0), state.range(1), 13);
  const MarginalProfile p = Uniform(g.shape());
  for (auto _ : state) benchmark::DoNotOptimize(TestNashExploitability(g, p));
}
BENCHMARK(BM_TestNash)->Args({2, 3})->Args({3, 3});

void BM_RandomCe(benchmark::State& state) {
  const Game g = MakeGame(state.range(0), state.range(1), 17);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(RandomCe(g, seed++));
}
BENCHMARK(BM_RandomCe)->Args({2, 3})->Args({3, 3});

}  // namespace
}  // namespace ceaudit

BENCHMARK_MAIN();
