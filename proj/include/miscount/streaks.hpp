// Copyright 2026 The Miscount Authors.
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

#ifndef MISCOUNT_STREAKS_HPP_
#define MISCOUNT_STREAKS_HPP_

// Chance baselines for "greatness" defined as an improbable run of successes.
//
// If an exceptional event has probability p under the null hypothesis that
// outcomes are pure chance, a population of N individuals produces on
// average f0 = N p such events. An observed rate can only be read as talent
// when it exceeds that baseline; ExcessTail quantifies how far above it an
// observed count sits with an exact binomial upper tail.

#include <cstdint>
#include <optional>

#include "json.hpp"
#include "miscount/monte_carlo.hpp"

namespace miscount {

struct GreatnessReport {
  std::uint64_t population = 0;
  double p_event = 0.0;
  double expected_greats = 0.0;
  std::optional<std::uint64_t> observed_greats;
  std::optional<double> tail_probability;
};

nlohmann::json ToJson(const GreatnessReport& report);

// Defaults reproduce the five-battle, coin-flip general over a hundred
// generals.
struct StreakPreset {
  std::uint64_t population = 100;
  int battles = 5;
  double p_win = 0.5;
};

inline constexpr StreakPreset kFermiPreset{};

// p_win^length.
double StreakProbability(double p_win, int length);

// population * p_event, the chance count f0.
double ExpectedGreats(std::uint64_t population, double p_event);

// Fills tail_probability = P[X >= observed] for X ~ Binomial(population,
// p_event), summed term by term.
GreatnessReport ExcessTail(std::uint64_t population, double p_event,
                           std::uint64_t observed);

// Fraction of `population` simulated generals who win all `battles`
// independent battles with win probability p_win each.
EstimateWithError SimulateGenerals(std::uint64_t population, int battles,
                                   double p_win, std::uint64_t seed,
                                   const ShardPlan& plan = {});

}  // namespace miscount

#endif  // MISCOUNT_STREAKS_HPP_
