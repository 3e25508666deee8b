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

#ifndef MISCOUNT_MONTE_CARLO_HPP_
#define MISCOUNT_MONTE_CARLO_HPP_

#include <cstdint>
#include <functional>

#include "miscount/random.hpp"

namespace miscount {

// A Monte Carlo proportion with its binomial standard error
// sqrt(estimate * (1 - estimate) / trials).
struct EstimateWithError {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

EstimateWithError MakeEstimate(std::uint64_t successes, std::uint64_t trials);

// How trials are cut into independently seeded shards and how many threads
// work through them. The result depends on `shards` but never on `workers`.
struct ShardPlan {
  unsigned shards = 1;
  unsigned workers = 1;
};

// Counts successes for `trials` experiments drawn from `rng`.
using TrialBatch = std::function<std::uint64_t(std::uint64_t trials, Rng& rng)>;

// Splits `trials` over plan.shards shards; shard i gets
// trials / shards (+1 for the first trials % shards shards) experiments and
// an engine seeded with DeriveSeed(seed, i). Success counts are summed.
EstimateWithError RunSharded(std::uint64_t trials, std::uint64_t seed,
                             const ShardPlan& plan, const TrialBatch& batch);

}  // namespace miscount

#endif  // MISCOUNT_MONTE_CARLO_HPP_
