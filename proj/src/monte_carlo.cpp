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

#include "miscount/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace miscount {

EstimateWithError MakeEstimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (successes > trials) {
    throw std::invalid_argument("successes cannot exceed trials");
  }
  double estimate =
      static_cast<double>(successes) / static_cast<double>(trials);
  double std_error =
      std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
  return {estimate, std_error, trials};
}

EstimateWithError RunSharded(std::uint64_t trials, std::uint64_t seed,
                             const ShardPlan& plan, const TrialBatch& batch) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (plan.shards == 0) throw std::invalid_argument("shards must be positive");
  if (plan.workers == 0) {
    throw std::invalid_argument("workers must be positive");
  }

  const std::uint64_t shards = plan.shards;
  std::vector<std::uint64_t> successes(shards, 0);
  auto run_shard = [&](std::uint64_t shard) {
    std::uint64_t count =
        trials / shards + (shard < trials % shards ? 1 : 0);
    if (count == 0) return;
    Rng rng(DeriveSeed(seed, shard));
    successes[shard] = batch(count, rng);
  };

  unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(plan.workers, shards));
  if (workers <= 1) {
    for (std::uint64_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t s = next++; s < shards; s = next++) run_shard(s);
      });
    }
  }

  std::uint64_t total = 0;
  for (std::uint64_t s : successes) total += s;
  return MakeEstimate(total, trials);
}

}  // namespace miscount
