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

#ifndef MISCOUNT_RANDOM_HPP_
#define MISCOUNT_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace miscount {

// Every stochastic routine in the library draws from this engine.
using Rng = std::mt19937_64;

// SplitMix64 finalizer over (master, index). Used to give each Monte Carlo
// shard or replication its own stream.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace miscount

#endif  // MISCOUNT_RANDOM_HPP_
