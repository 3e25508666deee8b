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

#ifndef MISCOUNT_UNDECIDABILITY_HPP_
#define MISCOUNT_UNDECIDABILITY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "miscount/error_model.hpp"
#include "miscount/monte_carlo.hpp"

namespace miscount {

// The result of N repeated counts, grouped by distinct offset. Entries are
// sorted by offset and every multiplicity is at least one.
class OutcomeTally {
 public:
  struct Entry {
    int offset;
    int multiplicity;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  // Throws std::invalid_argument on empty input, unsorted or repeated
  // offsets, or a multiplicity below one.
  explicit OutcomeTally(std::vector<Entry> entries);

  static OutcomeTally FromOffsets(std::span<const int> offsets);

  std::span<const Entry> entries() const { return entries_; }
  // Number of distinct values observed (l).
  std::size_t distinct() const { return entries_.size(); }
  // Number of counts (N).
  int total() const { return total_; }

 private:
  std::vector<Entry> entries_;
  int total_ = 0;
};

// When a tally leaves the counter unable to pick a value.
//   kModeTie:       the largest multiplicity is shared by two or more values.
//   kToleranceBand: at least two values appear and all multiplicities lie
//                   within `tolerance` of each other.
struct TieRule {
  enum class Kind { kModeTie, kToleranceBand };

  Kind kind = Kind::kModeTie;
  int tolerance = 0;

  static TieRule ModeTie() { return {Kind::kModeTie, 0}; }
  static TieRule ToleranceBand(int t);

  friend bool operator==(const TieRule&, const TieRule&) = default;
};

std::string KindName(TieRule::Kind kind);
nlohmann::json ToJson(const TieRule& rule);

bool IsUndecidable(const OutcomeTally& tally, const TieRule& rule);

// Same test on raw multiplicities; zero entries are values that never
// appeared and are ignored.
bool IsUndecidable(std::span<const int> multiplicities, const TieRule& rule);

// Thrown when an exact computation would visit more outcomes than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;
inline constexpr std::uint64_t kBruteForceBudget = 10'000'000;

// Number of weak compositions of n into `parts` nonnegative parts,
// C(n + parts - 1, parts - 1), saturating at UINT64_MAX.
std::uint64_t CountCompositions(int n, std::size_t parts);

// Calls `visit(multiplicities, weight)` once per weak composition of n over
// the positive-mass support of `model`, in lexicographic order, where
// weight = n! / prod k_i! * prod mass_i^k_i is the probability of observing
// that tally. Throws BudgetExceeded when there are more than `budget`
// compositions.
using TallyVisitor =
    std::function<void(std::span<const int> multiplicities, double weight)>;
void ForEachTally(const ErrorOffsetDistribution& model, int n,
                  const TallyVisitor& visit,
                  std::uint64_t budget = kDefaultEnumerationBudget);

// Probability that n independent counts are undecidable under `rule`,
// summed exactly over all tallies (multinomial form).
double UndecidableProbabilityEnumerate(
    const ErrorOffsetDistribution& model, int n, const TieRule& rule,
    std::uint64_t budget = kDefaultEnumerationBudget);

// Same probability by visiting every ordered sequence of n offsets.
// Throws BudgetExceeded when |support|^n exceeds `budget`.
double UndecidableProbabilityBruteForce(const ErrorOffsetDistribution& model,
                                        int n, const TieRule& rule,
                                        std::uint64_t budget = kBruteForceBudget);

// Fraction of `trials` simulated experiments of n counts that are
// undecidable. Deterministic in (seed, plan.shards).
EstimateWithError UndecidableProbabilityMonteCarlo(
    const ErrorOffsetDistribution& model, int n, const TieRule& rule,
    std::uint64_t trials, std::uint64_t seed, const ShardPlan& plan = {});

// Outcome of trying to settle a count from repeated observations.
struct Decision {
  std::optional<int> offset;  // empty when undecided

  bool decided() const { return offset.has_value(); }
  friend bool operator==(const Decision&, const Decision&) = default;
};

// Undecided when the tally is undecidable under `rule`; otherwise the value
// with the unique largest multiplicity. Under kToleranceBand a tally can fail
// the band test while still having a shared mode; that is also Undecided.
Decision DecideCount(std::span<const int> observed_offsets,
                     const TieRule& rule);

}  // namespace miscount

#endif  // MISCOUNT_UNDECIDABILITY_HPP_
