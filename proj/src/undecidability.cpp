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

#include "miscount/undecidability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace miscount {

OutcomeTally::OutcomeTally(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("tally is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].multiplicity < 1) {
      throw std::invalid_argument("tally multiplicities must be >= 1");
    }
    if (i > 0 && entries_[i - 1].offset >= entries_[i].offset) {
      throw std::invalid_argument(
          "tally offsets must be distinct and increasing");
    }
    total_ += entries_[i].multiplicity;
  }
}

OutcomeTally OutcomeTally::FromOffsets(std::span<const int> offsets) {
  std::map<int, int> counts;
  for (int delta : offsets) ++counts[delta];
  std::vector<Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [delta, k] : counts) entries.push_back({delta, k});
  return OutcomeTally(std::move(entries));
}

TieRule TieRule::ToleranceBand(int t) {
  if (t < 0) throw std::invalid_argument("tolerance must be >= 0");
  return {Kind::kToleranceBand, t};
}

std::string KindName(TieRule::Kind kind) {
  return kind == TieRule::Kind::kModeTie ? "mode_tie" : "tolerance_band";
}

nlohmann::json ToJson(const TieRule& rule) {
  nlohmann::json out{{"kind", KindName(rule.kind)}};
  if (rule.kind == TieRule::Kind::kToleranceBand) {
    out["tolerance"] = rule.tolerance;
  }
  return out;
}

bool IsUndecidable(std::span<const int> multiplicities, const TieRule& rule) {
  int largest = 0;
  int smallest = std::numeric_limits<int>::max();
  int at_largest = 0;
  int distinct = 0;
  for (int k : multiplicities) {
    if (k <= 0) continue;
    ++distinct;
    smallest = std::min(smallest, k);
    if (k > largest) {
      largest = k;
      at_largest = 1;
    } else if (k == largest) {
      ++at_largest;
    }
  }
  switch (rule.kind) {
    case TieRule::Kind::kModeTie:
      return at_largest >= 2;
    case TieRule::Kind::kToleranceBand:
      return distinct >= 2 && largest - smallest <= rule.tolerance;
  }
  return false;
}

bool IsUndecidable(const OutcomeTally& tally, const TieRule& rule) {
  std::vector<int> ks;
  ks.reserve(tally.distinct());
  for (const auto& e : tally.entries()) ks.push_back(e.multiplicity);
  return IsUndecidable(ks, rule);
}

std::uint64_t CountCompositions(int n, std::size_t parts) {
  if (n < 0 || parts == 0) return 0;
  // C(n + r, r) with r = parts - 1, built as a running product of
  // C(n + j, j) that stays integral at every step.
  const std::uint64_t r = parts - 1;
  const std::uint64_t top = static_cast<std::uint64_t>(n);
  boost::multiprecision::cpp_int value = 1;
  for (std::uint64_t j = 1; j <= r; ++j) {
    value = value * (top + j) / j;
    if (value > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(value);
}

namespace {

// Multinomial weights for one (model, n). Up to kExactLimit counts the
// binomial factors come from Pascal's triangle, which is exact integer
// arithmetic while entries stay below 2^53. Larger n switches to
// log-factorials.
class TallyWeigher {
 public:
  static constexpr int kExactLimit = 170;

  TallyWeigher(std::span<const double> masses, int n)
      : n_(n), masses_(masses.begin(), masses.end()) {
    if (n_ <= kExactLimit) {
      pascal_.assign(static_cast<std::size_t>((n_ + 1) * (n_ + 1)), 0.0);
      for (int a = 0; a <= n_; ++a) {
        Binomial(a, 0) = 1.0;
        for (int b = 1; b <= a; ++b) {
          Binomial(a, b) = Binomial(a - 1, b - 1) +
                           (b <= a - 1 ? Binomial(a - 1, b) : 0.0);
        }
      }
      powers_.resize(masses_.size());
      for (std::size_t i = 0; i < masses_.size(); ++i) {
        powers_[i].resize(static_cast<std::size_t>(n_ + 1));
        powers_[i][0] = 1.0;
        for (int k = 1; k <= n_; ++k) {
          powers_[i][k] = powers_[i][k - 1] * masses_[i];
        }
      }
    } else {
      log_factorial_.resize(static_cast<std::size_t>(n_ + 1));
      for (int k = 0; k <= n_; ++k) {
        log_factorial_[k] = std::lgamma(static_cast<double>(k) + 1.0);
      }
    }
  }

  double Weight(std::span<const int> ks) const {
    if (n_ <= kExactLimit) {
      double w = 1.0;
      int remaining = n_;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        w *= Binomial(remaining, ks[i]) * powers_[i][ks[i]];
        remaining -= ks[i];
      }
      return w;
    }
    double log_w = log_factorial_[n_];
    for (std::size_t i = 0; i < ks.size(); ++i) {
      log_w += -log_factorial_[ks[i]] +
               (ks[i] > 0 ? ks[i] * std::log(masses_[i]) : 0.0);
    }
    return std::exp(log_w);
  }

 private:
  double& Binomial(int a, int b) {
    return pascal_[static_cast<std::size_t>(a * (n_ + 1) + b)];
  }
  double Binomial(int a, int b) const {
    return pascal_[static_cast<std::size_t>(a * (n_ + 1) + b)];
  }

  int n_;
  std::vector<double> masses_;
  std::vector<double> pascal_;
  std::vector<std::vector<double>> powers_;
  std::vector<double> log_factorial_;
};

void CheckCounts(int n) {
  if (n < 1) throw std::invalid_argument("number of counts must be >= 1");
}

}  // namespace

void ForEachTally(const ErrorOffsetDistribution& model, int n,
                  const TallyVisitor& visit, std::uint64_t budget) {
  CheckCounts(n);
  const std::vector<double> masses = model.positive_masses();
  const std::size_t parts = masses.size();
  const std::uint64_t compositions = CountCompositions(n, parts);
  if (compositions > budget) {
    throw BudgetExceeded("enumeration needs " + std::to_string(compositions) +
                         " compositions, budget is " + std::to_string(budget) +
                         "; use Monte Carlo instead");
  }

  const TallyWeigher weigher(masses, n);
  std::vector<int> ks(parts, 0);
  // Odometer over weak compositions: the last part absorbs the remainder,
  // the others advance like digits with a shrinking upper bound.
  ks.back() = n;
  if (parts == 1) {
    visit(ks, weigher.Weight(ks));
    return;
  }
  std::fill(ks.begin(), ks.end() - 1, 0);
  while (true) {
    visit(ks, weigher.Weight(ks));
    // Advance the rightmost free digit that still has room.
    std::size_t i = parts - 2;
    while (true) {
      if (ks.back() > 0) {
        ++ks[i];
        --ks.back();
        break;
      }
      // Digit i is saturated: reset it and carry into i - 1.
      ks.back() += ks[i];
      ks[i] = 0;
      if (i == 0) return;
      --i;
    }
  }
}

double UndecidableProbabilityEnumerate(const ErrorOffsetDistribution& model,
                                       int n, const TieRule& rule,
                                       std::uint64_t budget) {
  double total = 0.0;
  ForEachTally(
      model, n,
      [&](std::span<const int> ks, double weight) {
        if (IsUndecidable(ks, rule)) total += weight;
      },
      budget);
  return std::clamp(total, 0.0, 1.0);
}

double UndecidableProbabilityBruteForce(const ErrorOffsetDistribution& model,
                                        int n, const TieRule& rule,
                                        std::uint64_t budget) {
  CheckCounts(n);
  const std::vector<double> masses = model.positive_masses();
  const std::size_t base = masses.size();

  std::uint64_t sequences = 1;
  for (int i = 0; i < n; ++i) {
    if (sequences > budget / base) {
      throw BudgetExceeded("brute force needs " + std::to_string(base) + "^" +
                           std::to_string(n) + " sequences, budget is " +
                           std::to_string(budget));
    }
    sequences *= base;
  }

  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  std::vector<int> counts(base, 0);
  counts[0] = n;
  double total = 0.0;
  for (std::uint64_t s = 0; s < sequences; ++s) {
    if (IsUndecidable(counts, rule)) {
      double prob = 1.0;
      for (std::size_t d : digits) prob *= masses[d];
      total += prob;
    }
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
      --counts[digits[pos]];
      if (++digits[pos] < base) {
        ++counts[digits[pos]];
        break;
      }
      digits[pos] = 0;
      ++counts[0];
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

EstimateWithError UndecidableProbabilityMonteCarlo(
    const ErrorOffsetDistribution& model, int n, const TieRule& rule,
    std::uint64_t trials, std::uint64_t seed, const ShardPlan& plan) {
  CheckCounts(n);
  const OffsetSampler sampler(model);
  const std::size_t values = sampler.offsets().size();
  return RunSharded(trials, seed, plan,
                    [&](std::uint64_t count, Rng& rng) -> std::uint64_t {
                      std::vector<int> ks(values, 0);
                      std::uint64_t undecidable = 0;
                      for (std::uint64_t t = 0; t < count; ++t) {
                        std::fill(ks.begin(), ks.end(), 0);
                        for (int c = 0; c < n; ++c) {
                          ++ks[sampler.SampleIndex(rng)];
                        }
                        if (IsUndecidable(ks, rule)) ++undecidable;
                      }
                      return undecidable;
                    });
}

Decision DecideCount(std::span<const int> observed_offsets,
                     const TieRule& rule) {
  const OutcomeTally tally = OutcomeTally::FromOffsets(observed_offsets);
  if (IsUndecidable(tally, rule)) return {};

  const auto entries = tally.entries();
  auto top = std::max_element(
      entries.begin(), entries.end(),
      [](const auto& a, const auto& b) { return a.multiplicity < b.multiplicity; });
  auto ties = std::count_if(entries.begin(), entries.end(), [&](const auto& e) {
    return e.multiplicity == top->multiplicity;
  });
  if (ties > 1) return {};
  return {top->offset};
}

}  // namespace miscount
