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

#ifndef MISCOUNT_VOTE_GAME_HPP_
#define MISCOUNT_VOTE_GAME_HPP_

// Redistribution referendum in a society of 2N citizens with equal salary s.
// The reform takes m from N - k randomly chosen citizens and shares the
// proceeds equally among the other N + k. Because N + k >= N + 1 it always
// passes under the 50%+1 rule, each citizen benefits with probability
// (N + k) / 2N > 1/2, and the expected gain is exactly zero.
//
// Money is an exact rational so that the payoff identities and wealth
// conservation hold as equalities rather than within a tolerance.
//
// The multi-round simulation re-runs the same reform with fresh random groups
// every round. That repetition is an extension of the single referendum.
// Salaries are allowed to go negative; RoundOptions::floor_at_zero clamps
// them, at the price of breaking conservation.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "miscount/random.hpp"

namespace miscount {

using Money = boost::multiprecision::cpp_rational;

// Accepts integers ("10", "-3"), fractions ("1/3") and plain decimals
// ("2.5"). Throws std::invalid_argument otherwise.
Money ParseMoney(const std::string& text);

double ToDouble(const Money& value);

class ReformSpec {
 public:
  // Requires n_half >= 2, 1 <= k <= n_half - 1, levy > 0, base_salary >= 0.
  ReformSpec(std::int64_t n_half, std::int64_t k, Money levy,
             Money base_salary);

  std::int64_t n_half() const { return n_half_; }
  std::int64_t k() const { return k_; }
  const Money& levy() const { return levy_; }
  const Money& base_salary() const { return base_salary_; }

  std::int64_t citizens() const { return 2 * n_half_; }
  std::int64_t losers() const { return n_half_ - k_; }
  std::int64_t winners() const { return n_half_ + k_; }

 private:
  std::int64_t n_half_;
  std::int64_t k_;
  Money levy_;
  Money base_salary_;
};

// (N - k) m / (N + k): what each winner receives.
Money RedistributionAmount(const ReformSpec& spec);

// (N + k) / 2N.
Money BenefitProbability(const ReformSpec& spec);

// P(win) * amount - P(lose) * m, evaluated exactly. Zero for every spec.
Money ExpectedGain(const ReformSpec& spec);

// yes_votes >= N + 1.
bool ReferendumPasses(std::int64_t yes_votes, const ReformSpec& spec);

struct Society {
  std::vector<Money> salaries;
  std::int64_t round = 0;
};

Society MakeUniformSociety(const ReformSpec& spec);

Money TotalWealth(const Society& society);

struct RoundOptions {
  bool floor_at_zero = false;
};

// One referendum: a uniformly random set of N - k citizens (first N - k
// entries of a seeded Fisher-Yates shuffle) loses the levy and everybody else
// gains RedistributionAmount(spec).
Society ApplyRound(Society society, const ReformSpec& spec, Rng& rng,
                   const RoundOptions& options = {});
void ApplyRoundInPlace(Society& society, const ReformSpec& spec, Rng& rng,
                       const RoundOptions& options = {});

struct TrajectoryRow {
  std::int64_t round = 0;
  Money total;
  double mean = 0.0;
  double variance = 0.0;  // population variance
  double gini = 0.0;      // 0 when total wealth is zero
  double min = 0.0;
  double max = 0.0;
};

TrajectoryRow Summarize(const Society& society);

struct Trajectory {
  std::vector<TrajectoryRow> rows;  // rows[0] is the uniform start
  Society final_society;
};

// Runs `rounds` referendums from uniform salaries with Rng(seed).
Trajectory SimulateRounds(const ReformSpec& spec, std::int64_t rounds,
                          std::uint64_t seed, const RoundOptions& options = {});

// Same random stream as SimulateRounds, without the per-round statistics.
Society RunRounds(const ReformSpec& spec, std::int64_t rounds,
                  std::uint64_t seed, const RoundOptions& options = {});

// CSV header `round,mean,variance,gini,min,max`, 12 significant digits.
void WriteTrajectoryCsv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
nlohmann::json TrajectoryToJson(const std::vector<TrajectoryRow>& rows);

std::string ToString(const Money& value);

}  // namespace miscount

#endif  // MISCOUNT_VOTE_GAME_HPP_
