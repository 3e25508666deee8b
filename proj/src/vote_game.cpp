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

#include "miscount/vote_game.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>

#include "miscount/format.hpp"

namespace miscount {

Money ParseMoney(const std::string& text) {
  auto bad = [&] {
    return std::invalid_argument("cannot parse '" + text +
                                 "' as an exact amount");
  };
  if (text.empty()) throw bad();

  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    try {
      return Money(text);
    } catch (const std::exception&) {
      throw bad();
    }
  }

  // Decimal: digits before and after a single point, optional sign.
  std::string whole = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  bool negative = false;
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
    negative = whole[0] == '-';
    whole.erase(0, 1);
  }
  auto digits = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if ((whole.empty() && frac.empty()) || !digits(whole) || !digits(frac)) {
    throw bad();
  }
  boost::multiprecision::cpp_int numerator(whole.empty() ? "0" : whole);
  boost::multiprecision::cpp_int denominator = 1;
  for (char c : frac) {
    numerator = numerator * 10 + (c - '0');
    denominator *= 10;
  }
  Money value(numerator, denominator);
  return negative ? Money(-value) : value;
}

double ToDouble(const Money& value) { return value.convert_to<double>(); }

std::string ToString(const Money& value) { return value.str(); }

ReformSpec::ReformSpec(std::int64_t n_half, std::int64_t k, Money levy,
                       Money base_salary)
    : n_half_(n_half),
      k_(k),
      levy_(std::move(levy)),
      base_salary_(std::move(base_salary)) {
  if (n_half_ < 2) throw std::invalid_argument("N must be >= 2");
  if (k_ < 1 || k_ > n_half_ - 1) {
    throw std::invalid_argument("k must lie in [1, N - 1]");
  }
  if (levy_ <= 0) throw std::invalid_argument("levy m must be positive");
  if (base_salary_ < 0) {
    throw std::invalid_argument("base salary s must be nonnegative");
  }
}

Money RedistributionAmount(const ReformSpec& spec) {
  return Money(spec.losers()) * spec.levy() / Money(spec.winners());
}

Money BenefitProbability(const ReformSpec& spec) {
  return Money(spec.winners(), spec.citizens());
}

Money ExpectedGain(const ReformSpec& spec) {
  const Money p_win = BenefitProbability(spec);
  const Money p_lose = Money(spec.losers(), spec.citizens());
  return p_win * RedistributionAmount(spec) + p_lose * (-spec.levy());
}

bool ReferendumPasses(std::int64_t yes_votes, const ReformSpec& spec) {
  if (yes_votes < 0 || yes_votes > spec.citizens()) {
    throw std::invalid_argument("yes votes must lie in [0, 2N]");
  }
  return yes_votes >= spec.n_half() + 1;
}

Society MakeUniformSociety(const ReformSpec& spec) {
  return {std::vector<Money>(static_cast<std::size_t>(spec.citizens()),
                             spec.base_salary()),
          0};
}

Money TotalWealth(const Society& society) {
  Money total = 0;
  for (const auto& s : society.salaries) total += s;
  return total;
}

void ApplyRoundInPlace(Society& society, const ReformSpec& spec, Rng& rng,
                       const RoundOptions& options) {
  const std::size_t citizens = static_cast<std::size_t>(spec.citizens());
  if (society.salaries.size() != citizens) {
    throw std::invalid_argument("society size does not match 2N");
  }
  const std::size_t losers = static_cast<std::size_t>(spec.losers());

  std::vector<std::size_t> order(citizens);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < losers; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, citizens - 1);
    std::swap(order[i], order[pick(rng)]);
  }

  const Money gain = RedistributionAmount(spec);
  std::vector<bool> loses(citizens, false);
  for (std::size_t i = 0; i < losers; ++i) loses[order[i]] = true;
  for (std::size_t c = 0; c < citizens; ++c) {
    Money& salary = society.salaries[c];
    if (loses[c]) {
      salary -= spec.levy();
    } else {
      salary += gain;
    }
    if (options.floor_at_zero && salary < 0) salary = 0;
  }
  ++society.round;
}

Society ApplyRound(Society society, const ReformSpec& spec, Rng& rng,
                   const RoundOptions& options) {
  ApplyRoundInPlace(society, spec, rng, options);
  return society;
}

TrajectoryRow Summarize(const Society& society) {
  TrajectoryRow row;
  row.round = society.round;
  row.total = TotalWealth(society);
  const auto& xs = society.salaries;
  if (xs.empty()) return row;

  const Money n(static_cast<std::int64_t>(xs.size()));
  const Money mean = row.total / n;
  Money squares = 0;
  for (const auto& x : xs) {
    Money d = x - mean;
    squares += d * d;
  }

  std::vector<Money> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  // Gini = sum_i (2i - n - 1) x_(i) / (n * total), i = 1..n ascending.
  Money weighted = 0;
  const std::int64_t count = static_cast<std::int64_t>(sorted.size());
  for (std::int64_t i = 0; i < count; ++i) {
    weighted += Money(2 * (i + 1) - count - 1) * sorted[static_cast<std::size_t>(i)];
  }

  row.mean = ToDouble(mean);
  row.variance = ToDouble(squares / n);
  row.gini = row.total == 0 ? 0.0 : ToDouble(weighted / (n * row.total));
  row.min = ToDouble(sorted.front());
  row.max = ToDouble(sorted.back());
  return row;
}

Trajectory SimulateRounds(const ReformSpec& spec, std::int64_t rounds,
                          std::uint64_t seed, const RoundOptions& options) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  Rng rng(seed);
  Trajectory out;
  out.final_society = MakeUniformSociety(spec);
  out.rows.reserve(static_cast<std::size_t>(rounds) + 1);
  out.rows.push_back(Summarize(out.final_society));
  for (std::int64_t r = 0; r < rounds; ++r) {
    ApplyRoundInPlace(out.final_society, spec, rng, options);
    out.rows.push_back(Summarize(out.final_society));
  }
  return out;
}

Society RunRounds(const ReformSpec& spec, std::int64_t rounds,
                  std::uint64_t seed, const RoundOptions& options) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  Rng rng(seed);
  Society society = MakeUniformSociety(spec);
  for (std::int64_t r = 0; r < rounds; ++r) {
    ApplyRoundInPlace(society, spec, rng, options);
  }
  return society;
}

void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<TrajectoryRow>& rows) {
  out << "round,mean,variance,gini,min,max\n";
  for (const auto& r : rows) {
    out << r.round << ',' << FormatDecimal(r.mean) << ','
        << FormatDecimal(r.variance) << ',' << FormatDecimal(r.gini) << ','
        << FormatDecimal(r.min) << ',' << FormatDecimal(r.max) << '\n';
  }
}

nlohmann::json TrajectoryToJson(const std::vector<TrajectoryRow>& rows) {
  // Same 12 significant digits as the CSV.
  auto rounded = [](double x) { return std::stod(FormatDecimal(x)); };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"round", r.round},
                   {"mean", rounded(r.mean)},
                   {"variance", rounded(r.variance)},
                   {"gini", rounded(r.gini)},
                   {"min", rounded(r.min)},
                   {"max", rounded(r.max)}});
  }
  return out;
}

}  // namespace miscount
