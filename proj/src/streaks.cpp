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

#include "miscount/streaks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace miscount {

namespace {

void CheckProbability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability must lie in [0, 1]");
  }
}

void CheckPopulation(std::uint64_t population) {
  if (population < 1) throw std::invalid_argument("population must be >= 1");
}

// log C(n, j) + j log p + (n - j) log(1 - p), with 0 < p < 1.
double LogBinomialTerm(std::uint64_t n, std::uint64_t j, double log_p,
                       double log_q) {
  const double nd = static_cast<double>(n);
  const double jd = static_cast<double>(j);
  return std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) -
         std::lgamma(nd - jd + 1.0) + jd * log_p + (nd - jd) * log_q;
}

}  // namespace

nlohmann::json ToJson(const GreatnessReport& report) {
  nlohmann::json out{{"population", report.population},
                     {"p_event", report.p_event},
                     {"expected_greats", report.expected_greats},
                     {"observed_greats", nullptr},
                     {"tail_probability", nullptr}};
  if (report.observed_greats) out["observed_greats"] = *report.observed_greats;
  if (report.tail_probability) {
    out["tail_probability"] = *report.tail_probability;
  }
  return out;
}

double StreakProbability(double p_win, int length) {
  CheckProbability(p_win);
  if (length < 0) throw std::invalid_argument("streak length must be >= 0");
  return std::pow(p_win, length);
}

double ExpectedGreats(std::uint64_t population, double p_event) {
  CheckPopulation(population);
  CheckProbability(p_event);
  return static_cast<double>(population) * p_event;
}

GreatnessReport ExcessTail(std::uint64_t population, double p_event,
                           std::uint64_t observed) {
  GreatnessReport report;
  report.population = population;
  report.p_event = p_event;
  report.expected_greats = ExpectedGreats(population, p_event);
  if (observed > population) {
    throw std::invalid_argument("observed greats cannot exceed population");
  }
  report.observed_greats = observed;

  double tail = 0.0;
  if (observed == 0) {
    tail = 1.0;
  } else if (p_event == 0.0) {
    tail = 0.0;
  } else if (p_event == 1.0) {
    tail = 1.0;
  } else {
    const double log_p = std::log(p_event);
    const double log_q = std::log1p(-p_event);
    // Smallest terms first.
    for (std::uint64_t j = population + 1; j-- > observed;) {
      tail += std::exp(LogBinomialTerm(population, j, log_p, log_q));
    }
  }
  report.tail_probability = std::clamp(tail, 0.0, 1.0);
  return report;
}

EstimateWithError SimulateGenerals(std::uint64_t population, int battles,
                                   double p_win, std::uint64_t seed,
                                   const ShardPlan& plan) {
  CheckPopulation(population);
  CheckProbability(p_win);
  if (battles < 1) throw std::invalid_argument("battles must be >= 1");
  return RunSharded(population, seed, plan,
                    [&](std::uint64_t generals, Rng& rng) -> std::uint64_t {
                      std::bernoulli_distribution win(p_win);
                      std::uint64_t great = 0;
                      for (std::uint64_t g = 0; g < generals; ++g) {
                        int b = 0;
                        while (b < battles && win(rng)) ++b;
                        if (b == battles) ++great;
                      }
                      return great;
                    });
}

}  // namespace miscount
