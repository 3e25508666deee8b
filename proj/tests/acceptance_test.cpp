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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "miscount/error_model.hpp"
#include "miscount/recount.hpp"
#include "miscount/streaks.hpp"
#include "miscount/undecidability.hpp"
#include "miscount/vote_game.hpp"

namespace {

using namespace miscount;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun RunCli(const std::string& args) {
  const std::string cmd = std::string(MISCOUNT_CLI_PATH) + " " + args;
  CliRun run;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return run;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    run.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string Fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

// 1. Five coin-flip battles over a hundred generals.
Outcome FermiNumber() {
  Outcome o;
  auto run = RunCli("streaks --fermi");
  o.Require(run.code == 0, "exit code " + std::to_string(run.code));
  if (run.code != 0) return o;
  auto doc = json::parse(run.out);
  const double p_streak = doc["p_streak"].get<double>();
  const double expected = doc["expected_greats"].get<double>();
  o.Require(p_streak == 0.03125 && p_streak == 1.0 / 32.0,
            "p_streak = " + Fmt(p_streak));
  o.Require(expected == 3.125, "expected_greats = " + Fmt(expected));
  o.Require(doc["population"] == 100, "population != 100");
  o.detail = o.pass ? "p_streak=" + Fmt(p_streak) +
                          " expected_greats=" + Fmt(expected)
                    : o.detail;
  return o;
}

// 2. Curve table dominance and crossing at 101 grid points.
Outcome CurveTable() {
  Outcome o;
  auto rows = ErrorCurveTable(101);
  o.Require(rows.size() == 101, "row count");
  int strict = 0;
  for (const auto& r : rows) {
    const bool endpoint = r.p == 0.0 || r.p == 1.0;
    if (endpoint) {
      o.Require(r.p_err2 == r.p_err1, "equality fails at p=" + Fmt(r.p));
    } else {
      o.Require(r.p_err2 > r.p_err1, "dominance fails at p=" + Fmt(r.p));
    }
    const bool below_half = r.p > 0.0 && r.p < 0.5;
    o.Require((r.p_mixed > r.p) == below_half,
              "crossing fails at p=" + Fmt(r.p));
    strict += below_half;
  }
  if (o.pass) {
    o.detail = "101 rows; 2p(1-p) > p at " + std::to_string(strict) +
               " interior points";
  }
  return o;
}

// 3. Multinomial enumeration against sequence brute force.
Outcome OracleEquivalence() {
  Outcome o;
  const std::vector<std::pair<std::string, ErrorOffsetDistribution>> models = {
      {"point", MakePointErrorModel(0.3, 1)},
      {"geometric", MakeSymmetricGeometricModel(0.4, 0.5, -1, 2)},
      {"custom3",
       ErrorOffsetDistribution(-2, 3, {{-2, 0.15}, {0, 0.6}, {3, 0.25}})},
  };
  const std::vector<TieRule> rules = {TieRule::ModeTie(),
                                      TieRule::ToleranceBand(1)};
  int combos = 0;
  double worst = 0.0;
  for (const auto& [name, model] : models) {
    for (int n : {2, 3, 4, 5, 6, 8}) {
      for (const auto& rule : rules) {
        const double exact = UndecidableProbabilityEnumerate(model, n, rule);
        const double brute = UndecidableProbabilityBruteForce(model, n, rule);
        const double gap = std::abs(exact - brute);
        worst = std::max(worst, gap);
        o.Require(gap <= 1e-10, name + " n=" + std::to_string(n) + " " +
                                    KindName(rule.kind) + " gap " + Fmt(gap));
        ++combos;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(combos) + " combinations, max gap " + Fmt(worst);
  }
  return o;
}

// 4. Monte Carlo against the exact fair-coin value.
Outcome MonteCarloConsistency() {
  Outcome o;
  ErrorOffsetDistribution coin(0, 1, {{0, 0.5}, {1, 0.5}});
  auto est = UndecidableProbabilityMonteCarlo(coin, 4, TieRule::ModeTie(),
                                              1'000'000, 0);
  const double z = std::abs(est.estimate - 0.375) / est.std_error;
  o.Require(z <= 5.0, "z = " + Fmt(z));
  o.detail = "estimate " + Fmt(est.estimate) + " +/- " + Fmt(est.std_error) +
             " (z = " + Fmt(z) + ")";
  return o;
}

// 5. Zero expected gain and benefit excess over 200 specs.
Outcome VoteAlgebra() {
  Outcome o;
  const std::vector<Money> levies = {Money(1), Money(7), Money(10),
                                     Money(1, 3)};
  Rng rng(5);
  std::uniform_int_distribution<std::int64_t> n_dist(2, 1000);
  int specs = 0;
  for (int i = 0; i < 200; ++i) {
    std::int64_t n = 0;
    std::int64_t k = 0;
    if (i == 0) {
      n = 2, k = 1;
    } else if (i == 1) {
      n = 1000, k = 999;
    } else if (i == 2) {
      n = 1000, k = 1;
    } else {
      n = n_dist(rng);
      k = i % 10 == 0
              ? n - 1
              : std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    }
    const ReformSpec spec(n, k, levies[i % levies.size()], Money(100));
    o.Require(ExpectedGain(spec) == 0,
              "nonzero gain at N=" + std::to_string(n));
    o.Require(BenefitProbability(spec) - Money(1, 2) == Money(k, 2 * n),
              "benefit excess at N=" + std::to_string(n));
    ++specs;
  }
  if (o.pass) o.detail = std::to_string(specs) + " specs, all identities exact";
  return o;
}

// 6. Exact conservation over 1000 rounds, zero mean gain over replications.
Outcome Conservation() {
  Outcome o;
  const ReformSpec spec(50, 1, Money(1), Money(100));
  const Money total = Money(100) * 100;
  auto traj = SimulateRounds(spec, 1000, 11);
  o.Require(traj.rows.size() == 1001, "row count");
  for (const auto& row : traj.rows) {
    if (row.total != total) {
      o.Require(false, "wealth drifted at round " + std::to_string(row.round));
      break;
    }
  }

  // Gain of each citizen after 1000 rounds, across 200 replications.
  const int replications = 200;
  const std::size_t citizens = 100;
  std::vector<double> sum(citizens, 0.0), sum_sq(citizens, 0.0);
  for (int r = 0; r < replications; ++r) {
    auto society = RunRounds(spec, 1000, DeriveSeed(11, r));
    o.Require(TotalWealth(society) == total, "replication lost wealth");
    for (std::size_t c = 0; c < citizens; ++c) {
      const double gain = ToDouble(society.salaries[c] - spec.base_salary());
      sum[c] += gain;
      sum_sq[c] += gain * gain;
    }
  }
  double worst_z = 0.0;
  for (std::size_t c = 0; c < citizens; ++c) {
    const double mean = sum[c] / replications;
    const double var =
        (sum_sq[c] - replications * mean * mean) / (replications - 1);
    const double se = std::sqrt(var / replications);
    worst_z = std::max(worst_z, std::abs(mean) / se);
  }
  o.Require(worst_z <= 5.0, "max |z| = " + Fmt(worst_z));
  if (o.pass) {
    o.detail = "1001 rows conserve 10000 exactly; max per-citizen |z| = " +
               Fmt(worst_z);
  }
  return o;
}

// 7. Pair breakdown against ordered-pair enumeration.
Outcome PairSanity() {
  Outcome o;
  const std::vector<ErrorOffsetDistribution> models = {
      MakePointErrorModel(0.0, 1),
      MakePointErrorModel(0.5, 1),
      MakePointErrorModel(1.0, -2),
      MakeSymmetricGeometricModel(0.4, 0.5, -1, 1),
      MakeSymmetricGeometricModel(0.4, 0.5, -1, 2),
      MakeSymmetricGeometricModel(0.9, 0.8, -5, 5),
      ErrorOffsetDistribution(-1, 1, {{-1, 0.25}, {0, 0.5}, {1, 0.25}}),
      ErrorOffsetDistribution(-2, 3, {{-2, 0.15}, {0, 0.6}, {3, 0.25}}),
  };
  for (std::size_t m = 0; m < models.size(); ++m) {
    const auto& model = models[m];
    std::array<double, 4> slow{};
    auto support = model.support();
    auto masses = model.masses();
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = 0; j < support.size(); ++j) {
        const double w = masses[i] * masses[j];
        const int wrong = (support[i] != 0) + (support[j] != 0);
        if (wrong == 0) {
          slow[0] += w;
        } else if (wrong == 1) {
          slow[1] += w;
        } else if (support[i] == support[j]) {
          slow[2] += w;
        } else {
          slow[3] += w;
        }
      }
    }
    auto b = ComputePairBreakdown(model);
    const std::array<double, 4> fast = {b.both_correct, b.one_correct_one_wrong,
                                        b.both_wrong_same_value,
                                        b.both_wrong_different_values};
    const std::string tag = "model " + std::to_string(m);
    double total = 0.0;
    for (std::size_t f = 0; f < 4; ++f) {
      total += fast[f];
      o.Require(std::abs(fast[f] - slow[f]) <= 1e-12,
                tag + " field " + std::to_string(f));
    }
    o.Require(std::abs(total - 1.0) <= 1e-12, tag + " sum " + Fmt(total));
    o.Require(ThirdCountProbability(model) >= b.one_correct_one_wrong,
              tag + " disagreement below mixed");
  }
  if (o.pass) o.detail = std::to_string(models.size()) + " models";
  return o;
}

// 8. Same argv, same bytes.
Outcome Determinism() {
  Outcome o;
  const std::vector<std::string> invocations = {
      "undecidable --model geom:0.4:0.5:-1:2 --n 6 --method montecarlo "
      "--trials 200000 --seed 3",
      "undecidable --model point:0.5:1 --n 4 --method montecarlo "
      "--trials 100000 --seed 8 --shards 8 --workers 4",
      "streaks --fermi --simulate --seed 12",
      "streaks --population 100000 --battles 5 --simulate --seed 1",
      "vote-sim --rounds 200 --seed 11",
      "vote-sim --n-half 10 --k 3 --levy 1/3 --rounds 50 --seed 2 --json",
  };
  for (const auto& args : invocations) {
    auto first = RunCli(args);
    auto second = RunCli(args);
    o.Require(first.code == 0 && second.code == 0, "failed: " + args);
    o.Require(!first.out.empty() && first.out == second.out,
              "output differs: " + args);
  }
  if (o.pass) {
    o.detail = std::to_string(invocations.size()) +
               " stochastic invocations byte-identical";
  }
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "fermi number", 1.0, FermiNumber},
      {2, "error curve table", 1.0, CurveTable},
      {3, "enumeration vs brute force", 30.0, OracleEquivalence},
      {4, "monte carlo consistency", 5.0, MonteCarloConsistency},
      {5, "vote game algebra", 1.0, VoteAlgebra},
      {6, "wealth conservation", 30.0, Conservation},
      {7, "pair breakdown", 0.0, PairSanity},
      {8, "determinism", 0.0, Determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " [over time budget " + Fmt(c.budget_seconds) + " s]";
    }
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.3f s", seconds);
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  AC" << c.id << " "
              << c.name << " (" << timing << "): " << outcome.detail << '\n';
    failures += !outcome.pass;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
