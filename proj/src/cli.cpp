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

#include "miscount/cli.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "miscount/format.hpp"
#include "miscount/recount.hpp"
#include "miscount/streaks.hpp"
#include "miscount/undecidability.hpp"
#include "miscount/vote_game.hpp"

namespace miscount {

namespace {

using nlohmann::json;

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T ParseField(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  T value{};
  try {
    if constexpr (std::is_same_v<T, int>) {
      value = std::stoi(text, &used);
    } else {
      value = std::stod(text, &used);
    }
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("model: cannot parse " + field + " from '" +
                                text + "'");
  }
  return value;
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

// Shared flags for subcommands that draw random numbers.
struct SamplingFlags {
  std::uint64_t seed = 0;
  unsigned shards = 1;
  unsigned workers = 1;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    cmd->add_option("--shards", shards,
                    "Independently seeded shards (changes the stream)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", workers,
                    "Threads working through the shards (no effect on output)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }

  ShardPlan plan() const { return {shards, workers}; }
};

}  // namespace

ErrorOffsetDistribution ParseModelSpec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "file") {
    if (colon == std::string::npos || colon + 1 == spec.size()) {
      throw std::invalid_argument("model: file: needs a path");
    }
    return LoadErrorModel(spec.substr(colon + 1));
  }

  const auto parts = Split(spec, ':');
  if (kind == "point") {
    if (parts.size() != 3) {
      throw std::invalid_argument("model: expected point:<p>:<offset>");
    }
    return MakePointErrorModel(ParseField<double>(parts[1], "p"),
                               ParseField<int>(parts[2], "offset"));
  }
  if (kind == "geom") {
    if (parts.size() != 5) {
      throw std::invalid_argument(
          "model: expected geom:<p>:<decay>:<delta_min>:<delta_max>");
    }
    return MakeSymmetricGeometricModel(
        ParseField<double>(parts[1], "p"), ParseField<double>(parts[2], "decay"),
        ParseField<int>(parts[3], "delta_min"),
        ParseField<int>(parts[4], "delta_max"));
  }
  throw std::invalid_argument("model: unknown kind '" + kind +
                              "' (expected point, geom or file)");
}

std::uint64_t EnumerationBudgetFromEnv() {
  const char* raw = std::getenv(kBudgetEnvVar);
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationBudget;
  const std::string text(raw);
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0 || value == 0 || text[0] == '-') {
    throw std::invalid_argument(std::string(kBudgetEnvVar) +
                                " must be a positive integer, got '" + text +
                                "'");
  }
  return value;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Probability laboratory for repeated counting, streaks and "
               "redistribution games",
               "miscount"};
  app.require_subcommand(1);

  // recount-curves
  int grid = kDefaultCurveGrid;
  bool curves_json = false;
  auto* curves = app.add_subcommand(
      "recount-curves",
      "Error probability of one count, of two counts, and of one right plus "
      "one wrong, on a grid over p (CSV)");
  curves->add_option("--grid", grid, "Number of grid points")
      ->capture_default_str()
      ->check(CLI::Range(2, 10'000'000));
  curves->add_flag("--json", curves_json, "Emit JSON instead of CSV");

  // pair
  std::string pair_model = "point:0.1:1";
  bool emit_model = false;
  auto* pair = app.add_subcommand(
      "pair", "Outcome breakdown of two independent counts (JSON)");
  pair->add_option("--model", pair_model,
                   "Error model: point:<p>:<offset>, "
                   "geom:<p>:<decay>:<dmin>:<dmax> or file:<path>")
      ->capture_default_str();
  pair->add_flag("--emit-model", emit_model,
                 "Print only the model's JSON mass table");

  // undecidable
  std::string und_model = "point:0.1:1";
  int und_n = 2;
  std::optional<int> und_n_to;
  std::string rule_name = "mode-tie";
  int tolerance = 0;
  std::string method = "enumerate";
  std::uint64_t trials = 1'000'000;
  SamplingFlags und_sampling;
  auto* undecidable = app.add_subcommand(
      "undecidable",
      "Probability that n repeated counts leave no clear winner (JSON)");
  undecidable
      ->add_option("--model", und_model,
                   "Error model: point:<p>:<offset>, "
                   "geom:<p>:<decay>:<dmin>:<dmax> or file:<path>")
      ->capture_default_str();
  undecidable->add_option("--n", und_n, "Number of counts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  undecidable
      ->add_option("--n-to", und_n_to,
                   "Sweep n from --n up to this value; emits a JSON array")
      ->check(CLI::PositiveNumber);
  undecidable->add_option("--rule", rule_name, "Tie rule")
      ->capture_default_str()
      ->check(CLI::IsMember({"mode-tie", "tolerance-band"}));
  undecidable
      ->add_option("--tolerance", tolerance,
                   "Largest multiplicity spread counted as a tie "
                   "(tolerance-band only)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  undecidable->add_option("--method", method, "Estimator")
      ->capture_default_str()
      ->check(CLI::IsMember({"enumerate", "bruteforce", "montecarlo"}));
  undecidable->add_option("--trials", trials, "Monte Carlo trials")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  und_sampling.Attach(undecidable);

  // streaks
  bool fermi = false;
  std::uint64_t population = kFermiPreset.population;
  int battles = kFermiPreset.battles;
  double p_win = kFermiPreset.p_win;
  std::optional<std::uint64_t> observed;
  bool simulate = false;
  SamplingFlags streak_sampling;
  auto* streaks = app.add_subcommand(
      "streaks", "Chance baseline for winning streaks and its tail test (JSON)");
  auto* fermi_flag = streaks->add_flag(
      "--fermi", fermi, "Preset: 100 generals, 5 battles, p_win 0.5");
  streaks->add_option("--population", population, "Individuals considered")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->excludes(fermi_flag);
  streaks->add_option("--battles", battles, "Streak length")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->excludes(fermi_flag);
  streaks->add_option("--p-win", p_win, "Probability of a single win")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(fermi_flag);
  streaks->add_option("--observed", observed,
                      "Observed number of great individuals (adds tail test)");
  streaks->add_flag("--simulate", simulate,
                    "Also simulate the population by coin flips");
  streak_sampling.Attach(streaks);

  // vote-sim
  std::int64_t n_half = 50;
  std::int64_t k = 1;
  std::string levy = "1";
  std::string salary = "100";
  std::int64_t rounds = 1000;
  std::uint64_t vote_seed = 0;
  bool vote_json = false;
  bool floor_at_zero = false;
  auto* vote = app.add_subcommand(
      "vote-sim",
      "Repeated redistribution referendum with exact money (CSV trajectory)");
  vote->add_option("--n-half", n_half, "N, half the number of citizens")
      ->capture_default_str();
  vote->add_option("--k", k, "Winners exceed half by k")->capture_default_str();
  vote->add_option("--levy", levy, "Amount m taken from each loser (e.g. 1/3)")
      ->capture_default_str();
  vote->add_option("--salary", salary, "Starting salary s")
      ->capture_default_str();
  vote->add_option("--rounds", rounds, "Referendum rounds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  vote->add_option("--seed", vote_seed, "Seed")->capture_default_str();
  vote->add_flag("--json", vote_json, "Emit JSON instead of CSV");
  vote->add_flag("--floor", floor_at_zero,
                 "Clamp salaries at 0 (breaks wealth conservation)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (curves->parsed()) {
      const auto rows = ErrorCurveTable(grid);
      if (curves_json) {
        json doc = json::array();
        for (const auto& r : rows) {
          doc.push_back({{"p", r.p},
                         {"p_err1", r.p_err1},
                         {"p_err2", r.p_err2},
                         {"p_mixed", r.p_mixed}});
        }
        out << Dump(doc);
      } else {
        WriteCurveCsv(out, rows);
      }
      return kExitOk;
    }

    if (pair->parsed()) {
      const auto model = ParseModelSpec(pair_model);
      if (emit_model) {
        out << Dump(ToJson(model));
        return kExitOk;
      }
      const auto b = ComputePairBreakdown(model);
      out << Dump({{"model", ToJson(model)},
                   {"p_error", TotalErrorProbability(model)},
                   {"breakdown",
                    {{"both_correct", b.both_correct},
                     {"one_correct_one_wrong", b.one_correct_one_wrong},
                     {"both_wrong_same_value", b.both_wrong_same_value},
                     {"both_wrong_different_values",
                      b.both_wrong_different_values}}},
                   {"p_third_count", ThirdCountProbability(model)}});
      return kExitOk;
    }

    if (undecidable->parsed()) {
      const auto model = ParseModelSpec(und_model);
      const TieRule rule = rule_name == "mode-tie"
                               ? TieRule::ModeTie()
                               : TieRule::ToleranceBand(tolerance);
      const int last = und_n_to.value_or(und_n);
      if (last < und_n) {
        throw std::invalid_argument("--n-to must be >= --n");
      }
      const std::uint64_t budget = EnumerationBudgetFromEnv();

      auto evaluate = [&](int n) -> json {
        json result{{"method", method}, {"n", n}, {"rule", ToJson(rule)}};
        if (method == "montecarlo") {
          const auto est = UndecidableProbabilityMonteCarlo(
              model, n, rule, trials, und_sampling.seed, und_sampling.plan());
          result["p_un"] = est.estimate;
          result["std_error"] = est.std_error;
          result["trials"] = est.trials;
          result["seed"] = und_sampling.seed;
          result["shards"] = und_sampling.shards;
        } else {
          result["p_un"] =
              method == "enumerate"
                  ? UndecidableProbabilityEnumerate(model, n, rule, budget)
                  : UndecidableProbabilityBruteForce(model, n, rule);
          result["std_error"] = nullptr;
          result["trials"] = nullptr;
          result["seed"] = nullptr;
        }
        return result;
      };

      if (und_n_to) {
        json sweep = json::array();
        for (int n = und_n; n <= last; ++n) sweep.push_back(evaluate(n));
        out << Dump(sweep);
      } else {
        out << Dump(evaluate(und_n));
      }
      return kExitOk;
    }

    if (streaks->parsed()) {
      const double p_streak = StreakProbability(p_win, battles);
      GreatnessReport report;
      if (observed) {
        report = ExcessTail(population, p_streak, *observed);
      } else {
        report.population = population;
        report.p_event = p_streak;
        report.expected_greats = ExpectedGreats(population, p_streak);
      }
      json doc = ToJson(report);
      doc["battles"] = battles;
      doc["p_win"] = p_win;
      doc["p_streak"] = p_streak;
      doc["seed"] = streak_sampling.seed;
      doc["simulation"] = nullptr;
      if (simulate) {
        const auto est = SimulateGenerals(population, battles, p_win,
                                          streak_sampling.seed,
                                          streak_sampling.plan());
        doc["simulation"] = {{"estimate", est.estimate},
                             {"std_error", est.std_error},
                             {"trials", est.trials},
                             {"shards", streak_sampling.shards}};
      }
      out << Dump(doc);
      return kExitOk;
    }

    if (vote->parsed()) {
      const ReformSpec spec(n_half, k, ParseMoney(levy), ParseMoney(salary));
      const auto trajectory = SimulateRounds(spec, rounds, vote_seed,
                                             {.floor_at_zero = floor_at_zero});
      if (vote_json) {
        out << Dump({{"n_half", spec.n_half()},
                     {"k", spec.k()},
                     {"levy", ToString(spec.levy())},
                     {"salary", ToString(spec.base_salary())},
                     {"rounds", rounds},
                     {"seed", vote_seed},
                     {"floor", floor_at_zero},
                     {"redistribution_amount",
                      ToString(RedistributionAmount(spec))},
                     {"benefit_probability",
                      ToString(BenefitProbability(spec))},
                     {"expected_gain", ToString(ExpectedGain(spec))},
                     {"trajectory", TrajectoryToJson(trajectory.rows)}});
      } else {
        out << "# vote-sim n_half=" << spec.n_half() << " k=" << spec.k()
            << " levy=" << ToString(spec.levy())
            << " salary=" << ToString(spec.base_salary())
            << " rounds=" << rounds << " seed=" << vote_seed
            << " floor=" << (floor_at_zero ? "on" : "off") << '\n';
        WriteTrajectoryCsv(out, trajectory.rows);
      }
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace miscount
