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

#include "miscount/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <type_traits>

namespace miscount {

namespace {

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

ErrorOffsetDistribution::ErrorOffsetDistribution(
    int delta_min, int delta_max, const std::map<int, double>& mass)
    : delta_min_(delta_min), delta_max_(delta_max) {
  if (delta_min > 0) throw std::invalid_argument("delta_min must be <= 0");
  if (delta_max < 0) throw std::invalid_argument("delta_max must be >= 0");

  std::map<int, double> table = mass;
  table.try_emplace(0, 0.0);

  double total = 0.0;
  for (const auto& [delta, p] : table) {
    if (delta < delta_min || delta > delta_max) {
      throw std::invalid_argument("offset " + std::to_string(delta) +
                                  " outside [delta_min, delta_max]");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("mass of offset " + std::to_string(delta) +
                                  " must lie in [0, 1]");
    }
    total += p;
    support_.push_back(delta);
    masses_.push_back(p);
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("mass table is not normalized (sum = " +
                                std::to_string(total) + ")");
  }
}

double ErrorOffsetDistribution::mass(int delta) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), delta);
  if (it == support_.end() || *it != delta) return 0.0;
  return masses_[static_cast<std::size_t>(it - support_.begin())];
}

std::vector<int> ErrorOffsetDistribution::positive_support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (masses_[i] > 0.0) out.push_back(support_[i]);
  }
  return out;
}

std::vector<double> ErrorOffsetDistribution::positive_masses() const {
  std::vector<double> out;
  for (double p : masses_) {
    if (p > 0.0) out.push_back(p);
  }
  return out;
}

ErrorOffsetDistribution MakePointErrorModel(double p, int wrong_offset) {
  CheckProbability(p, "error probability");
  if (wrong_offset == 0) {
    throw std::invalid_argument("wrong_offset must be nonzero");
  }
  return ErrorOffsetDistribution(std::min(0, wrong_offset),
                                 std::max(0, wrong_offset),
                                 {{0, 1.0 - p}, {wrong_offset, p}});
}

ErrorOffsetDistribution MakeSymmetricGeometricModel(double p, double decay,
                                                    int delta_min,
                                                    int delta_max) {
  CheckProbability(p, "error probability");
  if (!(decay > 0.0 && decay < 1.0)) {
    throw std::invalid_argument("decay must lie in (0, 1)");
  }
  if (delta_min > -1 || delta_max < 1) {
    throw std::invalid_argument(
        "geometric model needs delta_min <= -1 and delta_max >= 1");
  }

  std::map<int, double> weights;
  double weight_sum = 0.0;
  for (int delta = delta_min; delta <= delta_max; ++delta) {
    if (delta == 0) continue;
    double w = std::pow(decay, std::abs(delta));
    weights[delta] = w;
    weight_sum += w;
  }
  if (!(weight_sum > 0.0)) {
    throw std::invalid_argument("geometric weights underflow to zero");
  }

  std::map<int, double> mass{{0, 1.0 - p}};
  for (const auto& [delta, w] : weights) mass[delta] = p * w / weight_sum;
  return ErrorOffsetDistribution(delta_min, delta_max, mass);
}

double TotalErrorProbability(const ErrorOffsetDistribution& model) {
  return 1.0 - model.mass(0);
}

OffsetSampler::OffsetSampler(const ErrorOffsetDistribution& model) {
  double running = 0.0;
  auto support = model.support();
  auto masses = model.masses();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (masses[i] <= 0.0) continue;
    running += masses[i];
    offsets_.push_back(support[i]);
    cumulative_.push_back(running);
  }
  // Absorb rounding so that every uniform draw in [0, 1) lands somewhere.
  cumulative_.back() = 1.0;
}

std::size_t OffsetSampler::SampleIndex(Rng& rng) const {
  if (offsets_.size() == 1) return 0;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u = uniform(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

int OffsetSampler::operator()(Rng& rng) const {
  return offsets_[SampleIndex(rng)];
}

int SampleOffset(const ErrorOffsetDistribution& model, Rng& rng) {
  return OffsetSampler(model)(rng);
}

nlohmann::json ToJson(const ErrorOffsetDistribution& model) {
  nlohmann::json entries = nlohmann::json::array();
  auto support = model.support();
  auto masses = model.masses();
  for (std::size_t i = 0; i < support.size(); ++i) {
    entries.push_back({{"delta", support[i]}, {"p", masses[i]}});
  }
  return {{"delta_min", model.delta_min()},
          {"delta_max", model.delta_max()},
          {"mass", std::move(entries)}};
}

namespace {

template <typename T>
T RequireField(const nlohmann::json& object, const char* field,
               const std::string& where) {
  if (!object.is_object() || !object.contains(field)) {
    throw std::invalid_argument("mass table: missing field '" + where +
                                field + "'");
  }
  const auto& value = object.at(field);
  if constexpr (std::is_same_v<T, int>) {
    if (!value.is_number_integer()) {
      throw std::invalid_argument("mass table: field '" + where + field +
                                  "' must be an integer");
    }
  } else {
    if (!value.is_number()) {
      throw std::invalid_argument("mass table: field '" + where + field +
                                  "' must be a number");
    }
  }
  return value.get<T>();
}

}  // namespace

ErrorOffsetDistribution ErrorModelFromJson(const nlohmann::json& table) {
  if (!table.is_object()) {
    throw std::invalid_argument("mass table: top level must be an object");
  }
  int delta_min = RequireField<int>(table, "delta_min", "");
  int delta_max = RequireField<int>(table, "delta_max", "");
  if (!table.contains("mass") || !table.at("mass").is_array()) {
    throw std::invalid_argument("mass table: field 'mass' must be an array");
  }
  std::map<int, double> mass;
  const auto& entries = table.at("mass");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string where = "mass[" + std::to_string(i) + "].";
    int delta = RequireField<int>(entries[i], "delta", where);
    double p = RequireField<double>(entries[i], "p", where);
    if (!mass.emplace(delta, p).second) {
      throw std::invalid_argument("mass table: field '" + where +
                                  "delta' repeats offset " +
                                  std::to_string(delta));
    }
  }
  try {
    return ErrorOffsetDistribution(delta_min, delta_max, mass);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("mass table: ") + e.what());
  }
}

ErrorOffsetDistribution LoadErrorModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open mass table '" + path + "'");
  nlohmann::json table;
  try {
    in >> table;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("mass table '" + path +
                                "' is not valid JSON: " + e.what());
  }
  return ErrorModelFromJson(table);
}

}  // namespace miscount
