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

#ifndef MISCOUNT_ERROR_MODEL_HPP_
#define MISCOUNT_ERROR_MODEL_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "miscount/random.hpp"

namespace miscount {

// Tolerance on the total mass of a distribution.
inline constexpr double kNormalizationTolerance = 1e-12;

// Probability mass over the integer offsets Delta = E - M between a counted
// value E and the true count M, for a single counting attempt.
//
// Offsets are kept sorted and distinct; offset 0 is always present (possibly
// with zero mass), so mass(0) is the probability of a correct count and
// 1 - mass(0) the total error probability p. Instances are immutable.
class ErrorOffsetDistribution {
 public:
  // Validates and normalizes nothing: `mass` must already sum to one within
  // kNormalizationTolerance. Throws std::invalid_argument otherwise, or when
  // the bounds or offsets are inconsistent.
  ErrorOffsetDistribution(int delta_min, int delta_max,
                          const std::map<int, double>& mass);

  int delta_min() const { return delta_min_; }
  int delta_max() const { return delta_max_; }

  std::span<const int> support() const { return support_; }
  std::span<const double> masses() const { return masses_; }

  // Zero for offsets outside the support.
  double mass(int delta) const;

  // Offsets with strictly positive mass, in increasing order, with their
  // masses. This is the outcome space the enumerators iterate over.
  std::vector<int> positive_support() const;
  std::vector<double> positive_masses() const;

  friend bool operator==(const ErrorOffsetDistribution&,
                         const ErrorOffsetDistribution&) = default;

 private:
  int delta_min_;
  int delta_max_;
  std::vector<int> support_;
  std::vector<double> masses_;
};

// mass(0) = 1 - p, mass(wrong_offset) = p.
ErrorOffsetDistribution MakePointErrorModel(double p, int wrong_offset);

// mass(0) = 1 - p and, for Delta != 0 in [delta_min, delta_max],
// mass(Delta) proportional to decay^|Delta| with the error mass summing to p.
ErrorOffsetDistribution MakeSymmetricGeometricModel(double p, double decay,
                                                    int delta_min,
                                                    int delta_max);

// 1 - mass(0).
double TotalErrorProbability(const ErrorOffsetDistribution& model);

// Draws offsets from a fixed distribution by inversion of the cumulative
// mass table. Sequences are a pure function of the engine state.
class OffsetSampler {
 public:
  explicit OffsetSampler(const ErrorOffsetDistribution& model);

  int operator()(Rng& rng) const;

  // Index into offsets() of the next draw.
  std::size_t SampleIndex(Rng& rng) const;

  // Positive-mass offsets, increasing.
  std::span<const int> offsets() const { return offsets_; }

 private:
  std::vector<int> offsets_;
  std::vector<double> cumulative_;
};

int SampleOffset(const ErrorOffsetDistribution& model, Rng& rng);

// JSON mass table:
//   {"delta_min": int, "delta_max": int, "mass": [{"delta": int, "p": float}]}
// Parsing errors are reported as std::invalid_argument naming the field.
nlohmann::json ToJson(const ErrorOffsetDistribution& model);
ErrorOffsetDistribution ErrorModelFromJson(const nlohmann::json& table);
ErrorOffsetDistribution LoadErrorModel(const std::string& path);

}  // namespace miscount

#endif  // MISCOUNT_ERROR_MODEL_HPP_
