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

#ifndef MISCOUNT_RECOUNT_HPP_
#define MISCOUNT_RECOUNT_HPP_

#include <ostream>
#include <vector>

#include "miscount/error_model.hpp"

namespace miscount {

// Probability of erring at least once in n independent counts,
// 1 - (1 - p)^n. n = 1 is the single-count error p; n = 2 is the double
// count. Throws std::invalid_argument for n = 0 or p outside [0, 1].
double ErrorProbabilityRepeat(double p, int n);

// Four-way partition of the outcome of two independent counts.
struct PairBreakdown {
  double both_correct = 0.0;                 // (1-p)^2
  double one_correct_one_wrong = 0.0;        // 2p(1-p)
  double both_wrong_same_value = 0.0;        // sum over Delta != 0 of mass^2
  double both_wrong_different_values = 0.0;  // p^2 minus the above
};

PairBreakdown ComputePairBreakdown(const ErrorOffsetDistribution& model);

// Probability that two counts disagree, 1 - sum_Delta mass(Delta)^2: the
// chance the counter is forced to count a third time.
double ThirdCountProbability(const ErrorOffsetDistribution& model);

inline constexpr int kDefaultCurveGrid = 101;

struct CurveRow {
  double p = 0.0;
  double p_err1 = 0.0;   // p
  double p_err2 = 0.0;   // 1 - (1-p)^2
  double p_mixed = 0.0;  // 2p(1-p)
};

// Rows at p = i / (grid_points - 1), i = 0 .. grid_points - 1.
std::vector<CurveRow> ErrorCurveTable(int grid_points = kDefaultCurveGrid);

// CSV with header `p,p_err1,p_err2,p_mixed`, 12 significant digits.
void WriteCurveCsv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace miscount

#endif  // MISCOUNT_RECOUNT_HPP_
