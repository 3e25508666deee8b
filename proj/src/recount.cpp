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

#include "miscount/recount.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "miscount/format.hpp"

namespace miscount {

double ErrorProbabilityRepeat(double p, int n) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("error probability must lie in [0, 1]");
  }
  if (n < 1) throw std::invalid_argument("number of counts must be >= 1");
  return 1.0 - std::pow(1.0 - p, n);
}

PairBreakdown ComputePairBreakdown(const ErrorOffsetDistribution& model) {
  const double correct = model.mass(0);
  const double p = TotalErrorProbability(model);

  double same_wrong = 0.0;
  auto support = model.support();
  auto masses = model.masses();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] != 0) same_wrong += masses[i] * masses[i];
  }

  PairBreakdown out;
  out.both_correct = correct * correct;
  out.one_correct_one_wrong = 2.0 * p * correct;
  out.both_wrong_same_value = same_wrong;
  // Clamp the cancellation residue of p^2 - same_wrong at tiny p.
  out.both_wrong_different_values = std::max(0.0, p * p - same_wrong);
  return out;
}

double ThirdCountProbability(const ErrorOffsetDistribution& model) {
  double agree = 0.0;
  for (double m : model.masses()) agree += m * m;
  return std::max(0.0, 1.0 - agree);
}

std::vector<CurveRow> ErrorCurveTable(int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    double p = static_cast<double>(i) / (grid_points - 1);
    rows.push_back({p, p, 1.0 - (1.0 - p) * (1.0 - p), 2.0 * p * (1.0 - p)});
  }
  return rows;
}

void WriteCurveCsv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "p,p_err1,p_err2,p_mixed\n";
  for (const auto& r : rows) {
    out << FormatDecimal(r.p) << ',' << FormatDecimal(r.p_err1) << ','
        << FormatDecimal(r.p_err2) << ',' << FormatDecimal(r.p_mixed) << '\n';
  }
}

}  // namespace miscount
