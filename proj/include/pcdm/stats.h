// Copyright 2026 The PCDM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCDM_STATS_H_
#define PCDM_STATS_H_

#include <span>
#include <vector>

namespace pcdm {

// All three throw kDegenerateInput when the lengths differ or are below two;
// the correlations also throw it for a zero-variance input.
double PearsonCc(std::span<const double> x, std::span<const double> y);
double Rmse(std::span<const double> x, std::span<const double> y);
double SpearmanRho(std::span<const double> x, std::span<const double> y);

// 1-based ranks; tied values share the average of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept.
AffineFit FitAffine(std::span<const double> x, std::span<const double> y);

}  // namespace pcdm

#endif  // PCDM_STATS_H_
