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

#ifndef PCDM_REGRESSION_H_
#define PCDM_REGRESSION_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace pcdm {

// Shape of the five-parameter logistic mapping raw scores to DMOS.
enum class LogisticForm {
  // beta1 * (1/2 - 1 / (1 + exp(beta2 (x - beta3)))) + beta4 x + beta5
  kStandard,
  // beta1 * (1 - 1 / (2 + exp(beta2 (x - beta3)))) + beta4 x + beta5
  kPrinted,
};

LogisticForm ParseLogisticForm(std::string_view name);
std::string_view LogisticFormName(LogisticForm form);

struct RegressionParams {
  std::array<double, 5> beta = {0.0, 0.0, 0.0, 0.0, 0.0};
};

double PredictDmos(const RegressionParams& params, double raw,
                   LogisticForm form = LogisticForm::kStandard);
std::vector<double> PredictDmos(const RegressionParams& params,
                                std::span<const double> raw,
                                LogisticForm form = LogisticForm::kStandard);

struct RegressionOptions {
  LogisticForm form = LogisticForm::kStandard;
  int max_iterations = 10000;
  // A start stops once an accepted step lowers the objective by less than
  // this fraction.
  double relative_tolerance = 1e-10;
};

struct RegressionFit {
  RegressionParams params;
  double rmse = 0.0;
  int starts_converged = 0;
};

// Least-squares fit of the logistic by Levenberg-Marquardt. Starts, all
// deterministic:
//   * beta = (range(dmos), 1/std(raw), mean(raw), 0, mean(dmos));
//   * five perturbations of it drawn from fixed seeds 1..5;
//   * the least-squares line (beta1 = 0), so the fit is never worse than an
//     affine map.
// The start with the smallest residual wins, whether or not it met the
// tolerance.
//
// Throws kDegenerateInput for mismatched lengths, fewer than five points,
// non-finite values or constant raw scores, and kNonConvergence when no
// start finishes within max_iterations.
RegressionFit FitRegression(std::span<const double> raw,
                            std::span<const double> dmos,
                            const RegressionOptions& options = {});

}  // namespace pcdm

#endif  // PCDM_REGRESSION_H_
