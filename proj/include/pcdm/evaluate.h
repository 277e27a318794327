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

#ifndef PCDM_EVALUATE_H_
#define PCDM_EVALUATE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pcdm/dataset.h"
#include "pcdm/image.h"
#include "pcdm/pcdm.h"
#include "pcdm/regression.h"

namespace pcdm {

enum class MetricId { kPcdm, kPsnr, kSsim, kDe2000 };

std::string_view MetricIdName(MetricId id);
// Throws kInvalidArgument for anything but pcdm, psnr, ssim or de2000.
MetricId ParseMetricId(std::string_view name);

// Raw (unregressed) score of one image pair. PCDM reports its pooled score,
// PSNR may be +infinity for identical images.
double ScorePair(const RgbImage& reference, const RgbImage& distorted,
                 MetricId metric, const PcdmConfig& config = {});

struct EvalOptions {
  PcdmConfig pcdm;
  LogisticForm form = LogisticForm::kStandard;
  // Worker threads for per-pair scoring; 0 picks the hardware concurrency.
  int jobs = 0;
};

// Statistics of one report column, computed after the regression.
struct ReportCell {
  std::string label;  // "Jp2k", ..., or "All"
  size_t n = 0;
  double pearson_cc = 0.0;
  double rmse = 0.0;
  double spearman_rho = 0.0;
  RegressionParams params;
};

struct ScatterRow {
  double raw = 0.0;
  double regressed = 0.0;
  double dmos = 0.0;
  std::string distortion;  // class id, or "all" for the overall fit
};

struct MetricReport {
  MetricId metric = MetricId::kPcdm;
  LogisticForm form = LogisticForm::kStandard;
  // One cell per distortion class present (fixed class order), then "All".
  std::vector<ReportCell> cells;
  // Raw score per manifest entry, NaN where the pair was excluded.
  std::vector<double> raw_scores;
  // Pairs dropped because their score was not finite (identical images
  // under PSNR).
  size_t excluded_pairs = 0;
  // Classes with fewer than five usable pairs, which cannot be fitted.
  std::vector<std::string> skipped_classes;
  std::vector<ScatterRow> scatter;

  const ReportCell* Find(std::string_view label) const;
};

// Scores every pair, fits the logistic per distortion class and over all
// pairs, and collects CC / RMSE / Spearman per cell. The first hard error
// (lowest manifest index) is rethrown.
MetricReport Evaluate(const DatasetManifest& manifest, MetricId metric,
                      const EvalOptions& options = {});

// Aligned plain-text table in the layout of the usual IQA comparison table,
// with published MS-SSIM and CW-SSIM rows appended for reference.
std::string FormatReportTable(const MetricReport& report);

// "metric,class,n,pearson_cc,rmse,spearman_rho,beta1,...,beta5".
std::string ReportCsv(const MetricReport& report);

// "raw,regressed,dmos,class". Each pair appears once with its class fit and
// once, labeled "all", with the overall fit.
std::string ScatterCsv(const MetricReport& report);

}  // namespace pcdm

#endif  // PCDM_EVALUATE_H_
