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

#include "pcdm/evaluate.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "pcdm/baselines.h"
#include "pcdm/imageio.h"
#include "pcdm/stats.h"

namespace pcdm {
namespace {

constexpr size_t kMinPairsPerCell = 5;

// Published values for metrics this library does not implement, in the
// column order Jp2k, Jpeg, Wn, Gblur, FF, All.
struct LiteratureRow {
  const char* name;
  double cc[6];
  double rmse[6];
};
constexpr LiteratureRow kLiteratureRows[] = {
    {"MS-SSIM", {0.962, 0.961, 0.977, 0.943, 0.948, 0.946},
     {7.12, 7.30, 8.38, 7.38, 7.04, 7.43}},
    {"CW-SSIM", {0.926, 0.927, 0.949, 0.768, 0.835, 0.872},
     {9.75, 9.30, 9.24, 14.45, 13.62, 10.87}},
};

ReportCell FitCell(std::string label, const std::vector<double>& raw,
                   const std::vector<double>& dmos, LogisticForm form) {
  RegressionOptions options;
  options.form = form;
  const RegressionFit fit = FitRegression(raw, dmos, options);
  const std::vector<double> predicted = PredictDmos(fit.params, raw, form);
  ReportCell cell;
  cell.label = std::move(label);
  cell.n = raw.size();
  cell.params = fit.params;
  cell.rmse = Rmse(predicted, dmos);
  cell.pearson_cc = PearsonCc(predicted, dmos);
  cell.spearman_rho = SpearmanRho(raw, dmos);
  return cell;
}

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string_view MetricIdName(MetricId id) {
  switch (id) {
    case MetricId::kPcdm: return "pcdm";
    case MetricId::kPsnr: return "psnr";
    case MetricId::kSsim: return "ssim";
    case MetricId::kDe2000: return "de2000";
  }
  return "pcdm";
}

MetricId ParseMetricId(std::string_view name) {
  for (MetricId id : {MetricId::kPcdm, MetricId::kPsnr, MetricId::kSsim,
                      MetricId::kDe2000}) {
    if (MetricIdName(id) == name) return id;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric '" + std::string(name) + "'");
}

double ScorePair(const RgbImage& reference, const RgbImage& distorted,
                 MetricId metric, const PcdmConfig& config) {
  switch (metric) {
    case MetricId::kPcdm: return ComputePcdm(reference, distorted, config).score;
    case MetricId::kPsnr: return Psnr(reference, distorted);
    case MetricId::kSsim: return Ssim(reference, distorted).score;
    case MetricId::kDe2000: return MeanDeltaE2000(reference, distorted,
                                                  config.de_params);
  }
  return 0.0;
}

const ReportCell* MetricReport::Find(std::string_view label) const {
  for (const ReportCell& cell : cells) {
    if (cell.label == label) return &cell;
  }
  return nullptr;
}

MetricReport Evaluate(const DatasetManifest& manifest, MetricId metric,
                      const EvalOptions& options) {
  const auto& entries = manifest.entries;
  if (entries.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "empty manifest");
  }
  options.pcdm.Validate();
  PcdmConfig pair_config = options.pcdm;
  pair_config.threads = 1;

  MetricReport report;
  report.metric = metric;
  report.form = options.form;
  report.raw_scores.assign(entries.size(),
                           std::numeric_limits<double>::quiet_NaN());
  std::vector<std::exception_ptr> errors(entries.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < entries.size(); i = next++) {
      try {
        const RgbImage ref = LoadImage(entries[i].ref_path);
        const RgbImage dist = LoadImage(entries[i].dist_path);
        report.raw_scores[i] = ScorePair(ref, dist, metric, pair_config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int jobs = options.jobs > 0
                 ? options.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, static_cast<int>(entries.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "manifest line " + std::to_string(entries[i].line) +
                                ": " + e.what());
    }
  }

  std::map<DistortionClass, std::pair<std::vector<double>, std::vector<double>>>
      by_class;
  std::vector<double> all_raw, all_dmos;
  std::vector<size_t> used;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(report.raw_scores[i])) {
      report.raw_scores[i] = std::numeric_limits<double>::quiet_NaN();
      ++report.excluded_pairs;
      continue;
    }
    auto& [raw, dmos] = by_class[entries[i].distortion];
    raw.push_back(report.raw_scores[i]);
    dmos.push_back(entries[i].dmos);
    used.push_back(i);
  }

  std::map<DistortionClass, RegressionParams> class_params;
  for (DistortionClass c : kAllDistortionClasses) {
    const auto it = by_class.find(c);
    if (it == by_class.end()) continue;
    const auto& [raw, dmos] = it->second;
    if (raw.size() < kMinPairsPerCell) {
      report.skipped_classes.emplace_back(DistortionClassLabel(c));
      continue;
    }
    report.cells.push_back(
        FitCell(std::string(DistortionClassLabel(c)), raw, dmos, options.form));
    class_params[c] = report.cells.back().params;
    all_raw.insert(all_raw.end(), raw.begin(), raw.end());
    all_dmos.insert(all_dmos.end(), dmos.begin(), dmos.end());
  }
  if (all_raw.size() < kMinPairsPerCell) {
    throw Error(ErrorCode::kDegenerateInput,
                "fewer than five scored pairs in fittable classes");
  }
  // Overall fit in manifest order.
  all_raw.clear();
  all_dmos.clear();
  for (size_t i : used) {
    if (!class_params.contains(entries[i].distortion)) continue;
    all_raw.push_back(report.raw_scores[i]);
    all_dmos.push_back(entries[i].dmos);
  }
  report.cells.push_back(FitCell("All", all_raw, all_dmos, options.form));
  const RegressionParams& overall = report.cells.back().params;

  for (size_t i : used) {
    const auto it = class_params.find(entries[i].distortion);
    if (it == class_params.end()) continue;
    const double raw = report.raw_scores[i];
    report.scatter.push_back(
        {raw, PredictDmos(it->second, raw, options.form), entries[i].dmos,
         std::string(DistortionClassId(entries[i].distortion))});
  }
  for (size_t i : used) {
    if (!class_params.contains(entries[i].distortion)) continue;
    const double raw = report.raw_scores[i];
    report.scatter.push_back({raw, PredictDmos(overall, raw, options.form),
                              entries[i].dmos, "all"});
  }
  return report;
}

std::string FormatReportTable(const MetricReport& report) {
  std::vector<std::string> columns;
  for (DistortionClass c : kAllDistortionClasses) {
    if (c == DistortionClass::kOther && !report.Find("Other")) continue;
    columns.emplace_back(DistortionClassLabel(c));
  }
  columns.emplace_back("All");

  constexpr int kNameWidth = 18;
  constexpr int kColWidth = 8;
  std::ostringstream out;
  auto pad_left = [](const std::string& s, int width) {
    return s.size() >= static_cast<size_t>(width)
               ? s
               : std::string(width - s.size(), ' ') + s;
  };
  auto pad_right = [](const std::string& s, int width) {
    return s.size() >= static_cast<size_t>(width)
               ? s
               : s + std::string(width - s.size(), ' ');
  };
  const std::string rule(kNameWidth + columns.size() * (kColWidth + 3), '-');

  out << pad_right("Metrics", kNameWidth);
  for (const auto& c : columns) out << " | " << pad_left(c, kColWidth);
  out << '\n' << rule << '\n';

  std::string metric_name(MetricIdName(report.metric));
  for (char& ch : metric_name) ch = static_cast<char>(std::toupper(ch));
  if (report.metric == MetricId::kDe2000) metric_name = "CIEDE2000";

  auto section = [&](const char* title, auto value_of, int decimals,
                     bool literature) {
    out << title << '\n';
    out << pad_right(metric_name, kNameWidth);
    for (const auto& c : columns) {
      const ReportCell* cell = report.Find(c);
      out << " | "
          << pad_left(cell ? Fixed(value_of(*cell), decimals) : "-", kColWidth);
    }
    out << '\n';
    if (literature) {
      for (const LiteratureRow& row : kLiteratureRows) {
        const bool cc = std::string(title).starts_with("Pearson");
        out << pad_right(std::string(row.name) + " (lit.)", kNameWidth);
        for (const auto& c : columns) {
          static const char* kLiveColumns[] = {"Jp2k", "Jpeg", "Wn",
                                               "Gblur", "FF", "All"};
          std::string text = "-";
          for (int k = 0; k < 6; ++k) {
            if (c == kLiveColumns[k]) {
              text = Fixed(cc ? row.cc[k] : row.rmse[k], decimals);
            }
          }
          out << " | " << pad_left(text, kColWidth);
        }
        out << '\n';
      }
    }
    out << rule << '\n';
  };
  section("Pearson CC (Linear)",
          [](const ReportCell& c) { return c.pearson_cc; }, 3, true);
  section("RMSE", [](const ReportCell& c) { return c.rmse; }, 2, true);
  section("Spearman rank correlation",
          [](const ReportCell& c) { return c.spearman_rho; }, 3, false);

  out << "n:";
  for (const ReportCell& c : report.cells) out << ' ' << c.label << '=' << c.n;
  out << '\n';
  out << "regression: " << LogisticFormName(report.form) << " logistic\n";
  out << "(lit.) rows are published reference values, not computed here\n";
  if (report.excluded_pairs > 0) {
    out << "excluded pairs with non-finite score: " << report.excluded_pairs
        << '\n';
  }
  for (const auto& s : report.skipped_classes) {
    out << "skipped class with fewer than 5 pairs: " << s << '\n';
  }
  return out.str();
}

std::string ReportCsv(const MetricReport& report) {
  std::ostringstream out;
  out << "metric,class,n,pearson_cc,rmse,spearman_rho,beta1,beta2,beta3,beta4,"
         "beta5\n";
  out.precision(10);
  for (const ReportCell& c : report.cells) {
    out << MetricIdName(report.metric) << ',' << c.label << ',' << c.n << ','
        << c.pearson_cc << ',' << c.rmse << ',' << c.spearman_rho;
    for (double b : c.params.beta) out << ',' << b;
    out << '\n';
  }
  return out.str();
}

std::string ScatterCsv(const MetricReport& report) {
  std::ostringstream out;
  out << "raw,regressed,dmos,class\n";
  out.precision(10);
  for (const ScatterRow& r : report.scatter) {
    out << r.raw << ',' << r.regressed << ',' << r.dmos << ',' << r.distortion
        << '\n';
  }
  return out.str();
}

}  // namespace pcdm
