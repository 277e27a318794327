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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "pcdm/error.h"
#include "pcdm/imageio.h"
#include "test_util.h"

namespace pcdm {
namespace {

using testing::AddGaussianNoise;
using testing::GaussianBlur;
using testing::SyntheticScene;
using testing::TempDir;
using testing::WriteText;

// Writes three scenes with noise and blur at four strengths each. DMOS grows
// linearly with strength.
std::filesystem::path WriteSyntheticDataset(const TempDir& dir,
                                            bool blur = true,
                                            bool identical_row = false) {
  std::ostringstream csv;
  csv << "ref,dist,dmos,class\n";
  for (int s = 0; s < 3; ++s) {
    const RgbImage ref = SyntheticScene(96, 64, s, 50 + s);
    const std::string ref_name = "ref" + std::to_string(s) + ".png";
    SaveImage(ref, dir / ref_name);
    for (int k = 1; k <= 4; ++k) {
      const std::string wn = "wn" + std::to_string(s) + std::to_string(k) + ".png";
      SaveImage(AddGaussianNoise(ref, 8.0 * k, 10 * s + k), dir / wn);
      csv << ref_name << ',' << wn << ',' << 10.0 * k + s << ",wn\n";
      if (blur) {
        const std::string gb =
            "gb" + std::to_string(s) + std::to_string(k) + ".png";
        SaveImage(GaussianBlur(ref, 0.8 * k), dir / gb);
        csv << ref_name << ',' << gb << ',' << 12.0 * k + s << ",gblur\n";
      }
    }
    if (identical_row) csv << ref_name << ',' << ref_name << ",0,wn\n";
  }
  WriteText(dir / "manifest.csv", csv.str());
  return dir / "manifest.csv";
}

EvalOptions FastOptions() {
  EvalOptions options;
  options.pcdm.sampling_rate = 0.25;
  options.jobs = 2;
  return options;
}

TEST(EvaluateTest, NoiseDatasetCorrelates) {
  TempDir dir;
  const DatasetManifest m = LoadManifest(WriteSyntheticDataset(dir));
  const MetricReport report = Evaluate(m, MetricId::kPcdm, FastOptions());
  ASSERT_EQ(report.cells.size(), 3u);
  EXPECT_EQ(report.cells[0].label, "Wn");
  EXPECT_EQ(report.cells[1].label, "Gblur");
  EXPECT_EQ(report.cells[2].label, "All");
  EXPECT_GT(report.Find("Wn")->pearson_cc, 0.9);
  EXPECT_EQ(report.Find("Wn")->n + report.Find("Gblur")->n,
            report.Find("All")->n);
  EXPECT_EQ(report.Find("All")->n, 24u);
  EXPECT_EQ(report.Find("Jpeg"), nullptr);
  EXPECT_EQ(report.scatter.size(), 48u);
  EXPECT_EQ(report.raw_scores.size(), 24u);
}

TEST(EvaluateTest, SingleClassMatchesAll) {
  TempDir dir;
  const DatasetManifest m = LoadManifest(WriteSyntheticDataset(dir, false));
  const MetricReport report = Evaluate(m, MetricId::kPsnr, FastOptions());
  ASSERT_EQ(report.cells.size(), 2u);
  const ReportCell& wn = report.cells[0];
  const ReportCell& all = report.cells[1];
  EXPECT_EQ(wn.n, all.n);
  EXPECT_EQ(wn.pearson_cc, all.pearson_cc);
  EXPECT_EQ(wn.rmse, all.rmse);
  EXPECT_EQ(wn.spearman_rho, all.spearman_rho);
}

TEST(EvaluateTest, InfinitePsnrPairsExcluded) {
  TempDir dir;
  const DatasetManifest m =
      LoadManifest(WriteSyntheticDataset(dir, false, true));
  const MetricReport report = Evaluate(m, MetricId::kPsnr, FastOptions());
  EXPECT_EQ(report.excluded_pairs, 3u);
  EXPECT_EQ(report.Find("All")->n, 12u);
  EXPECT_TRUE(std::isnan(report.raw_scores[4]));
}

TEST(EvaluateTest, SmallClassSkipped) {
  TempDir dir;
  WriteSyntheticDataset(dir, false);
  std::string csv;
  {
    std::ifstream in(dir / "manifest.csv");
    csv.assign(std::istreambuf_iterator<char>(in), {});
  }
  csv += "ref0.png,wn01.png,5,jpeg\n";
  WriteText(dir / "manifest.csv", csv);
  const MetricReport report =
      Evaluate(LoadManifest(dir / "manifest.csv"), MetricId::kDe2000,
               FastOptions());
  EXPECT_EQ(report.skipped_classes, std::vector<std::string>{"Jpeg"});
  EXPECT_EQ(report.Find("All")->n, 12u);
}

TEST(EvaluateTest, JobCountDoesNotChangeScores) {
  TempDir dir;
  const DatasetManifest m = LoadManifest(WriteSyntheticDataset(dir, false));
  EvalOptions one = FastOptions();
  one.jobs = 1;
  EvalOptions many = FastOptions();
  many.jobs = 4;
  EXPECT_EQ(Evaluate(m, MetricId::kSsim, one).raw_scores,
            Evaluate(m, MetricId::kSsim, many).raw_scores);
}

TEST(EvaluateTest, OutputsHaveExpectedShape) {
  TempDir dir;
  const DatasetManifest m = LoadManifest(WriteSyntheticDataset(dir));
  const MetricReport report = Evaluate(m, MetricId::kSsim, FastOptions());
  const std::string table = FormatReportTable(report);
  EXPECT_NE(table.find("Pearson CC (Linear)"), std::string::npos);
  EXPECT_NE(table.find("RMSE"), std::string::npos);
  EXPECT_NE(table.find("Spearman rank correlation"), std::string::npos);
  EXPECT_NE(table.find("MS-SSIM (lit.)"), std::string::npos);
  EXPECT_NE(table.find("CW-SSIM (lit.)"), std::string::npos);
  const std::string csv = ReportCsv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "metric,class,n,pearson_cc,rmse,spearman_rho,beta1,beta2,beta3,"
            "beta4,beta5");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const std::string scatter = ScatterCsv(report);
  EXPECT_EQ(scatter.substr(0, scatter.find('\n')), "raw,regressed,dmos,class");
  EXPECT_EQ(std::count(scatter.begin(), scatter.end(), '\n'), 49);
}

TEST(EvaluateTest, MetricNames) {
  EXPECT_EQ(ParseMetricId("de2000"), MetricId::kDe2000);
  EXPECT_EQ(MetricIdName(MetricId::kSsim), "ssim");
  EXPECT_THROW(ParseMetricId("vif"), Error);
}

TEST(EvaluateTest, UnreadableImageNamesLine) {
  TempDir dir;
  WriteSyntheticDataset(dir, false);
  WriteText(dir / "wn02.png", "not an image");
  try {
    Evaluate(LoadManifest(dir / "manifest.csv"), MetricId::kPsnr,
             FastOptions());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFormat);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace pcdm
