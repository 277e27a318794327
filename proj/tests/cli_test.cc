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

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "pcdm/imageio.h"
#include "test_util.h"

namespace pcdm::cli {
namespace {

using pcdm::testing::AddGaussianNoise;
using pcdm::testing::ConstantImage;
using pcdm::testing::GaussianBlur;
using pcdm::testing::SyntheticScene;
using pcdm::testing::TempDir;
using pcdm::testing::WriteText;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "pcdm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    scene_ = SyntheticScene(120, 80, 0, 1);
    SaveImage(scene_, dir_ / "ref.png");
    SaveImage(GaussianBlur(scene_, 2.0), dir_ / "blur.png");
    SaveImage(ConstantImage(32, 32, {100, 100, 100}), dir_ / "g100.png");
    SaveImage(ConstantImage(32, 32, {101, 101, 101}), dir_ / "g101.png");
    SaveImage(ConstantImage(33, 32, {101, 101, 101}), dir_ / "wide.png");
  }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  TempDir dir_;
  RgbImage scene_;
};

TEST_F(CliTest, ScoreIdentity) {
  const RunResult r = RunCli({"score", "--ref", P("ref.png"), "--dist",
                              P("ref.png"), "--metric", "pcdm"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "metric=pcdm score=0.006693 residual=0.993307\n");
}

TEST_F(CliTest, ScorePsnrUnitDifference) {
  const RunResult r = RunCli({"score", "--ref", P("g100.png"), "--dist",
                              P("g101.png"), "--metric", "psnr"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "metric=psnr score=48.130804\n");
  const RunResult same = RunCli({"score", "--ref", P("g100.png"), "--dist",
                                 P("g100.png"), "--metric", "psnr"});
  EXPECT_EQ(same.out, "metric=psnr score=inf\n");
}

TEST_F(CliTest, ScoreDimensionMismatch) {
  const RunResult r =
      RunCli({"score", "--ref", P("g100.png"), "--dist", P("wide.png")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("dimension mismatch"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, ScoreIsByteStable) {
  const std::vector<std::string> args = {"score", "--ref", P("ref.png"),
                                         "--dist", P("blur.png"), "--rate",
                                         "0.2"};
  EXPECT_EQ(RunCli(args).out, RunCli(args).out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({}).code, 2);
  EXPECT_EQ(RunCli({"score", "--ref", P("ref.png")}).code, 2);
  EXPECT_EQ(RunCli({"score", "--ref", P("ref.png"), "--dist", P("ref.png"),
                    "--bogus", "1"})
                .code,
            2);
  EXPECT_EQ(RunCli({"score", "--ref", P("ref.png"), "--dist", P("ref.png"),
                    "--metric", "vif"})
                .code,
            2);
  EXPECT_EQ(RunCli({"score", "--ref", P("ref.png"), "--dist", P("ref.png"),
                    "--rate", "0"})
                .code,
            2);
}

TEST_F(CliTest, HelpForEverySubcommand) {
  for (const char* sub : {"score", "map", "eval", "decompose"}) {
    const RunResult r = RunCli({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("Options:"), std::string::npos) << r.out;
  }
  EXPECT_EQ(RunCli({"--help"}).code, 0);
}

TEST_F(CliTest, ResidualMapOfIdenticalInputsIsNearWhite) {
  const RunResult r = RunCli({"map", "--ref", P("ref.png"), "--dist",
                              P("ref.png"), "--metric", "pcdm", "--residual",
                              "--out", P("res.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  const RgbImage map = LoadImage(P("res.png"));
  EXPECT_EQ(map.width(), 6);
  EXPECT_EQ(map.height(), 4);
  for (const Rgb& p : map.pixels()) EXPECT_EQ(p, (Rgb{253, 253, 253}));
}

TEST_F(CliTest, SsimMapOfIdenticalInputsIsWhite) {
  const RunResult r = RunCli({"map", "--ref", P("ref.png"), "--dist",
                              P("ref.png"), "--metric", "ssim", "--out",
                              P("ssim.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  const RgbImage map = LoadImage(P("ssim.png"));
  EXPECT_EQ(map.width(), 110);
  EXPECT_EQ(map.height(), 70);
  for (const Rgb& p : map.pixels()) EXPECT_EQ(p, (Rgb{255, 255, 255}));
}

TEST_F(CliTest, MapDimensionsScaleWithRate) {
  const std::pair<const char*, std::pair<int, int>> cases[] = {
      {"0.05", {6, 4}}, {"0.5", {60, 40}}, {"1.0", {120, 80}}};
  for (const auto& [rate, dims] : cases) {
    const RunResult r = RunCli({"map", "--ref", P("ref.png"), "--dist",
                                P("blur.png"), "--rate", rate, "--out",
                                P("m.png")});
    ASSERT_EQ(r.code, 0) << r.err;
    const RgbImage map = LoadImage(P("m.png"));
    EXPECT_EQ(map.width(), dims.first) << rate;
    EXPECT_EQ(map.height(), dims.second) << rate;
  }
  EXPECT_EQ(RunCli({"map", "--ref", P("ref.png"), "--dist", P("ref.png"),
                    "--metric", "ssim", "--residual", "--out", P("x.png")})
                .code,
            2);
}

TEST_F(CliTest, EvalSyntheticManifest) {
  std::ostringstream csv;
  csv << "ref,dist,dmos,class\n";
  for (int k = 0; k < 10; ++k) {
    const std::string wn = "wn" + std::to_string(k) + ".png";
    SaveImage(AddGaussianNoise(scene_, 3.0 + 4.0 * k, k), dir_ / wn);
    csv << "ref.png," << wn << ',' << 5.0 + 6.0 * k << ",wn\n";
    const std::string gb = "gb" + std::to_string(k) + ".png";
    SaveImage(GaussianBlur(scene_, 0.5 + 0.4 * k), dir_ / gb);
    csv << "ref.png," << gb << ',' << 4.0 + 5.0 * k << ",gblur\n";
  }
  WriteText(dir_ / "m.csv", csv.str());
  const RunResult r = RunCli({"eval", "--manifest", P("m.csv"), "--metric",
                              "psnr", "--out-dir", P("out"), "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("metric=psnr cc=", 0), 0u) << r.out;
  EXPECT_NE(r.out.find(" n=20"), std::string::npos) << r.out;
  for (const char* f : {"report_psnr.txt", "report_psnr.csv",
                        "scatter_psnr.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / f)) << f;
  }
  std::ifstream table(dir_ / "out" / "report_psnr.txt");
  const std::string text{std::istreambuf_iterator<char>(table), {}};
  EXPECT_NE(text.find("Wn"), std::string::npos);
  EXPECT_NE(text.find("Gblur"), std::string::npos);
  EXPECT_NE(text.find("All"), std::string::npos);
}

TEST_F(CliTest, EvalMissingFileNamesRow) {
  WriteText(dir_ / "m.csv", "ref,dist,dmos,class\nref.png,nope.png,1,wn\n");
  const RunResult r = RunCli({"eval", "--manifest", P("m.csv"), "--metric",
                              "psnr", "--out-dir", P("out")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("m.csv:2"), std::string::npos) << r.err;
}

TEST_F(CliTest, Decompose) {
  const RunResult r = RunCli({"decompose", "--ref", P("ref.png"), "--dist",
                              P("ref.png"), "--out-intensity", P("i.png"),
                              "--out-chroma", P("c.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  const RgbImage intensity = LoadImage(P("i.png"));
  for (size_t i = 0; i < intensity.size(); ++i) {
    const Rgb a = intensity.pixels()[i], b = scene_.pixels()[i];
    EXPECT_LE(std::abs(a.r - b.r), 1);
    EXPECT_LE(std::abs(a.g - b.g), 1);
    EXPECT_LE(std::abs(a.b - b.b), 1);
  }
  const RunResult missing = RunCli({"decompose", "--ref", P("ref.png"),
                                    "--dist", P("ref.png"), "--out-intensity",
                                    P("i.png")});
  EXPECT_EQ(missing.code, 2);
}

TEST_F(CliTest, ConfigPrecedence) {
  WriteText(dir_ / "cfg.toml", "# pipeline\nsampling_rate = 0.5\nz = 4\n");
  const std::vector<std::string> base = {"score", "--ref", P("ref.png"),
                                         "--dist", P("blur.png")};
  auto run = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return RunCli(args);
  };
  const std::string from_config = run({"--config", P("cfg.toml")}).out;
  EXPECT_EQ(from_config, run({"--rate", "0.5", "--z", "4"}).out);
  EXPECT_NE(from_config, run({}).out);
  EXPECT_EQ(run({"--config", P("cfg.toml"), "--rate", "0.05"}).out,
            run({"--z", "4"}).out);
  WriteText(dir_ / "bad.toml", "colour = 3\n");
  EXPECT_EQ(run({"--config", P("bad.toml")}).code, 2);
}

}  // namespace
}  // namespace pcdm::cli
