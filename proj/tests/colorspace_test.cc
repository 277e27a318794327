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

#include "pcdm/colorspace.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace pcdm {
namespace {

struct ConformancePair {
  LabColor c1, c2;
  double expected;
};

// The published CIEDE2000 test pairs, cross-checked against an independent
// implementation before being frozen into tests/data.
std::vector<ConformancePair> LoadConformancePairs() {
  std::ifstream in(std::string(PCDM_TEST_DATA_DIR) + "/ciede2000_pairs.txt");
  std::vector<ConformancePair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    ConformancePair p;
    fields >> p.c1.l >> p.c1.a >> p.c1.b >> p.c2.l >> p.c2.a >> p.c2.b >>
        p.expected;
    pairs.push_back(p);
  }
  return pairs;
}

TEST(DeltaE2000Test, ConformancePairs) {
  const auto pairs = LoadConformancePairs();
  ASSERT_EQ(pairs.size(), 34u);
  for (size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_NEAR(DeltaE2000(pairs[i].c1, pairs[i].c2), pairs[i].expected, 1e-4)
        << "pair " << i + 1;
  }
}

TEST(DeltaE2000Test, FirstPublishedPair) {
  EXPECT_NEAR(DeltaE2000({50, 2.6772, -79.7751}, {50, 0, -82.7485}), 2.0425,
              1e-4);
}

TEST(DeltaE2000Test, IdentitySymmetryNonnegativity) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> l(0, 100), ab(-128, 127);
  for (int i = 0; i < 2000; ++i) {
    const LabColor c1{l(rng), ab(rng), ab(rng)};
    LabColor c2{l(rng), ab(rng), ab(rng)};
    if (i % 4 == 0) c2 = {c1.l, 0.0, 0.0};  // achromatic edge case
    EXPECT_EQ(DeltaE2000(c1, c1), 0.0);
    EXPECT_EQ(DeltaE2000(c1, c2), DeltaE2000(c2, c1));
    EXPECT_GE(DeltaE2000(c1, c2), 0.0);
  }
}

TEST(DeltaE2000Test, ParametricFactorsScaleTerms) {
  // A pure lightness difference scales inversely with kL.
  const LabColor a{40, 0, 0}, b{45, 0, 0};
  EXPECT_NEAR(DeltaE2000(a, b, {2.0, 1.0, 1.0}), 0.5 * DeltaE2000(a, b),
              1e-12);
}

TEST(SrgbToLabTest, WhiteAndBlack) {
  const LabColor white = RgbToLab(Rgb{255, 255, 255});
  EXPECT_NEAR(white.l, 100.0, 1e-6);
  EXPECT_LT(std::abs(white.a), 0.01);
  EXPECT_LT(std::abs(white.b), 0.01);
  const LabColor black = RgbToLab(Rgb{0, 0, 0});
  EXPECT_EQ(black.l, 0.0);
  EXPECT_EQ(black.a, 0.0);
  EXPECT_EQ(black.b, 0.0);
}

TEST(SrgbToLabTest, PrimariesMatchIndependentConversion) {
  // Frozen from a separately written numpy conversion with the same
  // IEC 61966-2-1 transfer curve, sRGB/D65 matrix and white point.
  struct Case {
    Rgb rgb;
    LabColor lab;
  };
  const Case cases[] = {
      {{255, 0, 0}, {53.240794, 80.092460, 67.203197}},
      {{0, 255, 0}, {87.734722, -86.182716, 83.179321}},
      {{0, 0, 255}, {32.297011, 79.187520, -107.860162}},
      {{128, 128, 128}, {53.585016, 0.0, 0.0}},
  };
  for (const Case& c : cases) {
    const LabColor lab = RgbToLab(c.rgb);
    EXPECT_NEAR(lab.l, c.lab.l, 1e-3);
    EXPECT_NEAR(lab.a, c.lab.a, 1e-3);
    EXPECT_NEAR(lab.b, c.lab.b, 1e-3);
  }
}

TEST(SrgbToLabTest, GrayLightnessIsStrictlyMonotone) {
  double previous = -1.0;
  for (int v = 0; v < 256; ++v) {
    const double l = RgbToLab(Rgb{static_cast<uint8_t>(v),
                                  static_cast<uint8_t>(v),
                                  static_cast<uint8_t>(v)}).l;
    EXPECT_GT(l, previous) << v;
    EXPECT_LE(l, 100.0);
    previous = l;
  }
}

TEST(SrgbToLabTest, ImageConversionMatchesPerPixel) {
  RgbImage img(2, 1);
  img.at(0, 0) = {10, 200, 30};
  img.at(1, 0) = {250, 250, 0};
  const LabImage lab = SrgbToLab(img);
  ASSERT_TRUE(lab.SameShape(img));
  EXPECT_EQ(lab.at(0, 0), RgbToLab(img.at(0, 0)));
  EXPECT_EQ(lab.at(1, 0), RgbToLab(img.at(1, 0)));
}

TEST(YCbCrTest, NeutralColors) {
  RgbImage img(2, 1);
  img.at(0, 0) = {128, 128, 128};
  img.at(1, 0) = {0, 0, 0};
  const YCbCrPlanes p = RgbToYCbCr(img);
  EXPECT_EQ(p.y.at(0, 0), 128);
  EXPECT_EQ(p.cb.at(0, 0), 128);
  EXPECT_EQ(p.cr.at(0, 0), 128);
  EXPECT_EQ(p.y.at(1, 0), 0);
  EXPECT_EQ(p.cb.at(1, 0), 128);
  EXPECT_EQ(p.cr.at(1, 0), 128);
}

TEST(YCbCrTest, RoundTripWithinOneCodeValue) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> byte(0, 255);
  RgbImage img(1000, 100);
  for (Rgb& p : img.pixels()) {
    p = {static_cast<uint8_t>(byte(rng)), static_cast<uint8_t>(byte(rng)),
         static_cast<uint8_t>(byte(rng))};
  }
  const RgbImage back = YCbCrToRgb(RgbToYCbCr(img));
  int worst = 0;
  for (size_t i = 0; i < img.size(); ++i) {
    const Rgb a = img.pixels()[i];
    const Rgb b = back.pixels()[i];
    worst = std::max({worst, std::abs(a.r - b.r), std::abs(a.g - b.g),
                      std::abs(a.b - b.b)});
  }
  EXPECT_LE(worst, 1);
}

}  // namespace
}  // namespace pcdm
