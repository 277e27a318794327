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

#include "pcdm/decompose.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "pcdm/baselines.h"
#include "pcdm/colorspace.h"
#include "pcdm/error.h"
#include "test_util.h"

namespace pcdm {
namespace {

using testing::JpegRoundTrip;
using testing::RandomImage;
using testing::SyntheticScene;

int MaxChannelDifference(const RgbImage& a, const RgbImage& b) {
  int worst = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const Rgb p = a.pixels()[i], q = b.pixels()[i];
    worst = std::max({worst, std::abs(p.r - q.r), std::abs(p.g - q.g),
                      std::abs(p.b - q.b)});
  }
  return worst;
}

TEST(DecomposeTest, IdentityWithinOneCodeValue) {
  const RgbImage ref = RandomImage(64, 64, 1);
  const DecomposedDistortion d = DecomposeDistortion(ref, ref);
  EXPECT_LE(MaxChannelDifference(d.intensity_only, ref), 1);
  EXPECT_LE(MaxChannelDifference(d.chroma_only, ref), 1);
}

TEST(DecomposeTest, UniformLumaShift) {
  // Mid-range colors keep every channel away from clipping after the shift.
  RgbImage ref = SyntheticScene(64, 48, 2, 2);
  for (Rgb& p : ref.pixels()) {
    p = {static_cast<uint8_t>(60 + p.r / 3), static_cast<uint8_t>(60 + p.g / 3),
         static_cast<uint8_t>(60 + p.b / 3)};
  }
  YCbCrPlanes planes = RgbToYCbCr(ref);
  for (uint8_t& y : planes.y.pixels()) y = static_cast<uint8_t>(y + 20);
  const RgbImage dist = YCbCrToRgb(planes);
  const DecomposedDistortion d = DecomposeDistortion(ref, dist);
  EXPECT_LE(MaxChannelDifference(d.chroma_only, ref), 1);
  EXPECT_LE(MaxChannelDifference(d.intensity_only, dist), 1);
}

TEST(DecomposeTest, JpegChromaLossIsMostlyInvisibleToSsim) {
  const RgbImage ref = SyntheticScene(256, 256, 1, 3);
  const RgbImage jpeg = JpegRoundTrip(ref, 10);
  const DecomposedDistortion d = DecomposeDistortion(ref, jpeg);
  const double ssim_intensity = Ssim(ref, d.intensity_only).score;
  const double ssim_chroma = Ssim(ref, d.chroma_only).score;
  EXPECT_GT(MeanDeltaE2000(ref, d.chroma_only), 0.0);
  EXPECT_GT(1.0 - ssim_intensity, 1.0 - ssim_chroma);
}

TEST(DecomposeTest, DimensionMismatch) {
  EXPECT_THROW(DecomposeDistortion(RandomImage(4, 4, 1), RandomImage(4, 5, 1)),
               Error);
}

}  // namespace
}  // namespace pcdm
