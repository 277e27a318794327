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

#ifndef PCDM_BASELINES_H_
#define PCDM_BASELINES_H_

#include "pcdm/colorspace.h"
#include "pcdm/image.h"

namespace pcdm {

// PSNR in dB on real-valued BT.601 luma with peak 255. Identical images give
// +infinity.
double Psnr(const RgbImage& reference, const RgbImage& distorted);

struct SsimResult {
  double score = 0.0;
  // Valid-region map, (width - 10) x (height - 10).
  RealGrid map;
};

// Single-scale SSIM on BT.601 luma: 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03, L = 255, no border padding.
// Throws kDimensionMismatch, or kTooSmall when a side is below 11 pixels.
SsimResult Ssim(const RgbImage& reference, const RgbImage& distorted);

// Mean per-pixel CIEDE2000 at full resolution.
double MeanDeltaE2000(const RgbImage& reference, const RgbImage& distorted,
                      const De2000Params& params = {});

}  // namespace pcdm

#endif  // PCDM_BASELINES_H_
