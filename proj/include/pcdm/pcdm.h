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

#ifndef PCDM_PCDM_H_
#define PCDM_PCDM_H_

#include "pcdm/colorspace.h"
#include "pcdm/emd.h"
#include "pcdm/image.h"
#include "pcdm/naming.h"

namespace pcdm {

struct PcdmConfig {
  // Fraction of each image dimension kept by the downsampling step.
  double sampling_rate = 0.05;
  // Weight of the normalized CIEDE2000 term; the EMD term gets 1 - alpha.
  double alpha = 0.5;
  // Steepness of the logistic fusion.
  double z = 10.0;
  // CIEDE2000 values are capped here and divided by it.
  double de_threshold = 7.0;
  De2000Params de_params;
  NamingModel naming = DefaultNamingModel();
  // Worker threads for map evaluation; 0 picks the hardware concurrency.
  int threads = 1;

  // Throws kInvalidArgument when a field is out of range or the naming table
  // and ground distance disagree on the number of terms.
  void Validate() const;
};

// Per-pixel fused differences, each strictly inside (0, 1).
using DistortionMap = RealGrid;

struct PcdmScore {
  double score = 0.0;     // mean of the distortion map; higher is worse
  double residual = 1.0;  // 1 - score
};

// Output size of the downsampling step along one axis:
// max(1, round_half_up(size * rate)).
int DownsampledSize(int size, double rate);

// Bicubic resampling (a = -0.5) to DownsampledSize() in each axis. When
// shrinking, the kernel is stretched by the inverse scale and its weights
// renormalized, which low-pass filters the input. Borders are mirrored.
// rate == 1 returns the input unchanged.
RgbImage Downsample(const RgbImage& image, double rate);

// Logistic fusion of one aligned pixel pair:
//   D = alpha * min(dE00, T) / T + (1 - alpha) * EMD(p1, p2)
//   result = 1 / (1 + exp(-z (D - 1/2)))
// Symmetric in the two pixels.
double PixelDifference(const LabColor& s1, const LabColor& s2,
                       DescriptorView p1, DescriptorView p2,
                       const PcdmConfig& config);
double PixelDifference(const LabColor& s1, const LabColor& s2,
                       DescriptorView p1, DescriptorView p2,
                       const PcdmConfig& config,
                       TransportationSolver& solver);

// The logistic applied to an already fused difference D.
double FuseLogistic(double fused, double z);

// Downsamples both images, converts to Lab, looks up color descriptors and
// applies PixelDifference() to every aligned pixel pair.
// Throws kDimensionMismatch when the inputs differ in size.
DistortionMap PcdmMap(const RgbImage& reference, const RgbImage& distorted,
                      const PcdmConfig& config = {});

// Mean of a distortion map.
PcdmScore PoolMap(const DistortionMap& map);

PcdmScore ComputePcdm(const RgbImage& reference, const RgbImage& distorted,
                      const PcdmConfig& config = {});

}  // namespace pcdm

#endif  // PCDM_PCDM_H_
