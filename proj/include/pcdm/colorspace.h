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

#ifndef PCDM_COLORSPACE_H_
#define PCDM_COLORSPACE_H_

#include <array>

#include "pcdm/image.h"

namespace pcdm {

// CIELAB coordinates relative to the D65 white (0.95047, 1.0, 1.08883).
struct LabColor {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const LabColor&, const LabColor&) = default;
};

using LabImage = Grid<LabColor>;

// Parametric weighting factors of CIEDE2000. All must be strictly positive.
struct De2000Params {
  double kl = 1.0;
  double kc = 1.0;
  double kh = 1.0;
};

// IEC 61966-2-1 transfer function; `v` is an 8-bit code value (may be
// fractional), the result is linear light in [0, 1].
double SrgbToLinear(double v);

// sRGB code values in [0, 255] to Lab. Fractional inputs are accepted, which
// lets callers convert quantization bin centers.
LabColor RgbToLab(double r, double g, double b);
inline LabColor RgbToLab(const Rgb& p) { return RgbToLab(p.r, p.g, p.b); }

LabImage SrgbToLab(const RgbImage& image);

// CIEDE2000 color difference. Symmetric in its two color arguments.
double DeltaE2000(const LabColor& c1, const LabColor& c2,
                  const De2000Params& params = {});

// Full-range ITU-R BT.601 YCbCr with chroma offset 128, each plane quantized
// to 8 bits with round-half-up.
struct YCbCrPlanes {
  Grid<uint8_t> y;
  Grid<uint8_t> cb;
  Grid<uint8_t> cr;
};

YCbCrPlanes RgbToYCbCr(const RgbImage& image);
RgbImage YCbCrToRgb(const YCbCrPlanes& planes);

// Real-valued BT.601 luma, Y = 0.299 R + 0.587 G + 0.114 B.
inline double Luma(const Rgb& p) {
  return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
}
RealGrid LumaPlane(const RgbImage& image);

}  // namespace pcdm

#endif  // PCDM_COLORSPACE_H_
