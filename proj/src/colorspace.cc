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

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pcdm {
namespace {

// Linear sRGB -> XYZ (D65). Row sums reproduce the reference white below.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

// CIE constants: epsilon = (6/29)^3, kappa = (29/3)^3.
constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double LabF(double t) {
  return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double HueDegrees(double b, double a_prime) {
  if (a_prime == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, a_prime) * kRadToDeg;
  if (h < 0.0) h += 360.0;
  return h;
}

double Pow7(double x) {
  const double x2 = x * x;
  return x2 * x2 * x2 * x;
}

constexpr double kPow25To7 = 6103515625.0;

}  // namespace

double SrgbToLinear(double v) {
  const double c = v / 255.0;
  return c > 0.04045 ? std::pow((c + 0.055) / 1.055, 2.4) : c / 12.92;
}

LabColor RgbToLab(double r, double g, double b) {
  const double lin[3] = {SrgbToLinear(r), SrgbToLinear(g), SrgbToLinear(b)};
  double xyz[3];
  for (int i = 0; i < 3; ++i) {
    xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] +
             kRgbToXyz[i][2] * lin[2];
  }
  const double fx = LabF(xyz[0] / kWhiteX);
  const double fy = LabF(xyz[1] / kWhiteY);
  const double fz = LabF(xyz[2] / kWhiteZ);
  // The matrix rounding puts white a few 1e-6 above L = 100.
  return {std::clamp(116.0 * fy - 16.0, 0.0, 100.0), 500.0 * (fx - fy),
          200.0 * (fy - fz)};
}

LabImage SrgbToLab(const RgbImage& image) {
  LabImage out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (size_t i = 0; i < src.size(); ++i) dst[i] = RgbToLab(src[i]);
  return out;
}

double DeltaE2000(const LabColor& c1, const LabColor& c2,
                  const De2000Params& params) {
  const double chroma1 = std::hypot(c1.a, c1.b);
  const double chroma2 = std::hypot(c2.a, c2.b);
  const double mean_chroma7 = Pow7(0.5 * (chroma1 + chroma2));
  const double g =
      0.5 * (1.0 - std::sqrt(mean_chroma7 / (mean_chroma7 + kPow25To7)));

  const double a1p = (1.0 + g) * c1.a;
  const double a2p = (1.0 + g) * c2.a;
  const double c1p = std::hypot(a1p, c1.b);
  const double c2p = std::hypot(a2p, c2.b);
  const double h1p = HueDegrees(c1.b, a1p);
  const double h2p = HueDegrees(c2.b, a2p);

  const double delta_l = c2.l - c1.l;
  const double delta_c = c2p - c1p;
  const double chroma_product = c1p * c2p;

  double delta_h = 0.0;
  if (chroma_product != 0.0) {
    delta_h = h2p - h1p;
    if (delta_h > 180.0) {
      delta_h -= 360.0;
    } else if (delta_h < -180.0) {
      delta_h += 360.0;
    }
  }
  const double delta_big_h =
      2.0 * std::sqrt(chroma_product) * std::sin(0.5 * delta_h * kDegToRad);

  const double mean_l = 0.5 * (c1.l + c2.l);
  const double mean_cp = 0.5 * (c1p + c2p);
  double mean_hp = h1p + h2p;
  if (chroma_product != 0.0) {
    if (std::abs(h1p - h2p) <= 180.0) {
      mean_hp *= 0.5;
    } else if (mean_hp < 360.0) {
      mean_hp = 0.5 * (mean_hp + 360.0);
    } else {
      mean_hp = 0.5 * (mean_hp - 360.0);
    }
  }

  const double t = 1.0 - 0.17 * std::cos((mean_hp - 30.0) * kDegToRad) +
                   0.24 * std::cos(2.0 * mean_hp * kDegToRad) +
                   0.32 * std::cos((3.0 * mean_hp + 6.0) * kDegToRad) -
                   0.20 * std::cos((4.0 * mean_hp - 63.0) * kDegToRad);
  const double hue_offset = (mean_hp - 275.0) / 25.0;
  const double delta_theta = 30.0 * std::exp(-hue_offset * hue_offset);
  const double mean_cp7 = Pow7(mean_cp);
  const double rc = 2.0 * std::sqrt(mean_cp7 / (mean_cp7 + kPow25To7));
  const double l50 = (mean_l - 50.0) * (mean_l - 50.0);
  const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  const double sc = 1.0 + 0.045 * mean_cp;
  const double sh = 1.0 + 0.015 * mean_cp * t;
  const double rt = -std::sin(2.0 * delta_theta * kDegToRad) * rc;

  const double tl = delta_l / (params.kl * sl);
  const double tc = delta_c / (params.kc * sc);
  const double th = delta_big_h / (params.kh * sh);
  const double sum = tl * tl + tc * tc + th * th + rt * tc * th;
  return std::sqrt(std::max(sum, 0.0));
}

YCbCrPlanes RgbToYCbCr(const RgbImage& image) {
  YCbCrPlanes planes{Grid<uint8_t>(image.width(), image.height()),
                     Grid<uint8_t>(image.width(), image.height()),
                     Grid<uint8_t>(image.width(), image.height())};
  auto src = image.pixels();
  for (size_t i = 0; i < src.size(); ++i) {
    const double r = src[i].r;
    const double g = src[i].g;
    const double b = src[i].b;
    planes.y.pixels()[i] = QuantizeToByte(0.299 * r + 0.587 * g + 0.114 * b);
    planes.cb.pixels()[i] =
        QuantizeToByte(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
    planes.cr.pixels()[i] =
        QuantizeToByte(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
  }
  return planes;
}

RgbImage YCbCrToRgb(const YCbCrPlanes& planes) {
  CheckSameShape(planes.y, planes.cb);
  CheckSameShape(planes.y, planes.cr);
  RgbImage out(planes.y.width(), planes.y.height());
  auto dst = out.pixels();
  for (size_t i = 0; i < dst.size(); ++i) {
    const double y = planes.y.pixels()[i];
    const double cb = planes.cb.pixels()[i] - 128.0;
    const double cr = planes.cr.pixels()[i] - 128.0;
    dst[i] = {QuantizeToByte(y + 1.402 * cr),
              QuantizeToByte(y - 0.344136 * cb - 0.714136 * cr),
              QuantizeToByte(y + 1.772 * cb)};
  }
  return out;
}

RealGrid LumaPlane(const RgbImage& image) {
  RealGrid out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (size_t i = 0; i < src.size(); ++i) dst[i] = Luma(src[i]);
  return out;
}

}  // namespace pcdm
