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

#include "pcdm/baselines.h"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace pcdm {
namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> GaussianTaps() {
  std::array<double, kWindow> taps;
  double total = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    taps[i] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

// Separable valid-region Gaussian filter over a width x height plane.
std::vector<double> FilterValid(const std::vector<double>& plane, int width,
                                int height) {
  static const std::array<double, kWindow> taps = GaussianTaps();
  const int out_w = width - kWindow + 1;
  const int out_h = height - kWindow + 1;
  std::vector<double> horizontal(static_cast<size_t>(out_w) * height);
  for (int y = 0; y < height; ++y) {
    const double* src = plane.data() + static_cast<size_t>(y) * width;
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += taps[k] * src[x + k];
      horizontal[static_cast<size_t>(y) * out_w + x] = acc;
    }
  }
  std::vector<double> out(static_cast<size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * horizontal[static_cast<size_t>(y + k) * out_w + x];
      }
      out[static_cast<size_t>(y) * out_w + x] = acc;
    }
  }
  return out;
}

bool LabLess(const LabColor& x, const LabColor& y) {
  if (x.l != y.l) return x.l < y.l;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

}  // namespace

double Psnr(const RgbImage& reference, const RgbImage& distorted) {
  CheckSameShape(reference, distorted);
  double sum = 0.0;
  auto a = reference.pixels();
  auto b = distorted.pixels();
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = Luma(a[i]) - Luma(b[i]);
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

SsimResult Ssim(const RgbImage& reference, const RgbImage& distorted) {
  CheckSameShape(reference, distorted);
  const int w = reference.width();
  const int h = reference.height();
  if (w < kWindow || h < kWindow) {
    throw Error(ErrorCode::kTooSmall, "SSIM needs at least 11x11 pixels");
  }
  const size_t n = reference.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (size_t i = 0; i < n; ++i) {
    x[i] = Luma(reference.pixels()[i]);
    y[i] = Luma(distorted.pixels()[i]);
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mu_x = FilterValid(x, w, h);
  const auto mu_y = FilterValid(y, w, h);
  const auto e_xx = FilterValid(xx, w, h);
  const auto e_yy = FilterValid(yy, w, h);
  const auto e_xy = FilterValid(xy, w, h);

  SsimResult result;
  result.map = RealGrid(w - kWindow + 1, h - kWindow + 1);
  auto out = result.map.pixels();
  double sum = 0.0;
  for (size_t i = 0; i < out.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double var_x = e_xx[i] - mx * mx;
    const double var_y = e_yy[i] - my * my;
    const double cov = e_xy[i] - mx * my;
    const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
    const double den = (mx * mx + my * my + kC1) * (var_x + var_y + kC2);
    out[i] = num / den;
    sum += out[i];
  }
  result.score = sum / static_cast<double>(out.size());
  return result;
}

double MeanDeltaE2000(const RgbImage& reference, const RgbImage& distorted,
                      const De2000Params& params) {
  CheckSameShape(reference, distorted);
  double sum = 0.0;
  auto a = reference.pixels();
  auto b = distorted.pixels();
  for (size_t i = 0; i < a.size(); ++i) {
    LabColor la = RgbToLab(a[i]);
    LabColor lb = RgbToLab(b[i]);
    if (LabLess(lb, la)) std::swap(la, lb);
    sum += DeltaE2000(la, lb, params);
  }
  return sum / static_cast<double>(a.size());
}

}  // namespace pcdm
