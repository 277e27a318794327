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

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcdm/pcdm.h"

namespace pcdm {
namespace {

constexpr double kCubicA = -0.5;

double CubicKernel(double x) {
  const double t = std::abs(x);
  const double t2 = t * t;
  const double t3 = t2 * t;
  if (t <= 1.0) return (kCubicA + 2.0) * t3 - (kCubicA + 3.0) * t2 + 1.0;
  if (t < 2.0) {
    return kCubicA * t3 - 5.0 * kCubicA * t2 + 8.0 * kCubicA * t - 4.0 * kCubicA;
  }
  return 0.0;
}

int Mirror(int i, int size) {
  if (size == 1) return 0;
  const int period = 2 * size;
  i %= period;
  if (i < 0) i += period;
  return i < size ? i : period - 1 - i;
}

// Resampling weights for one output sample.
struct Taps {
  std::vector<int> index;
  std::vector<double> weight;
};

std::vector<Taps> AxisTaps(int in_size, int out_size) {
  const double scale = static_cast<double>(out_size) / in_size;
  const double stretch = scale < 1.0 ? scale : 1.0;
  const double support = 2.0 / stretch;
  std::vector<Taps> taps(out_size);
  for (int x = 0; x < out_size; ++x) {
    const double center = (x + 0.5) / scale - 0.5;
    const int first = static_cast<int>(std::floor(center - support));
    const int last = static_cast<int>(std::ceil(center + support));
    double total = 0.0;
    for (int j = first; j <= last; ++j) {
      const double w = stretch * CubicKernel(stretch * (center - j));
      if (w == 0.0) continue;
      taps[x].index.push_back(Mirror(j, in_size));
      taps[x].weight.push_back(w);
      total += w;
    }
    for (double& w : taps[x].weight) w /= total;
  }
  return taps;
}

}  // namespace

int DownsampledSize(int size, double rate) {
  return std::max(1, static_cast<int>(std::floor(size * rate + 0.5)));
}

RgbImage Downsample(const RgbImage& image, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling rate must be in (0, 1]");
  }
  if (rate == 1.0) return image;
  const int in_w = image.width();
  const int in_h = image.height();
  const int out_w = DownsampledSize(in_w, rate);
  const int out_h = DownsampledSize(in_h, rate);
  const std::vector<Taps> x_taps = AxisTaps(in_w, out_w);
  const std::vector<Taps> y_taps = AxisTaps(in_h, out_h);

  // Horizontal pass into an out_w x in_h buffer of interleaved RGB doubles.
  std::vector<double> horizontal(static_cast<size_t>(out_w) * in_h * 3);
  for (int y = 0; y < in_h; ++y) {
    const auto src = image.row(y);
    double* dst = horizontal.data() + static_cast<size_t>(y) * out_w * 3;
    for (int x = 0; x < out_w; ++x) {
      double r = 0.0, g = 0.0, b = 0.0;
      const Taps& t = x_taps[x];
      for (size_t k = 0; k < t.index.size(); ++k) {
        const Rgb& p = src[t.index[k]];
        r += t.weight[k] * p.r;
        g += t.weight[k] * p.g;
        b += t.weight[k] * p.b;
      }
      dst[3 * x] = r;
      dst[3 * x + 1] = g;
      dst[3 * x + 2] = b;
    }
  }

  RgbImage out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const Taps& t = y_taps[y];
    auto dst = out.row(y);
    for (int x = 0; x < out_w; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (size_t k = 0; k < t.index.size(); ++k) {
        const double* src =
            horizontal.data() +
            (static_cast<size_t>(t.index[k]) * out_w + x) * 3;
        acc[0] += t.weight[k] * src[0];
        acc[1] += t.weight[k] * src[1];
        acc[2] += t.weight[k] * src[2];
      }
      dst[x] = {QuantizeToByte(acc[0]), QuantizeToByte(acc[1]),
                QuantizeToByte(acc[2])};
    }
  }
  return out;
}

}  // namespace pcdm
