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

#ifndef PCDM_IMAGE_H_
#define PCDM_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcdm/error.h"

namespace pcdm {

// A dense row-major 2-D grid of values. Width and height are at least 1.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
    data_.assign(static_cast<size_t>(width) * height, fill);
  }
  Grid(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1 ||
        data_.size() != static_cast<size_t>(width) * height) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid data does not match dimensions " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
  const T& at(int x, int y) const {
    return data_[static_cast<size_t>(y) * width_ + x];
  }

  std::span<T> row(int y) {
    return {data_.data() + static_cast<size_t>(y) * width_,
            static_cast<size_t>(width_)};
  }
  std::span<const T> row(int y) const {
    return {data_.data() + static_cast<size_t>(y) * width_,
            static_cast<size_t>(width_)};
  }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  bool SameShape(const auto& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// 8-bit-per-channel sRGB raster.
using RgbImage = Grid<Rgb>;

// Grid of reals, used for luma planes, SSIM maps and distortion maps.
using RealGrid = Grid<double>;

// Throws kDimensionMismatch when the two grids differ in shape.
template <typename A, typename B>
void CheckSameShape(const Grid<A>& a, const Grid<B>& b) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                    " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

// Round-half-up quantization of a real to [0, 255].
inline uint8_t QuantizeToByte(double v) {
  const double r = v + 0.5;
  if (!(r > 0.0)) return 0;
  if (r >= 255.0) return 255;
  return static_cast<uint8_t>(r);
}

}  // namespace pcdm

#endif  // PCDM_IMAGE_H_
