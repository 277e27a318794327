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

#ifndef PCDM_DECOMPOSE_H_
#define PCDM_DECOMPOSE_H_

#include "pcdm/image.h"

namespace pcdm {

struct DecomposedDistortion {
  // Distorted luma with the reference chroma.
  RgbImage intensity_only;
  // Reference luma with the distorted chroma.
  RgbImage chroma_only;
};

// Splits a distortion into its luma and chroma parts by swapping 8-bit
// BT.601 YCbCr planes between the two images.
// Throws kDimensionMismatch.
DecomposedDistortion DecomposeDistortion(const RgbImage& reference,
                                         const RgbImage& distorted);

}  // namespace pcdm

#endif  // PCDM_DECOMPOSE_H_
