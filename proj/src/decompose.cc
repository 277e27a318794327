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

#include "pcdm/colorspace.h"

namespace pcdm {

DecomposedDistortion DecomposeDistortion(const RgbImage& reference,
                                         const RgbImage& distorted) {
  CheckSameShape(reference, distorted);
  const YCbCrPlanes ref = RgbToYCbCr(reference);
  const YCbCrPlanes dist = RgbToYCbCr(distorted);
  return {YCbCrToRgb({dist.y, ref.cb, ref.cr}),
          YCbCrToRgb({ref.y, dist.cb, dist.cr})};
}

}  // namespace pcdm
