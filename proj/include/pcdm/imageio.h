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

#ifndef PCDM_IMAGEIO_H_
#define PCDM_IMAGEIO_H_

#include <filesystem>

#include "pcdm/image.h"

namespace pcdm {

// Decodes PNG (8/16-bit gray, RGB or palette, no alpha), BMP (24-bit
// uncompressed) or binary PPM (P6). The format is detected from the file
// signature, not the extension. 16-bit samples are rescaled to 8 bits by
// round(v * 255 / 65535).
//
// Throws kFileNotFound, kUnsupportedFormat (including images with an alpha
// channel) or kCorruptData.
RgbImage LoadImage(const std::filesystem::path& path);

// Writes PNG (".png") or PPM (".ppm"); the extension is case-insensitive.
// Throws kUnsupportedFormat for any other extension and kIoError when the
// file cannot be written.
void SaveImage(const RgbImage& image, const std::filesystem::path& path);

// Writes an 8-bit grayscale PNG where each pixel is round(v * 255). Every
// value must lie in [0, 1], otherwise kValueOutOfRange is thrown.
void SaveGrayscaleMap(const RealGrid& values,
                      const std::filesystem::path& path);

}  // namespace pcdm

#endif  // PCDM_IMAGEIO_H_
