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

#include "pcdm/imageio.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace pcdm {
namespace {

namespace fs = std::filesystem;

std::vector<uint8_t> ReadFileBytes(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

uint8_t Rescale16(uint32_t v) {
  return static_cast<uint8_t>((v * 255u + 32767u) / 65535u);
}

std::string LowerExtension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// ---------------------------------------------------------------------------
// PPM (P6)

class PpmReader {
 public:
  explicit PpmReader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  RgbImage Decode() {
    pos_ = 2;  // past "P6"
    const long width = ReadHeaderInt();
    const long height = ReadHeaderInt();
    const long maxval = ReadHeaderInt();
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kCorruptData, "malformed PPM header");
    }
    ++pos_;  // exactly one whitespace byte before the raster
    if (width < 1 || height < 1 || width > (1 << 20) || height > (1 << 20)) {
      throw Error(ErrorCode::kCorruptData, "bad PPM dimensions");
    }
    if (maxval < 1 || maxval > 65535) {
      throw Error(ErrorCode::kCorruptData, "bad PPM maxval");
    }
    const size_t sample_bytes = maxval > 255 ? 2 : 1;
    const size_t count = static_cast<size_t>(width) * height * 3;
    if (bytes_.size() - pos_ < count * sample_bytes) {
      throw Error(ErrorCode::kCorruptData, "truncated PPM raster");
    }
    std::vector<Rgb> pixels(static_cast<size_t>(width) * height);
    auto sample = [&](size_t k) -> uint8_t {
      uint32_t v;
      if (sample_bytes == 1) {
        v = bytes_[pos_ + k];
      } else {
        v = (uint32_t{bytes_[pos_ + 2 * k]} << 8) | bytes_[pos_ + 2 * k + 1];
      }
      if (v > static_cast<uint32_t>(maxval)) {
        throw Error(ErrorCode::kCorruptData, "PPM sample exceeds maxval");
      }
      if (maxval == 255) return static_cast<uint8_t>(v);
      // Rescale to 16 bits, then to 8.
      const uint32_t v16 =
          (v * 65535u + static_cast<uint32_t>(maxval) / 2) / maxval;
      return Rescale16(v16);
    };
    for (size_t i = 0; i < pixels.size(); ++i) {
      pixels[i] = {sample(3 * i), sample(3 * i + 1), sample(3 * i + 2)};
    }
    return RgbImage(static_cast<int>(width), static_cast<int>(height),
                    std::move(pixels));
  }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long ReadHeaderInt() {
    SkipSpaceAndComments();
    long value = 0;
    size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 30)) {
        throw Error(ErrorCode::kCorruptData, "PPM header value too large");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::kCorruptData, "malformed PPM header");
    return value;
  }

  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
};

void WritePpm(const RgbImage& image, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  out << "P6\n" << image.width() << " " << image.height() << "\n255\n";
  for (const Rgb& p : image.pixels()) {
    const char px[3] = {static_cast<char>(p.r), static_cast<char>(p.g),
                        static_cast<char>(p.b)};
    out.write(px, 3);
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// BMP (24-bit BI_RGB)

uint32_t ReadLe32(const std::vector<uint8_t>& b, size_t at) {
  return uint32_t{b[at]} | (uint32_t{b[at + 1]} << 8) |
         (uint32_t{b[at + 2]} << 16) | (uint32_t{b[at + 3]} << 24);
}

uint16_t ReadLe16(const std::vector<uint8_t>& b, size_t at) {
  return static_cast<uint16_t>(b[at] | (b[at + 1] << 8));
}

RgbImage DecodeBmp(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 54) throw Error(ErrorCode::kCorruptData, "truncated BMP");
  const uint32_t data_offset = ReadLe32(bytes, 10);
  const uint32_t header_size = ReadLe32(bytes, 14);
  if (header_size < 40) {
    throw Error(ErrorCode::kUnsupportedFormat, "BMP core headers");
  }
  const int32_t width = static_cast<int32_t>(ReadLe32(bytes, 18));
  const int32_t raw_height = static_cast<int32_t>(ReadLe32(bytes, 22));
  const uint16_t bpp = ReadLe16(bytes, 28);
  const uint32_t compression = ReadLe32(bytes, 30);
  if (bpp == 32) {
    throw Error(ErrorCode::kUnsupportedFormat, "BMP with alpha channel");
  }
  if (bpp != 24 || compression != 0) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "only 24-bit uncompressed BMP is supported");
  }
  const bool top_down = raw_height < 0;
  const int64_t height = top_down ? -int64_t{raw_height} : raw_height;
  if (width < 1 || height < 1 || width > (1 << 20) || height > (1 << 20)) {
    throw Error(ErrorCode::kCorruptData, "bad BMP dimensions");
  }
  const size_t stride = (static_cast<size_t>(width) * 3 + 3) & ~size_t{3};
  if (data_offset > bytes.size() ||
      bytes.size() - data_offset < stride * static_cast<size_t>(height)) {
    throw Error(ErrorCode::kCorruptData, "truncated BMP raster");
  }
  RgbImage image(width, static_cast<int>(height));
  for (int y = 0; y < image.height(); ++y) {
    const int src_row = top_down ? y : image.height() - 1 - y;
    const uint8_t* src = bytes.data() + data_offset + stride * src_row;
    auto dst = image.row(y);
    for (int x = 0; x < width; ++x) {
      dst[x] = {src[3 * x + 2], src[3 * x + 1], src[3 * x]};  // stored BGR
    }
  }
  return image;
}

// ---------------------------------------------------------------------------
// PNG via libpng. The decode/encode state lives in caller-owned structs so
// that no automatic C++ objects are skipped by libpng's longjmp.

struct PngMemoryReader {
  const std::vector<uint8_t>* bytes = nullptr;
  size_t pos = 0;
};

void PngReadCallback(png_structp png, png_bytep out, png_size_t length) {
  auto* reader = static_cast<PngMemoryReader*>(png_get_io_ptr(png));
  if (reader->bytes->size() - reader->pos < length) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, reader->bytes->data() + reader->pos, length);
  reader->pos += length;
}

struct PngDecodeState {
  PngMemoryReader reader;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  bool has_trns = false;
  std::vector<uint8_t> raster;
  std::vector<png_bytep> rows;
  char error[256] = {0};
};

void PngErrorCallback(png_structp png, png_const_charp message) {
  auto* state = static_cast<PngDecodeState*>(png_get_error_ptr(png));
  if (state != nullptr) {
    std::snprintf(state->error, sizeof(state->error), "%s", message);
  }
  png_longjmp(png, 1);
}

void PngWarningCallback(png_structp, png_const_charp) {}

// Returns 0 on success, 1 on libpng error, 2 on alpha channel.
int DecodePngInto(PngDecodeState* state) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state,
                                           PngErrorCallback, PngWarningCallback);
  if (png == nullptr) return 1;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return 1;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return 1;
  }
  png_set_read_fn(png, &state->reader, PngReadCallback);
  png_read_info(png, info);
  state->width = png_get_image_width(png, info);
  state->height = png_get_image_height(png, info);
  state->bit_depth = png_get_bit_depth(png, info);
  state->color_type = png_get_color_type(png, info);
  state->has_trns = png_get_valid(png, info, PNG_INFO_tRNS) != 0;
  if ((state->color_type & PNG_COLOR_MASK_ALPHA) != 0 || state->has_trns) {
    png_destroy_read_struct(&png, &info, nullptr);
    return 2;
  }
  if (state->color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (state->color_type == PNG_COLOR_TYPE_GRAY) {
    if (state->bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_set_gray_to_rgb(png);
  }
  png_read_update_info(png, info);
  const int depth = png_get_bit_depth(png, info);
  const size_t row_bytes = png_get_rowbytes(png, info);
  if (png_get_channels(png, info) != 3 || (depth != 8 && depth != 16)) {
    png_destroy_read_struct(&png, &info, nullptr);
    return 1;
  }
  state->bit_depth = depth;
  state->raster.resize(row_bytes * state->height);
  state->rows.resize(state->height);
  for (png_uint_32 y = 0; y < state->height; ++y) {
    state->rows[y] = state->raster.data() + row_bytes * y;
  }
  png_read_image(png, state->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return 0;
}

RgbImage DecodePng(const std::vector<uint8_t>& bytes) {
  PngDecodeState state;
  state.reader.bytes = &bytes;
  const int rc = DecodePngInto(&state);
  if (rc == 2) {
    throw Error(ErrorCode::kUnsupportedFormat, "PNG with alpha channel");
  }
  if (rc != 0) {
    throw Error(ErrorCode::kCorruptData,
                state.error[0] != '\0' ? state.error : "invalid PNG stream");
  }
  if (state.width < 1 || state.height < 1 || state.width > (1u << 20) ||
      state.height > (1u << 20)) {
    throw Error(ErrorCode::kCorruptData, "bad PNG dimensions");
  }
  RgbImage image(static_cast<int>(state.width), static_cast<int>(state.height));
  for (int y = 0; y < image.height(); ++y) {
    const uint8_t* src = state.rows[y];
    auto dst = image.row(y);
    for (int x = 0; x < image.width(); ++x) {
      if (state.bit_depth == 8) {
        dst[x] = {src[3 * x], src[3 * x + 1], src[3 * x + 2]};
      } else {
        auto s = [&](int c) {
          const size_t k = 6 * static_cast<size_t>(x) + 2 * c;
          return Rescale16((uint32_t{src[k]} << 8) | src[k + 1]);
        };
        dst[x] = {s(0), s(1), s(2)};
      }
    }
  }
  return image;
}

struct PngEncodeState {
  FILE* file = nullptr;
  int width = 0;
  int height = 0;
  int color_type = 0;
  const uint8_t* raster = nullptr;  // tightly packed rows
  size_t row_bytes = 0;
  char error[256] = {0};
};

void PngWriteErrorCallback(png_structp png, png_const_charp message) {
  auto* state = static_cast<PngEncodeState*>(png_get_error_ptr(png));
  if (state != nullptr) {
    std::snprintf(state->error, sizeof(state->error), "%s", message);
  }
  png_longjmp(png, 1);
}

bool EncodePng(PngEncodeState* state) {
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, state, PngWriteErrorCallback, PngWarningCallback);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, state->file);
  png_set_IHDR(png, info, state->width, state->height, 8, state->color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < state->height; ++y) {
    png_write_row(png, state->raster + state->row_bytes * y);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void WritePng(const fs::path& path, int width, int height, int color_type,
              const std::vector<uint8_t>& raster) {
  PngEncodeState state;
  state.file = std::fopen(path.string().c_str(), "wb");
  if (state.file == nullptr) {
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  }
  state.width = width;
  state.height = height;
  state.color_type = color_type;
  state.raster = raster.data();
  state.row_bytes = raster.size() / height;
  const bool ok = EncodePng(&state);
  const bool closed = std::fclose(state.file) == 0;
  if (!ok || !closed) {
    throw Error(ErrorCode::kIoError, "PNG write failed for " + path.string() +
                                         (state.error[0] ? ": " : "") +
                                         state.error);
  }
}

}  // namespace

RgbImage LoadImage(const fs::path& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  static constexpr uint8_t kPngSignature[8] = {0x89, 'P',  'N',  'G',
                                               0x0D, 0x0A, 0x1A, 0x0A};
  if (bytes.size() >= 8 && std::equal(kPngSignature, kPngSignature + 8,
                                      bytes.begin())) {
    return DecodePng(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    return DecodeBmp(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return PpmReader(bytes).Decode();
  }
  throw Error(ErrorCode::kUnsupportedFormat, path.string());
}

void SaveImage(const RgbImage& image, const fs::path& path) {
  const std::string ext = LowerExtension(path);
  if (ext == ".ppm") {
    WritePpm(image, path);
    return;
  }
  if (ext != ".png") {
    throw Error(ErrorCode::kUnsupportedFormat,
                "cannot write '" + ext + "' files");
  }
  std::vector<uint8_t> raster;
  raster.reserve(image.size() * 3);
  for (const Rgb& p : image.pixels()) {
    raster.insert(raster.end(), {p.r, p.g, p.b});
  }
  WritePng(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, raster);
}

void SaveGrayscaleMap(const RealGrid& values, const fs::path& path) {
  std::vector<uint8_t> raster;
  raster.reserve(values.size());
  for (double v : values.pixels()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kValueOutOfRange,
                  "map value " + std::to_string(v) + " outside [0, 1]");
    }
    raster.push_back(QuantizeToByte(v * 255.0));
  }
  WritePng(path, values.width(), values.height(), PNG_COLOR_TYPE_GRAY, raster);
}

}  // namespace pcdm
