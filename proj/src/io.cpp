// Copyright 2026 The augrl Authors
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

#include "augrl/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "augrl/error.hpp"

static_assert(std::endian::native == std::endian::little, "ARLT I/O assumes a little-endian host");

namespace augrl {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) | (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// libpng is C: errors unwind through its own setjmp/longjmp, never through a
// C++ throw. The message is parked in the error pointer and rethrown by the
// caller once control is back in C++ frames.
struct PngErrorSink {
  char message[256] = {};
};

void png_error_longjmp(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<PngErrorSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof(sink->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

}  // namespace

std::vector<std::uint8_t> encode_raw(const ImageBatch& batch) {
  const Shape& s = batch.shape();
  std::vector<std::uint8_t> out;
  const auto payload = batch.bytes();
  out.reserve(kArltHeaderSize + payload.size());
  out.insert(out.end(), {'A', 'R', 'L', 'T'});
  put_u32(out, kArltVersion);
  put_u32(out, s.n);
  put_u32(out, s.c);
  put_u32(out, s.h);
  put_u32(out, s.w);
  out.push_back(static_cast<std::uint8_t>(batch.dtype()));
  out.resize(kArltHeaderSize, 0);
  const auto* p = reinterpret_cast<const std::uint8_t*>(payload.data());
  out.insert(out.end(), p, p + payload.size());
  return out;
}

ImageBatch decode_raw(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kArltHeaderSize) throw Error(ErrorCode::FormatError, "truncated ARLT header");
  if (std::memcmp(bytes.data(), "ARLT", 4) != 0) throw Error(ErrorCode::FormatError, "bad ARLT magic");
  if (get_u32(bytes, 4) != kArltVersion) throw Error(ErrorCode::FormatError, "unsupported ARLT version");
  const Shape s{get_u32(bytes, 8), get_u32(bytes, 12), get_u32(bytes, 16), get_u32(bytes, 20)};
  const std::uint8_t code = bytes[24];
  if (code > 1) throw Error(ErrorCode::FormatError, "unknown ARLT dtype code " + std::to_string(code));
  if (std::any_of(bytes.begin() + 25, bytes.begin() + kArltHeaderSize, [](std::uint8_t b) { return b != 0; })) {
    throw Error(ErrorCode::FormatError, "nonzero ARLT reserved bytes");
  }
  try {
    validate_shape(s);
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
  const std::size_t elem = code == 0 ? 1 : 4;
  const std::size_t payload = s.numel() * elem;
  if (bytes.size() != kArltHeaderSize + payload) {
    throw Error(ErrorCode::FormatError, "ARLT length " + std::to_string(bytes.size()) + " != expected " +
                                            std::to_string(kArltHeaderSize + payload));
  }
  const auto body = bytes.subspan(kArltHeaderSize);
  if (code == 0) return ImageBatch::from_u8(s, std::vector<std::uint8_t>(body.begin(), body.end()));
  std::vector<float> data(s.numel());
  std::memcpy(data.data(), body.data(), payload);
  try {
    return ImageBatch::from_f32(s, std::move(data));
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
}

ImageBatch load_raw(const std::filesystem::path& path) { return decode_raw(read_file(path)); }

void save_raw(const ImageBatch& batch, const std::filesystem::path& path) { write_file(path, encode_raw(batch)); }

ImageBatch load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw Error(ErrorCode::FormatError, path.string() + " is not a PNG");
  }
  PngErrorSink sink;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, png_error_longjmp,
                                           png_warning_ignore);
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_read_struct(p, i, nullptr); }
  } guard{&png, &info};

  // Everything with a destructor is declared before setjmp so a longjmp back
  // here never skips one.
  std::vector<png_byte> pixels;
  std::vector<png_bytep> rows;
  std::vector<std::uint8_t> data;
  png_uint_32 width = 0, height = 0;
  std::uint32_t channels = 0;
  if (setjmp(png_jmpbuf(png))) throw Error(ErrorCode::FormatError, std::string("png: ") + sink.message);

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (depth != 8) throw Error(ErrorCode::FormatError, "unsupported PNG bit depth " + std::to_string(depth));
  if (color == PNG_COLOR_TYPE_GRAY) channels = 1;
  else if (color == PNG_COLOR_TYPE_RGB) channels = 3;
  else throw Error(ErrorCode::FormatError, "unsupported PNG color type " + std::to_string(color));
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const std::size_t stride = std::size_t{width} * channels;
  pixels.resize(stride * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * stride;
  png_read_image(png, rows.data());
  data.resize(std::size_t{channels} * height * width);
  for (png_uint_32 y = 0; y < height; ++y) {
    for (png_uint_32 x = 0; x < width; ++x) {
      for (std::uint32_t ch = 0; ch < channels; ++ch) {
        data[(std::size_t{ch} * height + y) * width + x] = rows[y][std::size_t{x} * channels + ch];
      }
    }
  }
  png_read_end(png, nullptr);
  return ImageBatch::from_u8(Shape{1, channels, height, width}, std::move(data));
}

void save_png(const ImageBatch& batch, const std::filesystem::path& path) {
  const Shape& s = batch.shape();
  if (s.n != 1) throw Error(ErrorCode::InvalidShape, "PNG output needs a single-image batch");
  const ImageBatch u8 = to_u8(batch);
  const auto px = u8.u8();

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  PngErrorSink sink;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, png_error_longjmp,
                                            png_warning_ignore);
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_write_struct(p, i); }
  } guard{&png, &info};

  std::vector<png_byte> row(std::size_t{s.w} * s.c);
  if (setjmp(png_jmpbuf(png))) throw Error(ErrorCode::FormatError, std::string("png: ") + sink.message);

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, s.w, s.h, 8, s.c == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::uint32_t y = 0; y < s.h; ++y) {
    for (std::uint32_t x = 0; x < s.w; ++x) {
      for (std::uint32_t ch = 0; ch < s.c; ++ch) {
        row[std::size_t{x} * s.c + ch] = px[(std::size_t{ch} * s.h + y) * s.w + x];
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
}

namespace {
bool is_png(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext == ".png";
}
}  // namespace

ImageBatch load_image_file(const std::filesystem::path& path) {
  return is_png(path) ? load_png(path) : load_raw(path);
}

void save_image_file(const ImageBatch& batch, const std::filesystem::path& path) {
  if (is_png(path)) save_png(batch, path);
  else save_raw(batch, path);
}

}  // namespace augrl
