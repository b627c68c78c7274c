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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace augrl {

enum class DType : std::uint8_t { U8 = 0, F32 = 1 };

/// (batch, channel, height, width), row-major with width fastest.
struct Shape {
  std::uint32_t n = 0;
  std::uint32_t c = 0;
  std::uint32_t h = 0;
  std::uint32_t w = 0;

  std::size_t image_size() const noexcept { return std::size_t{c} * h * w; }
  std::size_t numel() const noexcept { return std::size_t{n} * image_size(); }

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Throws InvalidShape unless n, h, w >= 1 and c is 1 or 3.
void validate_shape(const Shape& shape);

/// u8 -> f32 is v / 255; f32 -> u8 is floor(v * 255 + 0.5) clamped to
/// [0, 255] (round half up), evaluated in double.
inline float u8_to_f32(std::uint8_t v) noexcept { return static_cast<float>(v) / 255.0f; }
inline std::uint8_t f32_to_u8(float v) noexcept {
  // Truncation equals floor once the value is known positive; NaN maps to 0.
  const double scaled = static_cast<double>(v) * 255.0 + 0.5;
  if (!(scaled >= 1.0)) return 0;
  if (scaled >= 255.0) return 255;
  return static_cast<std::uint8_t>(static_cast<int>(scaled));
}

/// Non-owning view of one f32 image (c, h, w).
struct ImageView {
  std::span<const float> data;
  std::uint32_t c = 0;
  std::uint32_t h = 0;
  std::uint32_t w = 0;

  float at(std::uint32_t ch, std::uint32_t y, std::uint32_t x) const noexcept {
    return data[(std::size_t{ch} * h + y) * w + x];
  }
};

/// One owned f32 image; the working type of every transform kernel.
struct Image {
  std::uint32_t c = 0;
  std::uint32_t h = 0;
  std::uint32_t w = 0;
  std::vector<float> data;

  Image() = default;
  Image(std::uint32_t channels, std::uint32_t height, std::uint32_t width, float fill = 0.0f)
      : c(channels), h(height), w(width), data(std::size_t{channels} * height * width, fill) {}
  explicit Image(ImageView v) : c(v.c), h(v.h), w(v.w), data(v.data.begin(), v.data.end()) {}

  ImageView view() const noexcept { return {data, c, h, w}; }
  float& at(std::uint32_t ch, std::uint32_t y, std::uint32_t x) noexcept {
    return data[(std::size_t{ch} * h + y) * w + x];
  }
  float at(std::uint32_t ch, std::uint32_t y, std::uint32_t x) const noexcept {
    return data[(std::size_t{ch} * h + y) * w + x];
  }
};

/// Dense (n, c, h, w) batch of u8 in [0, 255] or f32 in [0, 1].
/// Consumers treat batches as values: operations return new batches.
class ImageBatch {
 public:
  ImageBatch() = default;

  /// All pixels equal `fill`. InvalidShape on a zero dimension, InvalidValue
  /// when `fill` is outside the dtype range.
  static ImageBatch filled(Shape shape, DType dtype, double fill);
  /// Takes ownership; validates shape, length and (for f32) the [0, 1] range.
  static ImageBatch from_u8(Shape shape, std::vector<std::uint8_t> data);
  static ImageBatch from_f32(Shape shape, std::vector<float> data);

  const Shape& shape() const noexcept { return shape_; }
  DType dtype() const noexcept { return dtype_; }

  std::span<const std::uint8_t> u8() const;
  std::span<std::uint8_t> u8();
  std::span<const float> f32() const;
  std::span<float> f32();
  /// Raw payload bytes in native order (little-endian on supported targets).
  std::span<const std::byte> bytes() const;

  /// Image `i` converted to f32 (exact copy for f32 batches).
  Image image(std::uint32_t i) const;
  /// Writes `img` into slot `i`, rounding half up for u8 batches.
  void set_image(std::uint32_t i, const Image& img);

  friend bool operator==(const ImageBatch&, const ImageBatch&) = default;

 private:
  ImageBatch(Shape shape, DType dtype) : shape_(shape), dtype_(dtype) {}

  Shape shape_{};
  DType dtype_ = DType::U8;
  std::vector<std::uint8_t> u8_;
  std::vector<float> f32_;
};

ImageBatch new_batch(std::uint32_t n, std::uint32_t c, std::uint32_t h, std::uint32_t w, DType dtype,
                     double fill);

ImageBatch to_f32(const ImageBatch& batch);
ImageBatch to_u8(const ImageBatch& batch);

/// Splits each image of width k*h into k square h x h tiles, left to right;
/// output batch size is n*k. InvalidShape unless w is a multiple of h.
ImageBatch split_panorama(const ImageBatch& batch);
/// Inverse of split_panorama: concatenates groups of `tiles` images along
/// width. InvalidShape unless n is a multiple of `tiles`.
ImageBatch join_panorama(const ImageBatch& batch, std::uint32_t tiles);

/// Stacks single images (all of one shape) into a batch of `dtype`.
ImageBatch stack(std::span<const Image> images, DType dtype);

}  // namespace augrl
