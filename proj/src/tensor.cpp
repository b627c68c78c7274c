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

#include "augrl/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "augrl/error.hpp"

namespace augrl {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::InvalidStrength: return "InvalidStrength";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::DiversityTooLarge: return "DiversityTooLarge";
    case ErrorCode::NotPresampled: return "NotPresampled";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::CounterOverflow: return "CounterOverflow";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::DivergedAtStep: return "DivergedAtStep";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

namespace {

std::string describe(const Shape& s) {
  return "(" + std::to_string(s.n) + "," + std::to_string(s.c) + "," + std::to_string(s.h) + "," +
         std::to_string(s.w) + ")";
}

void require_dtype(DType have, DType want) {
  if (have != want) {
    throw Error(ErrorCode::InvalidValue,
                want == DType::U8 ? "batch is not u8" : "batch is not f32");
  }
}

}  // namespace

void validate_shape(const Shape& s) {
  if (s.n == 0 || s.h == 0 || s.w == 0 || (s.c != 1 && s.c != 3)) {
    throw Error(ErrorCode::InvalidShape, "shape " + describe(s) + " needs n,h,w >= 1 and c in {1,3}");
  }
}

ImageBatch ImageBatch::filled(Shape shape, DType dtype, double fill) {
  validate_shape(shape);
  ImageBatch b(shape, dtype);
  if (dtype == DType::U8) {
    if (!(fill >= 0.0 && fill <= 255.0) || fill != std::floor(fill)) {
      throw Error(ErrorCode::InvalidValue, "u8 fill must be an integer in [0,255]");
    }
    b.u8_.assign(shape.numel(), static_cast<std::uint8_t>(fill));
  } else {
    if (!(fill >= 0.0 && fill <= 1.0)) throw Error(ErrorCode::InvalidValue, "f32 fill must be in [0,1]");
    b.f32_.assign(shape.numel(), static_cast<float>(fill));
  }
  return b;
}

ImageBatch ImageBatch::from_u8(Shape shape, std::vector<std::uint8_t> data) {
  validate_shape(shape);
  if (data.size() != shape.numel()) {
    throw Error(ErrorCode::InvalidShape, "payload length " + std::to_string(data.size()) +
                                             " does not match " + describe(shape));
  }
  ImageBatch b(shape, DType::U8);
  b.u8_ = std::move(data);
  return b;
}

ImageBatch ImageBatch::from_f32(Shape shape, std::vector<float> data) {
  validate_shape(shape);
  if (data.size() != shape.numel()) {
    throw Error(ErrorCode::InvalidShape, "payload length " + std::to_string(data.size()) +
                                             " does not match " + describe(shape));
  }
  for (float v : data) {
    if (!(v >= 0.0f && v <= 1.0f)) throw Error(ErrorCode::InvalidValue, "f32 pixel outside [0,1]");
  }
  ImageBatch b(shape, DType::F32);
  b.f32_ = std::move(data);
  return b;
}

std::span<const std::uint8_t> ImageBatch::u8() const {
  require_dtype(dtype_, DType::U8);
  return u8_;
}
std::span<std::uint8_t> ImageBatch::u8() {
  require_dtype(dtype_, DType::U8);
  return u8_;
}
std::span<const float> ImageBatch::f32() const {
  require_dtype(dtype_, DType::F32);
  return f32_;
}
std::span<float> ImageBatch::f32() {
  require_dtype(dtype_, DType::F32);
  return f32_;
}

std::span<const std::byte> ImageBatch::bytes() const {
  if (dtype_ == DType::U8) return std::as_bytes(std::span<const std::uint8_t>(u8_));
  return std::as_bytes(std::span<const float>(f32_));
}

Image ImageBatch::image(std::uint32_t i) const {
  Image img(shape_.c, shape_.h, shape_.w);
  const std::size_t sz = shape_.image_size();
  const std::size_t off = std::size_t{i} * sz;
  if (dtype_ == DType::F32) {
    std::copy_n(f32_.begin() + static_cast<std::ptrdiff_t>(off), sz, img.data.begin());
  } else {
    static const auto table = [] {
      std::array<float, 256> t{};
      for (int v = 0; v < 256; ++v) t[static_cast<std::size_t>(v)] = u8_to_f32(static_cast<std::uint8_t>(v));
      return t;
    }();
    for (std::size_t k = 0; k < sz; ++k) img.data[k] = table[u8_[off + k]];
  }
  return img;
}

void ImageBatch::set_image(std::uint32_t i, const Image& img) {
  const std::size_t sz = shape_.image_size();
  const std::size_t off = std::size_t{i} * sz;
  if (dtype_ == DType::F32) {
    std::copy(img.data.begin(), img.data.end(), f32_.begin() + static_cast<std::ptrdiff_t>(off));
  } else {
    // f32_to_u8 written branch-free so the loop vectorizes.
    const float* src = img.data.data();
    std::uint8_t* dst = u8_.data() + off;
    for (std::size_t k = 0; k < sz; ++k) {
      const double v = std::clamp(static_cast<double>(src[k]) * 255.0 + 0.5, 0.0, 255.0);
      dst[k] = static_cast<std::uint8_t>(static_cast<int>(v));
    }
  }
}

ImageBatch new_batch(std::uint32_t n, std::uint32_t c, std::uint32_t h, std::uint32_t w, DType dtype,
                     double fill) {
  return ImageBatch::filled(Shape{n, c, h, w}, dtype, fill);
}

ImageBatch to_f32(const ImageBatch& batch) {
  if (batch.dtype() == DType::F32) return batch;
  const auto src = batch.u8();
  std::vector<float> out(src.size());
  std::transform(src.begin(), src.end(), out.begin(), u8_to_f32);
  return ImageBatch::from_f32(batch.shape(), std::move(out));
}

ImageBatch to_u8(const ImageBatch& batch) {
  if (batch.dtype() == DType::U8) return batch;
  const auto src = batch.f32();
  std::vector<std::uint8_t> out(src.size());
  std::transform(src.begin(), src.end(), out.begin(), f32_to_u8);
  return ImageBatch::from_u8(batch.shape(), std::move(out));
}

namespace {

template <typename T>
std::vector<T> split_payload(std::span<const T> src, const Shape& s, std::uint32_t k) {
  std::vector<T> out(src.size());
  std::size_t o = 0;
  for (std::uint32_t i = 0; i < s.n; ++i) {
    for (std::uint32_t t = 0; t < k; ++t) {
      for (std::uint32_t ch = 0; ch < s.c; ++ch) {
        for (std::uint32_t y = 0; y < s.h; ++y) {
          const std::size_t row = ((std::size_t{i} * s.c + ch) * s.h + y) * s.w + std::size_t{t} * s.h;
          for (std::uint32_t x = 0; x < s.h; ++x) out[o++] = src[row + x];
        }
      }
    }
  }
  return out;
}

template <typename T>
std::vector<T> join_payload(std::span<const T> src, const Shape& s, std::uint32_t k) {
  // s is the tile shape; output width is k * s.w.
  std::vector<T> out(src.size());
  const std::uint32_t ow = s.w * k;
  for (std::uint32_t j = 0; j < s.n; ++j) {
    const std::uint32_t i = j / k, t = j % k;
    for (std::uint32_t ch = 0; ch < s.c; ++ch) {
      for (std::uint32_t y = 0; y < s.h; ++y) {
        const std::size_t in_row = ((std::size_t{j} * s.c + ch) * s.h + y) * s.w;
        const std::size_t out_row = ((std::size_t{i} * s.c + ch) * s.h + y) * ow + std::size_t{t} * s.w;
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(in_row), s.w,
                    out.begin() + static_cast<std::ptrdiff_t>(out_row));
      }
    }
  }
  return out;
}

}  // namespace

ImageBatch split_panorama(const ImageBatch& batch) {
  const Shape& s = batch.shape();
  if (s.w % s.h != 0) {
    throw Error(ErrorCode::InvalidShape, "width " + std::to_string(s.w) + " is not a multiple of height " +
                                             std::to_string(s.h));
  }
  const std::uint32_t k = s.w / s.h;
  const Shape out{s.n * k, s.c, s.h, s.h};
  if (batch.dtype() == DType::U8) return ImageBatch::from_u8(out, split_payload(batch.u8(), s, k));
  return ImageBatch::from_f32(out, split_payload(batch.f32(), s, k));
}

ImageBatch join_panorama(const ImageBatch& batch, std::uint32_t tiles) {
  const Shape& s = batch.shape();
  if (tiles == 0 || s.n % tiles != 0) {
    throw Error(ErrorCode::InvalidShape, "batch size is not a multiple of the tile count");
  }
  const Shape out{s.n / tiles, s.c, s.h, s.w * tiles};
  if (batch.dtype() == DType::U8) return ImageBatch::from_u8(out, join_payload(batch.u8(), s, tiles));
  return ImageBatch::from_f32(out, join_payload(batch.f32(), s, tiles));
}

ImageBatch stack(std::span<const Image> images, DType dtype) {
  if (images.empty()) throw Error(ErrorCode::InvalidShape, "cannot stack zero images");
  const Shape s{static_cast<std::uint32_t>(images.size()), images[0].c, images[0].h, images[0].w};
  ImageBatch out = ImageBatch::filled(s, dtype, 0.0);
  for (std::uint32_t i = 0; i < s.n; ++i) {
    if (images[i].c != s.c || images[i].h != s.h || images[i].w != s.w) {
      throw Error(ErrorCode::InvalidShape, "stacked images differ in shape");
    }
    out.set_image(i, images[i]);
  }
  return out;
}

}  // namespace augrl
