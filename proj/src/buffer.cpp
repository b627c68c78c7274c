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

#include "augrl/buffer.hpp"

#include <cstring>
#include <string>

#include "augrl/error.hpp"

namespace augrl {

std::size_t dtype_size(DType dtype) noexcept { return dtype == DType::U8 ? 1 : 4; }

ImageBatch batch_from_buffer(const BufferView& view) {
  if (view.data == nullptr) throw Error(ErrorCode::InvalidValue, "buffer pointer is null");
  validate_shape(view.shape);
  const std::size_t elem = dtype_size(view.dtype);
  const std::size_t expected = view.shape.numel() * elem;
  if (view.size_bytes != expected) {
    throw Error(ErrorCode::InvalidShape, "buffer holds " + std::to_string(view.size_bytes) + " bytes, shape needs " +
                                             std::to_string(expected));
  }
  if (view.has_strides) {
    const Shape& s = view.shape;
    const std::array<std::int64_t, 4> contiguous = {
        static_cast<std::int64_t>(s.image_size() * elem), static_cast<std::int64_t>(std::size_t{s.h} * s.w * elem),
        static_cast<std::int64_t>(std::size_t{s.w} * elem), static_cast<std::int64_t>(elem)};
    const std::array<std::uint32_t, 4> extent = {s.n, s.c, s.h, s.w};
    for (int d = 0; d < 4; ++d) {
      // Strides of unit axes are irrelevant to the layout.
      if (extent[d] > 1 && view.strides[d] != contiguous[d]) {
        throw Error(ErrorCode::InvalidShape, "buffer is not C-contiguous (axis " + std::to_string(d) + ")");
      }
    }
  }
  if (view.dtype == DType::U8) {
    const auto* p = static_cast<const std::uint8_t*>(view.data);
    return ImageBatch::from_u8(view.shape, std::vector<std::uint8_t>(p, p + view.shape.numel()));
  }
  std::vector<float> values(view.shape.numel());
  std::memcpy(values.data(), view.data, expected);
  return ImageBatch::from_f32(view.shape, std::move(values));
}

RngState augment_stream(std::uint64_t seed) noexcept { return RngState{seed, 0}; }

ImageBatch apply_buffer(const BufferView& view, const TransformSpec& spec, std::uint64_t seed) {
  return apply(spec, batch_from_buffer(view), augment_stream(seed));
}

ImageBatch apply_buffer(const BufferView& view, const FusionSchedule& schedule, std::uint64_t seed) {
  return apply(schedule, batch_from_buffer(view), augment_stream(seed));
}

}  // namespace augrl
