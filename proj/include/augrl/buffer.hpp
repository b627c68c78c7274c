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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "augrl/fusion.hpp"
#include "augrl/tensor.hpp"
#include "augrl/transforms.hpp"

namespace augrl {

// Entry points for foreign callers holding an (n, c, h, w) array they own.
// The view is validated completely before any kernel runs and is never
// retained past the call.

/// Borrowed caller memory. Strides are in bytes; an empty `strides` means
/// C-contiguous. Only C-contiguous layouts are accepted.
struct BufferView {
  const void* data = nullptr;
  std::size_t size_bytes = 0;
  Shape shape;
  DType dtype = DType::U8;
  std::array<std::int64_t, 4> strides{};
  bool has_strides = false;
};

/// Element size for `dtype`, in bytes.
std::size_t dtype_size(DType dtype) noexcept;

/// Copies the view into a batch. InvalidShape on a bad shape, non-contiguous
/// strides or a byte count that disagrees with the shape; InvalidValue on a
/// null pointer or f32 data outside [0, 1].
ImageBatch batch_from_buffer(const BufferView& view);

/// Stream used for a whole augment call with `seed`. The CLI and the buffer
/// API share it so equal seeds give equal bytes.
RngState augment_stream(std::uint64_t seed) noexcept;

/// Result in the input's dtype and layout.
ImageBatch apply_buffer(const BufferView& view, const TransformSpec& spec, std::uint64_t seed);
ImageBatch apply_buffer(const BufferView& view, const FusionSchedule& schedule, std::uint64_t seed);

}  // namespace augrl
