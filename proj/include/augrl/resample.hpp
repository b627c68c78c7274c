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

#include <cstdint>
#include <vector>

#include "augrl/tensor.hpp"

namespace augrl {

/// Bilinear resize with half-pixel centers and edge clamping.
///
/// For output index i along an axis of input length `in` and output length
/// `out`, the source coordinate is s = (i + 0.5) * (in / out) - 0.5, clamped
/// to [0, in - 1]; i0 = floor(s), i1 = min(i0 + 1, in - 1), f = s - i0.
/// The value is (1 - fy) * ((1 - fx) * v00 + fx * v01) +
///              fy       * ((1 - fx) * v10 + fx * v11),
/// evaluated in double and rounded once to float. Same-size resize is an
/// exact copy, and a 1x1 input yields a constant image.
Image bilinear_resize(ImageView image, std::uint32_t out_h, std::uint32_t out_w);

/// Per-output-index taps of the convention above along one axis.
struct ResizeTap {
  std::uint32_t i0;
  std::uint32_t i1;
  double frac;
};
std::vector<ResizeTap> resize_taps(std::uint32_t in, std::uint32_t out);

/// Bilinear sample at continuous (y, x) with integer coordinates at pixel
/// centers; taps outside the image read as zero.
double sample_bilinear_zero(ImageView image, std::uint32_t ch, double y, double x) noexcept;

}  // namespace augrl
