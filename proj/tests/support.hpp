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

// Test-data helpers. Randomness here only generates inputs; expected values
// always come from oracles or closed forms.

#include <cstdint>
#include <vector>

#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"

namespace testutil {

inline augrl::ImageBatch random_batch(augrl::Shape s, augrl::DType dtype, std::uint64_t seed) {
  augrl::Rng rng(seed, 0xDA7A);
  if (dtype == augrl::DType::U8) {
    std::vector<std::uint8_t> v(s.numel());
    for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_u32() & 0xFFu);
    return augrl::ImageBatch::from_u8(s, std::move(v));
  }
  std::vector<float> v(s.numel());
  for (auto& f : v) f = static_cast<float>(rng.uniform01());
  return augrl::ImageBatch::from_f32(s, std::move(v));
}

inline augrl::Image random_image(std::uint32_t c, std::uint32_t h, std::uint32_t w, std::uint64_t seed) {
  augrl::Rng rng(seed, 0x1A6E);
  augrl::Image img(c, h, w);
  for (auto& f : img.data) f = static_cast<float>(rng.uniform01());
  return img;
}

}  // namespace testutil
