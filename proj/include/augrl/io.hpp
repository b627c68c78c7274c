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
#include <filesystem>
#include <span>
#include <vector>

#include "augrl/tensor.hpp"

namespace augrl {

/// ARLT raw tensor file, little-endian:
///   [0, 4)   magic "ARLT"
///   [4, 8)   u32 version = 1
///   [8, 24)  u32 n, c, h, w
///   [24]     u8 dtype (0 = u8, 1 = f32)
///   [25, 32) reserved, zero
///   [32, ..) payload, (n, c, h, w) row-major
inline constexpr std::size_t kArltHeaderSize = 32;
inline constexpr std::uint32_t kArltVersion = 1;

std::vector<std::uint8_t> encode_raw(const ImageBatch& batch);
/// FormatError on bad magic, unknown version or dtype, nonzero reserved
/// bytes, or a length that is not exactly header + payload.
ImageBatch decode_raw(std::span<const std::uint8_t> bytes);

ImageBatch load_raw(const std::filesystem::path& path);
void save_raw(const ImageBatch& batch, const std::filesystem::path& path);

/// 8-bit gray or RGB PNG (interlaced or not) to a (1, c, h, w) u8 batch.
/// Palette, alpha and 16-bit images are rejected with FormatError.
ImageBatch load_png(const std::filesystem::path& path);
/// Writes a single-image batch; f32 batches are rounded to u8 first.
void save_png(const ImageBatch& batch, const std::filesystem::path& path);

/// Dispatches on extension: ".png" uses PNG, anything else ARLT.
ImageBatch load_image_file(const std::filesystem::path& path);
void save_image_file(const ImageBatch& batch, const std::filesystem::path& path);

}  // namespace augrl
