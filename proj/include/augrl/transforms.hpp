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
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"

namespace augrl {

// Individual augmentation operators.
//
// Every operator maps (n, c, h, w) to (n, c, h, w). Kernels work on f32
// images; u8 batches are converted on the way in and rounded half up on the
// way out, so the u8 result is always the f32 result followed by rounding.
// Parameters are drawn per image from RngState::derive(image_index) unless
// the spec asks for batch granularity, in which case every image replays
// the stream of image 0.

enum class OpKind : std::uint8_t {
  PadCrop,
  RandPadResize,
  PadResizeHD,
  CropShiftHD,
  TranslateHD,
  Rotate,
  Cutout,
};

inline constexpr std::array<OpKind, 7> kAllOpKinds = {
    OpKind::PadCrop,     OpKind::RandPadResize, OpKind::PadResizeHD, OpKind::CropShiftHD,
    OpKind::TranslateHD, OpKind::Rotate,        OpKind::Cutout};

/// Config names: pad_crop, rand_pad_resize, pad_resize_hd, crop_shift_hd,
/// translate_hd, rotate, cutout.
std::string_view op_name(OpKind kind) noexcept;
std::optional<OpKind> parse_op_name(std::string_view name) noexcept;

enum class PaddingMode : std::uint8_t { Replicate, Zero };
enum class Granularity : std::uint8_t { PerImage, PerBatch };

/// PadResizeHD, CropShiftHD and TranslateHD: the operators whose spatial
/// diversity can be restricted to presampled parameter sets.
bool has_param_sets(OpKind kind) noexcept;

/// Replicate for PadCrop, zero for everything else.
PaddingMode default_padding(OpKind kind) noexcept;

struct PadQuadruple {
  std::uint32_t top = 0;
  std::uint32_t bottom = 0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;

  std::uint32_t sum() const noexcept { return top + bottom + left + right; }
  friend bool operator==(const PadQuadruple&, const PadQuadruple&) = default;
};

/// Lines removed from each border, and where the remaining region lands on
/// the zero canvas. dst_y is in [0, top + bottom], dst_x in [0, left + right].
struct CropShiftParams {
  std::uint32_t top = 0;
  std::uint32_t bottom = 0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::uint32_t dst_y = 0;
  std::uint32_t dst_x = 0;

  std::uint32_t removed() const noexcept { return top + bottom + left + right; }
  friend bool operator==(const CropShiftParams&, const CropShiftParams&) = default;
};

/// Direction the content moves.
enum class Direction : std::uint8_t { Up, Down, Left, Right, UpLeft, UpRight, DownLeft, DownRight };

inline constexpr std::array<Direction, 8> kAllDirections = {
    Direction::Up,     Direction::Down,    Direction::Left,     Direction::Right,
    Direction::UpLeft, Direction::UpRight, Direction::DownLeft, Direction::DownRight};

struct Offset {
  int dy = 0;
  int dx = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// |dx| + |dy| == strength; diagonals put ceil(strength / 2) on the
/// horizontal axis and floor(strength / 2) on the vertical one.
Offset translation_offset(Direction dir, std::uint32_t strength) noexcept;

using ParamSet = std::variant<PadQuadruple, CropShiftParams, Direction>;

struct FrameSize {
  std::uint32_t h = 84;
  std::uint32_t w = 84;
};

/// One operator with its strength range (pixels; degrees for Rotate) and
/// spatial diversity. `diversity == std::nullopt` means Unlimited.
struct TransformSpec {
  OpKind kind = OpKind::PadCrop;
  std::uint32_t strength_min = 0;
  std::uint32_t strength_max = 0;
  std::optional<std::uint32_t> diversity;
  PaddingMode padding = PaddingMode::Replicate;
  Granularity granularity = Granularity::PerImage;
  std::vector<ParamSet> param_sets;

  static TransformSpec pad_crop(std::uint32_t pad);
  static TransformSpec rand_pad_resize(std::uint32_t strength_min, std::uint32_t strength_max);
  static TransformSpec pad_resize_hd(std::uint32_t strength, std::optional<std::uint32_t> diversity);
  static TransformSpec crop_shift_hd(std::uint32_t strength, std::optional<std::uint32_t> diversity);
  static TransformSpec translate_hd(std::uint32_t strength, std::optional<std::uint32_t> diversity);
  static TransformSpec rotate(std::uint32_t max_degrees);
  static TransformSpec cutout(std::uint32_t side);

  /// Copy with strength fixed at `s` and any presampled sets dropped.
  TransformSpec with_strength(std::uint32_t s) const;

  friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

/// Shape-independent checks: strength_min <= strength_max, diversity >= 1,
/// TranslateHD diversity <= 8, Rotate strength <= 180.
void validate(const TransformSpec& spec);

/// validate(spec) plus the checks that depend on the frame: PadCrop and
/// TranslateHD need strength < min(h,w), Cutout side <= min(h,w),
/// CropShiftHD strength < h + w; finite-diversity HD specs must be
/// presampled (NotPresampled).
void validate(const TransformSpec& spec, std::uint32_t h, std::uint32_t w);

/// Number of distinct parameter tuples at the spec's fixed strength on a
/// frame of the given size. NotApplicable for non-HD operators.
std::uint64_t count_param_sets(const TransformSpec& spec, FrameSize frame = {});

/// Draws D distinct parameter tuples once. Candidates come from the same
/// sampler the Unlimited variant uses; duplicates are redrawn.
/// NotApplicable when D is Unlimited or the operator has no parameter sets;
/// InvalidStrength when strength_min != strength_max; DiversityTooLarge when
/// D exceeds count_param_sets.
TransformSpec presample_param_sets(TransformSpec spec, RngState rng, FrameSize frame = {});

/// Number of compositions of s into four non-negative parts, C(s + 3, 3).
std::uint64_t composition_count(std::uint32_t s) noexcept;
/// Composition with lexicographic rank `rank` over (top, bottom, left).
PadQuadruple unrank_composition(std::uint32_t s, std::uint64_t rank) noexcept;

// Deterministic kernels with explicit parameters.

Image pad_image(ImageView image, const PadQuadruple& pad, PaddingMode mode);
/// Pads `pad` on every side then takes the h x w window at (off_y, off_x),
/// each offset in [0, 2 * pad].
Image pad_crop_image(ImageView image, std::uint32_t pad, std::uint32_t off_y, std::uint32_t off_x,
                     PaddingMode mode);
Image pad_resize_image(ImageView image, const PadQuadruple& pad, PaddingMode mode);
Image crop_shift_image(ImageView image, const CropShiftParams& params);
Image translate_image(ImageView image, Offset offset);
/// Rotates counter-clockwise (as displayed, y down) about ((h-1)/2, (w-1)/2).
Image rotate_image(ImageView image, double degrees);
Image cutout_image(ImageView image, std::uint32_t side, std::uint32_t y, std::uint32_t x);

/// Draws this image's parameters from `rng` and applies the operator.
/// Throws on strengths the image cannot accommodate.
Image apply_image(const TransformSpec& spec, ImageView image, Rng& rng);

ImageBatch apply(const TransformSpec& spec, const ImageBatch& batch, RngState rng);

// Named entry points.

ImageBatch pad_crop(const ImageBatch& batch, std::uint32_t pad, RngState rng,
                    PaddingMode mode = PaddingMode::Replicate);
ImageBatch rand_pad_resize(const ImageBatch& batch, std::uint32_t strength_min, std::uint32_t strength_max,
                           PaddingMode mode, RngState rng);
ImageBatch pad_resize_hd(const ImageBatch& batch, const TransformSpec& spec, RngState rng);
ImageBatch crop_shift_hd(const ImageBatch& batch, const TransformSpec& spec, RngState rng);
ImageBatch translate_hd(const ImageBatch& batch, const TransformSpec& spec, RngState rng);
ImageBatch rotate(const ImageBatch& batch, std::uint32_t max_degrees, RngState rng);
ImageBatch cutout(const ImageBatch& batch, std::uint32_t side, RngState rng);

}  // namespace augrl
