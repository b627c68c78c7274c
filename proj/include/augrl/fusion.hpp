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
#include <optional>
#include <string_view>
#include <vector>

#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"
#include "augrl/transforms.hpp"

namespace augrl {

enum class FusionScheme : std::uint8_t { Compose, Sample, Mix, Cycle };
enum class ComposeOrder : std::uint8_t { Fixed, Shuffled };

/// compose | sample | mix | cycle
std::string_view scheme_name(FusionScheme scheme) noexcept;
std::optional<FusionScheme> parse_scheme_name(std::string_view name) noexcept;

inline constexpr std::uint64_t kMaxStepCounter = 0x7FFFFFFFFFFFFFFFull;
inline constexpr std::uint64_t kDefaultCycleInterval = 100000;

/// Multi-type augmentation over an ordered list of operators.
///
/// Compose applies every op in sequence (fixed order, or one shuffled order
/// per batch). Sample applies one uniformly chosen op per image. Mix blends,
/// per image, `mix_width` augmented copies from uniformly chosen ops with
/// Dirichlet(alpha) weights. Cycle applies the single active op,
/// ops[(step_counter / interval) % ops.size()], to the whole batch.
struct FusionSchedule {
  FusionScheme scheme = FusionScheme::Cycle;
  std::vector<TransformSpec> ops;
  ComposeOrder order = ComposeOrder::Fixed;
  std::uint32_t mix_width = 2;
  double dirichlet_alpha = 1.0;
  std::uint64_t interval = kDefaultCycleInterval;
  std::uint64_t step_counter = 0;

  /// Meaningful for every scheme; only Cycle acts on it.
  std::size_t active_index() const noexcept;

  friend bool operator==(const FusionSchedule&, const FusionSchedule&) = default;
};

/// InvalidSchedule on empty ops, zero interval/mix width or non-positive
/// alpha; also validates every op.
void validate(const FusionSchedule& schedule);

/// Never touches step_counter.
ImageBatch apply(const FusionSchedule& schedule, const ImageBatch& batch, RngState rng);

/// Advances step_counter by n_steps (>= 1). CounterOverflow past 2^63 - 1.
FusionSchedule tick(FusionSchedule schedule, std::uint64_t n_steps);

/// Cycle over [pad_crop(pad = 4), rand_pad_resize([0, 16])].
FusionSchedule default_cycaug(std::uint64_t interval = kDefaultCycleInterval);

/// One image's Mix computation, exposed so callers can inspect the blend.
struct MixResult {
  std::vector<std::size_t> op_indices;
  std::vector<Image> components;
  std::vector<double> weights;
  Image output;
};

MixResult mix_image(const FusionSchedule& schedule, ImageView image, Rng& rng);

}  // namespace augrl
