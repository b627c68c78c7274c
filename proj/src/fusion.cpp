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

#include "augrl/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "augrl/error.hpp"

namespace augrl {

std::string_view scheme_name(FusionScheme scheme) noexcept {
  switch (scheme) {
    case FusionScheme::Compose: return "compose";
    case FusionScheme::Sample: return "sample";
    case FusionScheme::Mix: return "mix";
    case FusionScheme::Cycle: return "cycle";
  }
  return "unknown";
}

std::optional<FusionScheme> parse_scheme_name(std::string_view name) noexcept {
  for (auto s : {FusionScheme::Compose, FusionScheme::Sample, FusionScheme::Mix, FusionScheme::Cycle}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

std::size_t FusionSchedule::active_index() const noexcept {
  if (ops.empty() || interval == 0) return 0;
  return static_cast<std::size_t>((step_counter / interval) % ops.size());
}

void validate(const FusionSchedule& schedule) {
  if (schedule.ops.empty()) throw Error(ErrorCode::InvalidSchedule, "schedule has no operators");
  if (schedule.interval == 0) throw Error(ErrorCode::InvalidSchedule, "cycle interval must be positive");
  if (schedule.mix_width == 0) throw Error(ErrorCode::InvalidSchedule, "mix width must be >= 1");
  if (!(schedule.dirichlet_alpha > 0.0)) throw Error(ErrorCode::InvalidSchedule, "dirichlet alpha must be > 0");
  for (const auto& op : schedule.ops) validate(op);
}

namespace {

// Shuffle stream tag, far from any image index.
constexpr std::uint64_t kShuffleTag = 0xC0FFEE0000000001ull;

// Every image is processed in f32 and rounded once at the end, so a u8
// Compose never accumulates intermediate rounding.
template <typename PerImage>
ImageBatch map_images(const ImageBatch& batch, PerImage&& fn) {
  const Shape& s = batch.shape();
  ImageBatch out = ImageBatch::filled(s, batch.dtype(), 0.0);
  for (std::uint32_t i = 0; i < s.n; ++i) {
    const Image src = batch.image(i);
    out.set_image(i, fn(i, src));
  }
  return out;
}

std::vector<std::size_t> compose_order(const FusionSchedule& schedule, RngState state) {
  std::vector<std::size_t> order(schedule.ops.size());
  std::iota(order.begin(), order.end(), 0);
  if (schedule.order == ComposeOrder::Shuffled) {
    Rng rng(state.derive(kShuffleTag));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  }
  return order;
}

}  // namespace

MixResult mix_image(const FusionSchedule& schedule, ImageView image, Rng& rng) {
  MixResult r;
  const std::uint32_t k = schedule.mix_width;
  r.op_indices.reserve(k);
  for (std::uint32_t j = 0; j < k; ++j) r.op_indices.push_back(rng.index(schedule.ops.size()));
  if (k == 1) {
    r.weights = {1.0};  // Dirichlet over one component is degenerate; no draw
  } else {
    double total = 0.0;
    for (std::uint32_t j = 0; j < k; ++j) {
      r.weights.push_back(rng.gamma(schedule.dirichlet_alpha));
      total += r.weights.back();
    }
    for (double& w : r.weights) w /= total;
  }
  for (std::uint32_t j = 0; j < k; ++j) {
    r.components.push_back(apply_image(schedule.ops[r.op_indices[j]], image, rng));
  }
  r.output = Image(image.c, image.h, image.w);
  for (std::size_t p = 0; p < r.output.data.size(); ++p) {
    double acc = 0.0;
    for (std::uint32_t j = 0; j < k; ++j) acc += r.weights[j] * r.components[j].data[p];
    r.output.data[p] = static_cast<float>(acc);
  }
  return r;
}

ImageBatch apply(const FusionSchedule& schedule, const ImageBatch& batch, RngState state) {
  validate(schedule);
  const Shape& shape = batch.shape();
  for (const auto& op : schedule.ops) validate(op, shape.h, shape.w);

  if (schedule.scheme == FusionScheme::Cycle) return apply(schedule.ops[schedule.active_index()], batch, state);

  // Compose, Sample and Mix consume one stream per image, in draw order.
  const bool per_batch = std::all_of(schedule.ops.begin(), schedule.ops.end(),
                                     [](const TransformSpec& op) { return op.granularity == Granularity::PerBatch; });
  const auto order = compose_order(schedule, state);
  return map_images(batch, [&](std::uint32_t i, const Image& src) {
    Rng rng(state.derive(per_batch ? 0 : i));
    switch (schedule.scheme) {
      case FusionScheme::Compose: {
        Image cur = src;
        for (std::size_t idx : order) cur = apply_image(schedule.ops[idx], cur.view(), rng);
        return cur;
      }
      case FusionScheme::Sample: {
        const std::size_t pick = rng.index(schedule.ops.size());
        return apply_image(schedule.ops[pick], src.view(), rng);
      }
      default: return mix_image(schedule, src.view(), rng).output;
    }
  });
}

FusionSchedule tick(FusionSchedule schedule, std::uint64_t n_steps) {
  if (n_steps == 0) throw Error(ErrorCode::InvalidValue, "tick needs n_steps >= 1");
  if (n_steps > kMaxStepCounter - schedule.step_counter) {
    throw Error(ErrorCode::CounterOverflow, "step counter would exceed 2^63 - 1");
  }
  schedule.step_counter += n_steps;
  return schedule;
}

FusionSchedule default_cycaug(std::uint64_t interval) {
  FusionSchedule s;
  s.scheme = FusionScheme::Cycle;
  s.ops = {TransformSpec::pad_crop(4), TransformSpec::rand_pad_resize(0, 16)};
  s.interval = interval;
  return s;
}

}  // namespace augrl
