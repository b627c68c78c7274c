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

#include "augrl/toyrl/replay.hpp"

#include <algorithm>
#include <cmath>

#include "augrl/error.hpp"

namespace augrl::toyrl {

std::span<const std::uint8_t> Episode::frame(std::size_t t) const {
  const std::size_t sz = frame_shape.image_size();
  return std::span<const std::uint8_t>(frames).subspan(t * sz, sz);
}

ReplayBuffer::ReplayBuffer(std::uint64_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::InvalidValue, "replay capacity must be >= 1");
}

void ReplayBuffer::add(Episode episode) {
  if (episode.length() == 0) return;
  if (episode.rewards.size() != episode.length() ||
      episode.frames.size() != (episode.length() + 1) * episode.frame_shape.image_size()) {
    throw Error(ErrorCode::InvalidValue, "malformed episode");
  }
  if (!store_.empty() && store_.front().frame_shape != episode.frame_shape) {
    throw Error(ErrorCode::InvalidShape, "episode frame shape differs from the buffer");
  }
  steps_ += episode.length();
  store_.push_back(std::move(episode));
  while (store_.size() > 1 && steps_ > capacity_) {
    steps_ -= store_.front().length();
    store_.pop_front();
  }
}

TransitionBatch ReplayBuffer::sample(std::uint32_t batch_size, std::uint32_t n_step, double gamma, Rng& rng) const {
  if (steps_ == 0) throw Error(ErrorCode::InvalidValue, "sampling from an empty replay buffer");
  if (batch_size == 0 || n_step == 0) throw Error(ErrorCode::InvalidValue, "batch size and n-step must be >= 1");
  const Shape fs = store_.front().frame_shape;
  const std::size_t sz = fs.image_size();
  std::vector<std::uint8_t> obs(batch_size * sz), next(batch_size * sz);
  TransitionBatch b;
  b.actions.reserve(batch_size);
  b.returns.reserve(batch_size);
  b.discounts.reserve(batch_size);
  for (std::uint32_t i = 0; i < batch_size; ++i) {
    std::uint64_t k = rng.uniform_int(0, steps_ - 1);
    std::size_t e = 0;
    while (k >= store_[e].length()) k -= store_[e++].length();
    const Episode& ep = store_[e];
    const std::size_t t = k;
    const std::size_t m = std::min<std::size_t>(n_step, ep.length() - t);
    double g = 0.0, disc = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      g += disc * ep.rewards[t + j];
      disc *= gamma;
    }
    if (ep.terminal && t + m == ep.length()) disc = 0.0;
    std::copy_n(ep.frame(t).data(), sz, obs.data() + i * sz);
    std::copy_n(ep.frame(t + m).data(), sz, next.data() + i * sz);
    b.actions.push_back(ep.actions[t]);
    b.returns.push_back(g);
    b.discounts.push_back(disc);
  }
  const Shape bs{batch_size, fs.c, fs.h, fs.w};
  b.obs = ImageBatch::from_u8(bs, std::move(obs));
  b.next_obs = ImageBatch::from_u8(bs, std::move(next));
  return b;
}

}  // namespace augrl::toyrl
