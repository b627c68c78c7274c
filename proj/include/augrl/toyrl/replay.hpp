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
#include <deque>
#include <span>
#include <vector>

#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"
#include "augrl/toyrl/env.hpp"

namespace augrl::toyrl {

/// One finished episode: frames[0] is the reset frame, frames[t + 1] the
/// frame after actions[t]. Frames are stored exactly as rendered (u8).
struct Episode {
  Shape frame_shape;  // (1, c, h, w)
  std::vector<std::uint8_t> frames;
  std::vector<Action> actions;
  std::vector<double> rewards;
  bool terminal = false;

  std::size_t length() const noexcept { return actions.size(); }
  std::span<const std::uint8_t> frame(std::size_t t) const;
};

/// Sampled n-step transitions, ready for augmentation.
struct TransitionBatch {
  ImageBatch obs;
  ImageBatch next_obs;
  std::vector<Action> actions;
  std::vector<double> returns;    // sum_{k<m} gamma^k r_{t+k}
  std::vector<double> discounts;  // gamma^m, or 0 when the episode terminated inside the window
};

/// FIFO store of whole episodes holding at most `capacity` transitions
/// (oldest episodes are dropped first; the newest is always kept).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::uint64_t capacity);

  void add(Episode episode);
  std::uint64_t size() const noexcept { return steps_; }
  std::size_t episodes() const noexcept { return store_.size(); }
  const Episode& episode(std::size_t i) const { return store_.at(i); }

  /// Uniform over stored transitions; n-step windows are cut at episode end.
  TransitionBatch sample(std::uint32_t batch_size, std::uint32_t n_step, double gamma, Rng& rng) const;

 private:
  std::uint64_t capacity_;
  std::uint64_t steps_ = 0;
  std::deque<Episode> store_;
};

}  // namespace augrl::toyrl
