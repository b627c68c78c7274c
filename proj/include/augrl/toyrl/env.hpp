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

#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"

namespace augrl::toyrl {

/// 2-D velocity command, each component in [-1, 1].
using Action = std::array<double, 2>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct EnvConfig {
  std::uint32_t frame_size = 84;
  std::uint32_t max_steps = 50;
  double step_size = 0.05;      // position change per unit action
  double target_radius = 0.05;  // bonus radius, in position units
  double bonus = 1.0;
  /// Short horizon: with 50-step episodes a longer one left the critic
  /// too noisy to steer the 128-unit policy.
  double gamma = 0.9;
  double dot_radius_px = 5.0;
  /// End the episode as soon as the agent is within target_radius.
  bool terminate_at_target = false;
};

/// InvalidValue on a frame below 8 px, zero steps, a non-positive step,
/// radius or dot size, or a discount outside (0, 1].
void validate(const EnvConfig& cfg);

struct StepResult {
  ImageBatch frame;
  double reward = 0.0;
  bool done = false;
  /// True when the episode ended at the target rather than by time limit.
  bool terminal = false;
  /// The submitted action had a component outside [-1, 1] and was clipped.
  bool action_clipped = false;
};

/// A point agent chasing a fixed target on the unit square.
///
/// Frames are (1, 3, S, S) u8: the agent is a filled disk in the red
/// channel, the target a filled disk in the green channel, blue is empty.
/// Position p maps to pixel centre p * (S - 1). Per step the agent moves by
/// clip(action) * step_size and is clamped to [0, 1]^2; the reward is
/// 1 - d / sqrt(2), plus `bonus` while d < target_radius, where d is the
/// agent-target distance after the move. All randomness is the start state,
/// drawn from the reset stream.
class DotReacherEnv {
 public:
  explicit DotReacherEnv(EnvConfig cfg = {});

  /// Agent and target uniform on [0, 1]^2, drawn from `episode` in that
  /// order (agent x, agent y, target x, target y).
  ImageBatch reset(RngState episode);
  /// Places agent and target explicitly.
  ImageBatch reset_to(Vec2 agent, Vec2 target);
  StepResult step(const Action& action);

  ImageBatch render() const;
  const EnvConfig& config() const noexcept { return cfg_; }
  Vec2 agent() const noexcept { return agent_; }
  Vec2 target() const noexcept { return target_; }
  std::uint32_t steps_taken() const noexcept { return t_; }
  double distance() const noexcept;
  double reward_at(double distance) const noexcept;

 private:
  EnvConfig cfg_;
  Vec2 agent_{};
  Vec2 target_{};
  std::uint32_t t_ = 0;
  bool done_ = true;
};

}  // namespace augrl::toyrl
