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
#include <algorithm>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "augrl/fusion.hpp"
#include "augrl/metrics.hpp"
#include "augrl/toyrl/env.hpp"
#include "augrl/toyrl/policy.hpp"
#include "augrl/transforms.hpp"

namespace augrl::toyrl {

/// No augmentation, one operator, or a fusion schedule.
using Augmentation = std::variant<std::monostate, TransformSpec, FusionSchedule>;

/// Short human-readable label: "none", an op name, or a scheme name.
std::string augmentation_label(const Augmentation& aug);

struct TrainConfig {
  std::uint64_t seed = 0;
  std::uint64_t total_env_steps = 30000;
  std::uint32_t batch_size = 32;
  std::uint64_t replay_capacity = 10000;
  Augmentation augmentation;
  std::uint64_t eval_every = 5000;
  std::uint32_t eval_episodes = kDefaultEvalEpisodes;
  /// Uniform random actions before the first update.
  std::uint64_t seed_steps = 1000;
  /// One gradient update every `update_every` env steps after seed_steps, so
  /// a run makes (total_env_steps - seed_steps) / update_every updates.
  std::uint32_t update_every = 2;
  std::uint32_t n_step = 3;
  double tau = 0.01;
  double lr = 1e-3;
  /// The encoder (W1, b1) learns at lr * encoder_lr_scale. Full-rate TD
  /// gradients wash out its smooth initial features.
  double encoder_lr_scale = 0.1;
  /// Exploration stddev, linear from std_start to std_end over the first
  /// std_decay_fraction of total_env_steps, constant afterwards.
  double std_start = 1.0;
  double std_end = 0.1;
  double std_decay_fraction = 1.0 / 3.0;
  /// Target-policy smoothing noise: N(0, target_noise_std) clipped to
  /// +-target_noise_clip.
  double target_noise_std = 0.2;
  double target_noise_clip = 0.3;
  /// Augment obs and next-obs with the same drawn parameters per sample.
  bool share_aug_params = true;
  EnvConfig env;
  PolicyConfig policy;
};

/// InvalidValue on any out-of-range field; validates env, policy and
/// augmentation as well.
void validate(const TrainConfig& cfg);

/// Exploration stddev after `step` env steps.
double exploration_std(const TrainConfig& cfg, std::uint64_t step) noexcept;

struct LearningPoint {
  std::uint64_t step = 0;
  ReturnSample returns;
};

struct TrainResult {
  std::vector<LearningPoint> curve;
  TinyPolicy policy;
  std::uint64_t updates = 0;
  /// Final schedule (its step_counter equals `updates`) when training used one.
  std::optional<FusionSchedule> schedule;
  /// Active-op changes observed between consecutive updates.
  std::uint64_t schedule_switches = 0;
  /// Env steps whose action needed clipping; nonzero only if the policy misbehaves.
  std::uint64_t clipped_actions = 0;
};

using ProgressFn = std::function<void(std::uint64_t step, const LearningPoint* eval)>;

/// Evaluates at step 0, at every multiple of eval_every and at the last
/// step, always on clean frames with the current parameters frozen.
/// DivergedAtStep when a loss turns non-finite.
TrainResult train(const TrainConfig& cfg, const ProgressFn& progress = {});

/// Greedy episodes. Episode i starts from RngState{seed, kEvalStream}.derive(i)
/// regardless of `transform`, so clean and augmented runs share start states.
/// With a transform, every observation the policy sees is augmented; the
/// dynamics stay clean.
ReturnSample evaluate(const TinyPolicy& policy, const EnvConfig& env, std::uint32_t n_episodes,
                      const std::optional<TransformSpec>& transform, std::uint64_t seed);

inline constexpr std::uint64_t kEvalStream = 0xE7A1;

struct GradCheckOptions {
  double epsilon = 1e-3;
  /// Coordinates checked per weight matrix; 0 checks every coordinate.
  /// Bias vectors are always checked in full.
  std::size_t coords_per_matrix = 0;
  std::uint64_t seed = 0;
};

struct GradCheckReport {
  double critic_max_rel = 0.0;
  double actor_max_rel = 0.0;
  std::size_t coordinates = 0;
  double max_rel() const noexcept { return std::max(critic_max_rel, actor_max_rel); }
};

/// Gradient entries below this magnitude sit under the finite-difference
/// noise of an O(1) loss and are compared in absolute terms.
inline constexpr double kGradFloor = 1e-6;

/// Relative error used by grad_check: |a - n| / max(|a|, |n|, kGradFloor).
double relative_error(double analytic, double numeric) noexcept;

inline constexpr std::uint32_t kGradCheckMaxFrames = 4;

/// Central differences on the f64 shadow of `net` against its analytic
/// gradients for the critic loss (random actions and targets drawn from
/// `opts.seed`) and the actor loss, on 1 to 4 `frames` (InvalidShape otherwise).
GradCheckReport grad_check(const TinyNet<double>& net, const ImageBatch& frames, const GradCheckOptions& opts = {});

/// Curve CSV: step,seed,return_mean,return_iqm.
void write_learning_curve_csv(std::ostream& os, const std::vector<LearningPoint>& curve, std::uint64_t seed,
                              bool header = true);

}  // namespace augrl::toyrl
