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

#include "augrl/toyrl/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "augrl/error.hpp"

namespace augrl::toyrl {

void validate(const EnvConfig& cfg) {
  if (cfg.frame_size < 8) throw Error(ErrorCode::InvalidValue, "frame_size must be >= 8");
  if (cfg.max_steps == 0) throw Error(ErrorCode::InvalidValue, "max_steps must be >= 1");
  if (!(cfg.step_size > 0.0)) throw Error(ErrorCode::InvalidValue, "step_size must be > 0");
  if (!(cfg.target_radius > 0.0)) throw Error(ErrorCode::InvalidValue, "target_radius must be > 0");
  if (!(cfg.dot_radius_px > 0.0)) throw Error(ErrorCode::InvalidValue, "dot_radius_px must be > 0");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) throw Error(ErrorCode::InvalidValue, "gamma must be in (0, 1]");
  if (!std::isfinite(cfg.bonus)) throw Error(ErrorCode::InvalidValue, "bonus must be finite");
}

DotReacherEnv::DotReacherEnv(EnvConfig cfg) : cfg_(cfg) { validate(cfg_); }

ImageBatch DotReacherEnv::reset(RngState episode) {
  Rng rng(episode);
  Vec2 a, g;
  a.x = rng.uniform01();
  a.y = rng.uniform01();
  g.x = rng.uniform01();
  g.y = rng.uniform01();
  return reset_to(a, g);
}

ImageBatch DotReacherEnv::reset_to(Vec2 agent, Vec2 target) {
  auto clamp01 = [](Vec2 p) { return Vec2{std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)}; };
  agent_ = clamp01(agent);
  target_ = clamp01(target);
  t_ = 0;
  done_ = false;
  return render();
}

double DotReacherEnv::distance() const noexcept { return std::hypot(agent_.x - target_.x, agent_.y - target_.y); }

double DotReacherEnv::reward_at(double d) const noexcept {
  double r = 1.0 - d / std::numbers::sqrt2;
  if (d < cfg_.target_radius) r += cfg_.bonus;
  return r;
}

StepResult DotReacherEnv::step(const Action& action) {
  if (done_) throw Error(ErrorCode::InvalidValue, "step after the episode ended; call reset");
  StepResult out;
  double a[2];
  for (int i = 0; i < 2; ++i) {
    const double v = std::isfinite(action[i]) ? action[i] : 0.0;
    a[i] = std::clamp(v, -1.0, 1.0);
    out.action_clipped = out.action_clipped || a[i] != action[i];
  }
  agent_.x = std::clamp(agent_.x + a[0] * cfg_.step_size, 0.0, 1.0);
  agent_.y = std::clamp(agent_.y + a[1] * cfg_.step_size, 0.0, 1.0);
  ++t_;
  const double d = distance();
  out.reward = reward_at(d);
  out.terminal = cfg_.terminate_at_target && d < cfg_.target_radius;
  out.done = out.terminal || t_ >= cfg_.max_steps;
  done_ = out.done;
  out.frame = render();
  return out;
}

ImageBatch DotReacherEnv::render() const {
  const std::uint32_t s = cfg_.frame_size;
  ImageBatch frame = ImageBatch::filled({1, 3, s, s}, DType::U8, 0.0);
  auto px = frame.u8();
  const double scale = static_cast<double>(s - 1);
  const double r2 = cfg_.dot_radius_px * cfg_.dot_radius_px;
  auto disk = [&](Vec2 p, std::uint32_t channel) {
    const double cx = p.x * scale;
    const double cy = p.y * scale;
    const auto lo_y = static_cast<std::int64_t>(std::floor(cy - cfg_.dot_radius_px));
    const auto hi_y = static_cast<std::int64_t>(std::ceil(cy + cfg_.dot_radius_px));
    const auto lo_x = static_cast<std::int64_t>(std::floor(cx - cfg_.dot_radius_px));
    const auto hi_x = static_cast<std::int64_t>(std::ceil(cx + cfg_.dot_radius_px));
    for (std::int64_t y = std::max<std::int64_t>(lo_y, 0); y <= std::min<std::int64_t>(hi_y, s - 1); ++y) {
      for (std::int64_t x = std::max<std::int64_t>(lo_x, 0); x <= std::min<std::int64_t>(hi_x, s - 1); ++x) {
        const double dy = static_cast<double>(y) - cy;
        const double dx = static_cast<double>(x) - cx;
        if (dx * dx + dy * dy <= r2) px[(std::size_t{channel} * s + y) * s + x] = 255;
      }
    }
  };
  disk(agent_, 0);
  disk(target_, 1);
  return frame;
}

}  // namespace augrl::toyrl
