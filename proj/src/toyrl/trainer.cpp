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

#include "augrl/toyrl/trainer.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "augrl/error.hpp"
#include "augrl/toyrl/replay.hpp"

namespace augrl::toyrl {
namespace {

// Stream tags under RngState{seed, 0}. Fixed forever: changing one changes
// every recorded curve.
constexpr std::uint64_t kEnvTag = 1;
constexpr std::uint64_t kReplayTag = 2;
constexpr std::uint64_t kNoiseTag = 3;
constexpr std::uint64_t kAugTag = 4;
constexpr std::uint64_t kInitTag = 5;
// Under an update's augmentation state: next-obs stream when parameters are not shared.
constexpr std::uint64_t kNextObsTag = 0x4E455854;
// Under an evaluation episode: per-step observation augmentation.
constexpr std::uint64_t kEvalAugTag = 0xA06;

ImageBatch augment(const Augmentation& aug, const ImageBatch& batch, RngState state) {
  if (const auto* spec = std::get_if<TransformSpec>(&aug)) return apply(*spec, batch, state);
  if (const auto* sched = std::get_if<FusionSchedule>(&aug)) return apply(*sched, batch, state);
  return batch;
}

double clip1(double v) noexcept { return std::clamp(v, -1.0, 1.0); }

}  // namespace

std::string augmentation_label(const Augmentation& aug) {
  if (const auto* spec = std::get_if<TransformSpec>(&aug)) return std::string(op_name(spec->kind));
  if (const auto* sched = std::get_if<FusionSchedule>(&aug)) return std::string(scheme_name(sched->scheme));
  return "none";
}

void validate(const TrainConfig& cfg) {
  auto bad = [](const char* what) { throw Error(ErrorCode::InvalidValue, what); };
  validate(cfg.env);
  validate(cfg.policy);
  if (cfg.policy.frame_size != cfg.env.frame_size) bad("policy frame_size must equal env frame_size");
  if (cfg.policy.channels != 3) bad("policy channels must be 3 for rendered frames");
  if (cfg.total_env_steps == 0) bad("total_env_steps must be >= 1");
  if (cfg.batch_size == 0) bad("batch_size must be >= 1");
  if (cfg.replay_capacity == 0) bad("replay_capacity must be >= 1");
  if (cfg.eval_every == 0) bad("eval_every must be >= 1");
  if (cfg.eval_episodes == 0) bad("eval_episodes must be >= 1");
  if (cfg.update_every == 0) bad("update_every must be >= 1");
  if (cfg.n_step == 0) bad("n_step must be >= 1");
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) bad("tau must lie in (0, 1]");
  if (!(cfg.lr > 0.0) || !std::isfinite(cfg.lr)) bad("lr must be positive");
  if (!(cfg.encoder_lr_scale > 0.0) || !std::isfinite(cfg.encoder_lr_scale)) bad("encoder_lr_scale must be positive");
  if (!(cfg.std_start >= 0.0) || !(cfg.std_end >= 0.0)) bad("exploration std must be >= 0");
  if (!(cfg.std_decay_fraction >= 0.0 && cfg.std_decay_fraction <= 1.0)) bad("std_decay_fraction must lie in [0, 1]");
  if (!(cfg.target_noise_std >= 0.0) || !(cfg.target_noise_clip >= 0.0)) bad("target noise must be >= 0");
  const std::uint32_t s = cfg.env.frame_size;
  if (const auto* spec = std::get_if<TransformSpec>(&cfg.augmentation)) validate(*spec, s, s);
  if (const auto* sched = std::get_if<FusionSchedule>(&cfg.augmentation)) {
    validate(*sched);
    for (const auto& op : sched->ops) validate(op, s, s);
  }
}

double exploration_std(const TrainConfig& cfg, std::uint64_t step) noexcept {
  const double horizon = cfg.std_decay_fraction * static_cast<double>(cfg.total_env_steps);
  if (horizon <= 0.0 || static_cast<double>(step) >= horizon) return cfg.std_end;
  const double f = static_cast<double>(step) / horizon;
  return cfg.std_start + (cfg.std_end - cfg.std_start) * f;
}

ReturnSample evaluate(const TinyPolicy& policy, const EnvConfig& env_cfg, std::uint32_t n_episodes,
                      const std::optional<TransformSpec>& transform, std::uint64_t seed) {
  if (n_episodes == 0) throw Error(ErrorCode::InvalidValue, "evaluation needs >= 1 episode");
  if (policy.config().frame_size != env_cfg.frame_size) {
    throw Error(ErrorCode::InvalidShape, "policy frame size differs from the environment");
  }
  if (transform) validate(*transform, env_cfg.frame_size, env_cfg.frame_size);
  DotReacherEnv env(env_cfg);
  ReturnSample out;
  out.context.env_id = "dot_reacher";
  out.context.transform = transform ? std::string(op_name(transform->kind)) : "none";
  out.context.seed = seed;
  out.episode_returns.reserve(n_episodes);
  const RngState root{seed, kEvalStream};
  for (std::uint32_t i = 0; i < n_episodes; ++i) {
    const RngState episode = root.derive(i);
    const RngState aug = episode.derive(kEvalAugTag);
    ImageBatch frame = env.reset(episode);
    double total = 0.0;
    for (std::uint32_t t = 0;; ++t) {
      const Action a = transform ? policy.act_one(apply(*transform, frame, aug.derive(t))) : policy.act_one(frame);
      StepResult r = env.step(a);
      total += r.reward;
      if (r.done) break;
      frame = std::move(r.frame);
    }
    out.episode_returns.push_back(total);
  }
  return out;
}

TrainResult train(const TrainConfig& cfg, const ProgressFn& progress) {
  validate(cfg);
  const RngState root{cfg.seed, 0};
  const RngState env_root = root.derive(kEnvTag);
  const RngState aug_root = root.derive(kAugTag);
  Rng replay_rng(root.derive(kReplayTag));
  Rng noise(root.derive(kNoiseTag));

  TrainResult res;
  TinyPolicy& net = res.policy;
  net = TinyPolicy(cfg.policy);
  net.init(root.derive(kInitTag));
  TinyPolicy target = net;
  const ParamLayout& L = net.layout();
  Adam encoder_opt(L.Wc, cfg.lr * cfg.encoder_lr_scale);
  Adam critic_opt(L.critic_size - L.Wc, cfg.lr);
  Adam actor_opt(L.actor_size, cfg.lr);
  std::optional<FusionSchedule> schedule;
  if (const auto* s = std::get_if<FusionSchedule>(&cfg.augmentation)) schedule = *s;
  Augmentation aug = cfg.augmentation;

  ReplayBuffer replay(cfg.replay_capacity);
  DotReacherEnv env(cfg.env);
  const std::string policy_id = augmentation_label(cfg.augmentation);

  auto record = [&](std::uint64_t step) {
    LearningPoint pt{step, evaluate(net, cfg.env, cfg.eval_episodes, std::nullopt, cfg.seed)};
    pt.returns.context.policy_id = policy_id;
    res.curve.push_back(pt);
    if (progress) progress(step, &res.curve.back());
  };

  std::vector<float> grad_c, grad_a;
  auto update = [&](std::uint64_t step) {
    TransitionBatch b = replay.sample(cfg.batch_size, cfg.n_step, cfg.env.gamma, replay_rng);
    if (schedule) aug = *schedule;
    const RngState s = aug_root.derive(res.updates);
    const ImageBatch obs = augment(aug, b.obs, s);
    const ImageBatch next = augment(aug, b.next_obs, cfg.share_aug_params ? s : s.derive(kNextObsTag));
    const auto n = static_cast<Eigen::Index>(cfg.batch_size);

    // Bootstrapped target with clipped smoothing noise on the target action.
    const auto next_tr = target.trunk(pool_frames<float>(next, cfg.policy));
    Mat<float> a_next = target.actor(next_tr.h1).a;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index r = 0; r < 2; ++r) {
        const double eps = std::clamp(noise.normal() * cfg.target_noise_std, -cfg.target_noise_clip,
                                      cfg.target_noise_clip);
        a_next(r, j) = static_cast<float>(clip1(a_next(r, j) + eps));
      }
    }
    const auto q_next = target.critic(next_tr.h1, a_next).q;
    Eigen::Matrix<float, 1, Eigen::Dynamic> y(n);
    Mat<float> a(2, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(j);
      y(j) = static_cast<float>(b.returns[k] + b.discounts[k] * static_cast<double>(q_next(j)));
      a(0, j) = static_cast<float>(b.actions[k][0]);
      a(1, j) = static_cast<float>(b.actions[k][1]);
    }

    const auto tr = net.trunk(pool_frames<float>(obs, cfg.policy));
    const float critic_loss = net.critic_loss(tr, a, y, &grad_c);
    if (!std::isfinite(critic_loss)) {
      throw Error(ErrorCode::DivergedAtStep, "non-finite critic loss at env step " + std::to_string(step));
    }
    const std::span<const float> gc(grad_c);
    encoder_opt.step(net.encoder_params(), gc.first(L.Wc));
    critic_opt.step(net.critic_head_params(), gc.subspan(L.Wc));
    // Actor sees the pre-update encoder features and the updated critic.
    const float actor_loss = net.actor_loss(tr, &grad_a);
    if (!std::isfinite(actor_loss)) {
      throw Error(ErrorCode::DivergedAtStep, "non-finite actor loss at env step " + std::to_string(step));
    }
    actor_opt.step(net.actor_params(), grad_a);
    soft_update(target.params(), net.params(), cfg.tau);

    ++res.updates;
    if (schedule) {
      const std::size_t before = schedule->active_index();
      *schedule = tick(std::move(*schedule), 1);
      if (schedule->active_index() != before) ++res.schedule_switches;
    }
  };

  record(0);
  std::uint64_t episode_index = 0;
  std::uint64_t step = 0;
  while (step < cfg.total_env_steps) {
    Episode ep;
    ImageBatch frame = env.reset(env_root.derive(episode_index++));
    ep.frame_shape = Shape{1, frame.shape().c, frame.shape().h, frame.shape().w};
    auto push_frame = [&](const ImageBatch& f) {
      const auto bytes = f.u8();
      ep.frames.insert(ep.frames.end(), bytes.begin(), bytes.end());
    };
    push_frame(frame);
    bool done = false;
    while (!done && step < cfg.total_env_steps) {
      Action act;
      if (step < cfg.seed_steps) {
        act = {noise.uniform(-1.0, 1.0), noise.uniform(-1.0, 1.0)};
      } else {
        act = net.act_one(frame);
        const double sd = exploration_std(cfg, step);
        for (double& v : act) v = clip1(v + sd * noise.normal());
      }
      StepResult r = env.step(act);
      if (r.action_clipped) ++res.clipped_actions;
      push_frame(r.frame);
      ep.actions.push_back(act);
      ep.rewards.push_back(r.reward);
      ep.terminal = r.terminal;
      done = r.done;
      frame = std::move(r.frame);
      ++step;
      if (done) {
        replay.add(std::move(ep));
        ep = Episode{};
      }
      if (step > cfg.seed_steps && (step - cfg.seed_steps) % cfg.update_every == 0 && replay.size() > 0) update(step);
      if (step % cfg.eval_every == 0 || step == cfg.total_env_steps) record(step);
    }
  }
  res.schedule = schedule;
  return res;
}

double relative_error(double analytic, double numeric) noexcept {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), kGradFloor});
  return std::abs(analytic - numeric) / scale;
}

GradCheckReport grad_check(const TinyNet<double>& net_in, const ImageBatch& frames, const GradCheckOptions& opts) {
  if (frames.shape().n == 0 || frames.shape().n > kGradCheckMaxFrames) {
    throw Error(ErrorCode::InvalidShape, "grad_check takes 1 to 4 frames");
  }
  TinyNet<double> net = net_in;
  const ParamLayout& L = net.layout();
  const auto n = static_cast<Eigen::Index>(frames.shape().n);
  Rng rng(RngState{opts.seed, 0x6C4ECC});
  Mat<double> a(2, n);
  Eigen::Matrix<double, 1, Eigen::Dynamic> y(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(0, j) = rng.uniform(-1.0, 1.0);
    a(1, j) = rng.uniform(-1.0, 1.0);
    y(j) = rng.normal();
  }
  const Mat<double> x = pool_frames<double>(frames, net.config());

  // Coordinates: every bias entry; all or a sample of each weight matrix.
  auto coords = [&](std::size_t off, std::size_t len, bool matrix, std::vector<std::size_t>& out) {
    if (!matrix || opts.coords_per_matrix == 0 || opts.coords_per_matrix >= len) {
      for (std::size_t k = 0; k < len; ++k) out.push_back(off + k);
      return;
    }
    for (std::size_t k = 0; k < opts.coords_per_matrix; ++k) out.push_back(off + rng.index(len));
  };
  const std::size_t H = L.H, D = L.D;
  std::vector<std::size_t> critic_idx, actor_idx;
  coords(L.W1, H * D, true, critic_idx);
  coords(L.b1, H, false, critic_idx);
  coords(L.Wc, H * (H + 2), true, critic_idx);
  coords(L.bc, H, false, critic_idx);
  coords(L.wq, H, true, critic_idx);
  coords(L.bq, 1, false, critic_idx);
  coords(L.Wa, H * H, true, actor_idx);
  coords(L.ba, H, false, actor_idx);
  coords(L.Wm, 2 * H, true, actor_idx);
  coords(L.bm, 2, false, actor_idx);

  std::vector<double> grad_c, grad_a;
  net.critic_loss(net.trunk(x), a, y, &grad_c);
  const auto tr = net.trunk(x);
  net.actor_loss(tr, &grad_a);

  GradCheckReport rep;
  auto& theta = net.params();
  const double h = opts.epsilon;
  for (std::size_t k : critic_idx) {
    const double saved = theta[k];
    theta[k] = saved + h;
    const double lp = net.critic_loss(net.trunk(x), a, y, nullptr);
    theta[k] = saved - h;
    const double lm = net.critic_loss(net.trunk(x), a, y, nullptr);
    theta[k] = saved;
    rep.critic_max_rel = std::max(rep.critic_max_rel, relative_error(grad_c[k], (lp - lm) / (2.0 * h)));
  }
  // Actor parameters do not touch the trunk.
  for (std::size_t k : actor_idx) {
    const double saved = theta[k];
    theta[k] = saved + h;
    const double lp = net.actor_loss(tr, nullptr);
    theta[k] = saved - h;
    const double lm = net.actor_loss(tr, nullptr);
    theta[k] = saved;
    rep.actor_max_rel =
        std::max(rep.actor_max_rel, relative_error(grad_a[k - L.critic_size], (lp - lm) / (2.0 * h)));
  }
  rep.coordinates = critic_idx.size() + actor_idx.size();
  return rep;
}

void write_learning_curve_csv(std::ostream& os, const std::vector<LearningPoint>& curve, std::uint64_t seed,
                              bool header) {
  if (header) os << "step,seed,return_mean,return_iqm\n";
  for (const auto& p : curve) {
    os << p.step << ',' << seed << ',' << format_real(p.returns.mean()) << ','
       << format_real(iqm(p.returns.episode_returns)) << '\n';
  }
}

}  // namespace augrl::toyrl
