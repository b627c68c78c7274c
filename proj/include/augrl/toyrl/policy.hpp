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

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"
#include "augrl/toyrl/env.hpp"

namespace augrl::toyrl {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

inline constexpr std::uint32_t kPoolFactor = 4;
/// Encoder rows start as plane waves over the pooled grid with this
/// amplitude and at most this many cycles per frame along each axis.
inline constexpr double kEncoderWaveAmplitude = 1.0;
inline constexpr double kEncoderWaveMaxCycles = 0.5;

enum class Activation : std::uint8_t { Tanh = 0, Identity = 1 };

struct PolicyConfig {
  std::uint32_t frame_size = 84;
  std::uint32_t channels = 3;
  std::uint32_t hidden = 128;
  /// Hidden-layer nonlinearity. Identity exists for gradient checks; the
  /// action squash is always tanh.
  Activation activation = Activation::Tanh;

  std::uint32_t pooled() const noexcept { return frame_size / kPoolFactor; }
  std::size_t input_dim() const noexcept { return std::size_t{channels} * pooled() * pooled(); }
  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// InvalidValue unless the frame is a positive multiple of the pool factor,
/// channels is 1 or 3 and hidden >= 1.
void validate(const PolicyConfig& cfg);

/// Offsets of every tensor in the flat parameter vector. Critic tensors
/// (shared encoder included) come first, then the actor head, so each
/// optimizer owns one contiguous range.
///   encoder  W1 (H x D), b1 (H)
///   critic   Wc (H x (H + 2)), bc (H), wq (H), bq (1)
///   actor    Wa (H x H), ba (H), Wm (2 x H), bm (2)
/// Matrices are column-major.
struct ParamLayout {
  std::size_t D = 0, H = 0;
  std::size_t W1 = 0, b1 = 0, Wc = 0, bc = 0, wq = 0, bq = 0;
  std::size_t Wa = 0, ba = 0, Wm = 0, bm = 0;
  std::size_t critic_size = 0;
  std::size_t actor_size = 0;
  std::size_t total = 0;

  static ParamLayout make(const PolicyConfig& cfg);
};

/// Pools (n, c, S, S) frames by 4x4 block means into a D x n matrix with
/// values in [0, 1], rows ordered (c, y, x).
template <typename T>
Mat<T> pool_frames(const ImageBatch& frames, const PolicyConfig& cfg);

/// Instantiated for float (training) and double (gradient checks).
/// Encoder, critic and actor with one flat parameter vector.
///   h1 = act(W1 x + b1)
///   Q  = wq . act(Wc [h1; a] + bc) + bq
///   pi = tanh(Wm act(Wa h1 + ba) + bm)
/// The actor reads h1 without back-propagating into the encoder.
template <typename T>
class TinyNet {
 public:
  TinyNet() : TinyNet(PolicyConfig{}) {}
  explicit TinyNet(PolicyConfig cfg);

  /// Each encoder unit gets, per channel, a plane wave
  ///   A cos(2 pi (fx x + fy y) / P + phase),  fx, fy ~ U(+-kEncoderWaveMaxCycles),
  /// over the P x P pooled grid, so h1 starts as a smooth function of where
  /// a dot sits. Other hidden layers Uniform(+-1/sqrt(fan_in)), output heads
  /// Uniform(+-3e-3), biases zero. Draws come from `rng` in layout order,
  /// (fx, fy, phase) per unit and channel for the encoder.
  void init(RngState rng);

  const PolicyConfig& config() const noexcept { return cfg_; }
  const ParamLayout& layout() const noexcept { return layout_; }
  std::vector<T>& params() noexcept { return theta_; }
  const std::vector<T>& params() const noexcept { return theta_; }
  std::span<T> critic_params() noexcept { return {theta_.data(), layout_.critic_size}; }
  /// Leading part of the critic range: W1 and b1.
  std::span<T> encoder_params() noexcept { return {theta_.data(), layout_.Wc}; }
  std::span<T> critic_head_params() noexcept {
    return {theta_.data() + layout_.Wc, layout_.critic_size - layout_.Wc};
  }
  std::span<T> actor_params() noexcept { return {theta_.data() + layout_.critic_size, layout_.actor_size}; }

  template <typename U>
  TinyNet<U> cast() const;

  struct Trunk {
    Mat<T> x, z1, h1;
    /// Sparse copy of x. Frames are mostly background, so the W1 products
    /// run over nonzero inputs only.
    Eigen::SparseMatrix<T> xs;
  };
  struct CriticPass {
    Mat<T> u, z2, h2;
    Eigen::Matrix<T, 1, Eigen::Dynamic> q;
  };
  struct ActorPass {
    Mat<T> z2, h2, m, a;
  };

  Trunk trunk(Mat<T> x) const;
  CriticPass critic(const Mat<T>& h1, const Mat<T>& a) const;
  ActorPass actor(const Mat<T>& h1) const;

  /// mean_b (Q(x_b, a_b) - y_b)^2; gradient over the critic range.
  T critic_loss(const Trunk& tr, const Mat<T>& a, const Eigen::Matrix<T, 1, Eigen::Dynamic>& y,
                std::vector<T>* grad) const;
  /// -mean_b Q(h1_b, pi(h1_b)); gradient over the actor range only.
  T actor_loss(const Trunk& tr, std::vector<T>* grad) const;

  /// Greedy actions, 2 x n.
  Mat<T> act(const ImageBatch& frames) const;
  Action act_one(const ImageBatch& frame) const;

 private:
  using MapM = Eigen::Map<const Mat<T>>;
  using MapV = Eigen::Map<const Vec<T>>;
  MapM mat(std::size_t off, std::size_t r, std::size_t c) const {
    return MapM(theta_.data() + off, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  MapV vec(std::size_t off, std::size_t n) const {
    return MapV(theta_.data() + off, static_cast<Eigen::Index>(n));
  }
  Mat<T> activate(const Mat<T>& z) const;
  /// act'(z) expressed through h = act(z).
  Mat<T> activation_grad(const Mat<T>& h) const;

  PolicyConfig cfg_;
  ParamLayout layout_;
  std::vector<T> theta_;

  template <typename U>
  friend class TinyNet;
};

using TinyPolicy = TinyNet<float>;

/// Adam with bias correction over one contiguous parameter range.
class Adam {
 public:
  Adam() = default;
  Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  void step(std::span<float> params, std::span<const float> grad);
  std::uint64_t steps() const noexcept { return t_; }

 private:
  double lr_ = 1e-4, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::vector<double> m_, v_;
  std::uint64_t t_ = 0;
};

/// target <- (1 - tau) * target + tau * online, elementwise.
void soft_update(std::span<float> target, std::span<const float> online, double tau);

/// ARLP policy file, little-endian:
///   [0, 4) "ARLP"; u32 version = 1; u32 frame_size, channels, hidden;
///   u8 activation; 3 reserved zero bytes; u64 parameter count;
///   then the f32 parameters in layout order.
void save_policy(const TinyPolicy& policy, const std::filesystem::path& path);
/// IoError if unreadable, FormatError on any header or length mismatch.
TinyPolicy load_policy(const std::filesystem::path& path);

}  // namespace augrl::toyrl
