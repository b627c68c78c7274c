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

#include "augrl/toyrl/policy.hpp"

#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

#include "augrl/error.hpp"

namespace augrl::toyrl {

void validate(const PolicyConfig& cfg) {
  if (cfg.frame_size < kPoolFactor || cfg.frame_size % kPoolFactor != 0) {
    throw Error(ErrorCode::InvalidValue, "policy frame_size must be a positive multiple of 4");
  }
  if (cfg.channels != 1 && cfg.channels != 3) throw Error(ErrorCode::InvalidValue, "policy channels must be 1 or 3");
  if (cfg.hidden == 0) throw Error(ErrorCode::InvalidValue, "policy hidden width must be >= 1");
}

ParamLayout ParamLayout::make(const PolicyConfig& cfg) {
  ParamLayout L;
  L.D = cfg.input_dim();
  L.H = cfg.hidden;
  std::size_t off = 0;
  auto take = [&](std::size_t n) {
    const std::size_t at = off;
    off += n;
    return at;
  };
  L.W1 = take(L.H * L.D);
  L.b1 = take(L.H);
  L.Wc = take(L.H * (L.H + 2));
  L.bc = take(L.H);
  L.wq = take(L.H);
  L.bq = take(1);
  L.critic_size = off;
  L.Wa = take(L.H * L.H);
  L.ba = take(L.H);
  L.Wm = take(2 * L.H);
  L.bm = take(2);
  L.actor_size = off - L.critic_size;
  L.total = off;
  return L;
}

template <typename T>
Mat<T> pool_frames(const ImageBatch& frames, const PolicyConfig& cfg) {
  const Shape& s = frames.shape();
  if (s.c != cfg.channels || s.h != cfg.frame_size || s.w != cfg.frame_size) {
    throw Error(ErrorCode::InvalidShape, "frames do not match the policy input shape");
  }
  const std::uint32_t p = cfg.pooled();
  const std::size_t plane = std::size_t{s.h} * s.w;
  Mat<T> x(static_cast<Eigen::Index>(cfg.input_dim()), s.n);
  // Sums stay exact in double for both dtypes; one division per cell.
  const double u8_scale = 1.0 / (255.0 * kPoolFactor * kPoolFactor);
  const double f32_scale = 1.0 / (kPoolFactor * kPoolFactor);
  const bool is_u8 = frames.dtype() == DType::U8;
  const std::span<const std::uint8_t> bytes = is_u8 ? frames.u8() : std::span<const std::uint8_t>{};
  const std::span<const float> reals = is_u8 ? std::span<const float>{} : frames.f32();
  for (std::uint32_t n = 0; n < s.n; ++n) {
    for (std::uint32_t c = 0; c < s.c; ++c) {
      const std::size_t base = (std::size_t{n} * s.c + c) * plane;
      for (std::uint32_t py = 0; py < p; ++py) {
        for (std::uint32_t px = 0; px < p; ++px) {
          double acc = 0.0;
          for (std::uint32_t dy = 0; dy < kPoolFactor; ++dy) {
            const std::size_t row = base + std::size_t{py * kPoolFactor + dy} * s.w + px * kPoolFactor;
            for (std::uint32_t dx = 0; dx < kPoolFactor; ++dx) {
              acc += is_u8 ? static_cast<double>(bytes[row + dx]) : static_cast<double>(reals[row + dx]);
            }
          }
          x((c * p + py) * p + px, n) = static_cast<T>(acc * (is_u8 ? u8_scale : f32_scale));
        }
      }
    }
  }
  return x;
}

template <typename T>
TinyNet<T>::TinyNet(PolicyConfig cfg) : cfg_(cfg) {
  validate(cfg_);
  layout_ = ParamLayout::make(cfg_);
  theta_.assign(layout_.total, T(0));
}

template <typename T>
void TinyNet<T>::init(RngState state) {
  Rng rng(state);
  const ParamLayout& L = layout_;
  std::fill(theta_.begin(), theta_.end(), T(0));
  auto fill = [&](std::size_t off, std::size_t n, double bound) {
    for (std::size_t i = 0; i < n; ++i) theta_[off + i] = static_cast<T>(rng.uniform(-bound, bound));
  };
  const std::size_t P = cfg_.pooled();
  for (std::size_t h = 0; h < L.H; ++h) {
    for (std::size_t c = 0; c < cfg_.channels; ++c) {
      const double fx = rng.uniform(-kEncoderWaveMaxCycles, kEncoderWaveMaxCycles);
      const double fy = rng.uniform(-kEncoderWaveMaxCycles, kEncoderWaveMaxCycles);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (std::size_t y = 0; y < P; ++y) {
        for (std::size_t x = 0; x < P; ++x) {
          const double arg = 2.0 * std::numbers::pi * (fx * static_cast<double>(x) + fy * static_cast<double>(y)) /
                             static_cast<double>(P);
          // W1 is column-major H x D with input index (c, y, x).
          theta_[L.W1 + ((c * P + y) * P + x) * L.H + h] = static_cast<T>(kEncoderWaveAmplitude * std::cos(arg + phase));
        }
      }
    }
  }
  fill(L.Wc, L.H * (L.H + 2), 1.0 / std::sqrt(static_cast<double>(L.H + 2)));
  fill(L.wq, L.H, 3e-3);
  fill(L.Wa, L.H * L.H, 1.0 / std::sqrt(static_cast<double>(L.H)));
  fill(L.Wm, 2 * L.H, 3e-3);
}

template <typename T>
template <typename U>
TinyNet<U> TinyNet<T>::cast() const {
  TinyNet<U> out(cfg_);
  for (std::size_t i = 0; i < theta_.size(); ++i) out.theta_[i] = static_cast<U>(theta_[i]);
  return out;
}

template <typename T>
Mat<T> TinyNet<T>::activate(const Mat<T>& z) const {
  if (cfg_.activation == Activation::Identity) return z;
  return z.array().tanh().matrix();
}

template <typename T>
Mat<T> TinyNet<T>::activation_grad(const Mat<T>& h) const {
  if (cfg_.activation == Activation::Identity) return Mat<T>::Ones(h.rows(), h.cols());
  return (T(1) - h.array().square()).matrix();
}

template <typename T>
typename TinyNet<T>::Trunk TinyNet<T>::trunk(Mat<T> x) const {
  const ParamLayout& L = layout_;
  if (static_cast<std::size_t>(x.rows()) != L.D) throw Error(ErrorCode::InvalidShape, "input dimension mismatch");
  Trunk t;
  t.xs = x.sparseView();
  t.z1.noalias() = mat(L.W1, L.H, L.D) * t.xs;
  t.z1.colwise() += vec(L.b1, L.H);
  t.h1 = activate(t.z1);
  t.x = std::move(x);
  return t;
}

template <typename T>
typename TinyNet<T>::CriticPass TinyNet<T>::critic(const Mat<T>& h1, const Mat<T>& a) const {
  const ParamLayout& L = layout_;
  CriticPass c;
  c.u.resize(static_cast<Eigen::Index>(L.H + 2), h1.cols());
  c.u.topRows(static_cast<Eigen::Index>(L.H)) = h1;
  c.u.bottomRows(2) = a;
  c.z2.noalias() = mat(L.Wc, L.H, L.H + 2) * c.u;
  c.z2.colwise() += vec(L.bc, L.H);
  c.h2 = activate(c.z2);
  c.q.noalias() = vec(L.wq, L.H).transpose() * c.h2;
  c.q.array() += theta_[L.bq];
  return c;
}

template <typename T>
typename TinyNet<T>::ActorPass TinyNet<T>::actor(const Mat<T>& h1) const {
  const ParamLayout& L = layout_;
  ActorPass p;
  p.z2.noalias() = mat(L.Wa, L.H, L.H) * h1;
  p.z2.colwise() += vec(L.ba, L.H);
  p.h2 = activate(p.z2);
  p.m.noalias() = mat(L.Wm, 2, L.H) * p.h2;
  p.m.colwise() += vec(L.bm, 2);
  p.a = p.m.array().tanh().matrix();
  return p;
}

template <typename T>
T TinyNet<T>::critic_loss(const Trunk& tr, const Mat<T>& a, const Eigen::Matrix<T, 1, Eigen::Dynamic>& y,
                          std::vector<T>* grad) const {
  const ParamLayout& L = layout_;
  const CriticPass c = critic(tr.h1, a);
  const auto B = static_cast<T>(a.cols());
  const Eigen::Matrix<T, 1, Eigen::Dynamic> err = c.q - y;
  const T loss = err.squaredNorm() / B;
  if (!grad) return loss;

  grad->assign(L.critic_size, T(0));
  auto G = [&](std::size_t off, std::size_t r, std::size_t cols) {
    return Eigen::Map<Mat<T>>(grad->data() + off, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols));
  };
  const Eigen::Matrix<T, 1, Eigen::Dynamic> dq = (T(2) / B) * err;
  G(L.wq, L.H, 1).noalias() = c.h2 * dq.transpose();
  (*grad)[L.bq] = dq.sum();
  const Mat<T> dz2 = ((vec(L.wq, L.H) * dq).array() * activation_grad(c.h2).array()).matrix();
  G(L.Wc, L.H, L.H + 2).noalias() = dz2 * c.u.transpose();
  G(L.bc, L.H, 1) = dz2.rowwise().sum();
  const Mat<T> dh1 = mat(L.Wc, L.H, L.H + 2).leftCols(static_cast<Eigen::Index>(L.H)).transpose() * dz2;
  const Mat<T> dz1 = (dh1.array() * activation_grad(tr.h1).array()).matrix();
  G(L.W1, L.H, L.D).noalias() = dz1 * tr.xs.transpose();
  G(L.b1, L.H, 1) = dz1.rowwise().sum();
  return loss;
}

template <typename T>
T TinyNet<T>::actor_loss(const Trunk& tr, std::vector<T>* grad) const {
  const ParamLayout& L = layout_;
  const ActorPass p = actor(tr.h1);
  const CriticPass c = critic(tr.h1, p.a);
  const auto B = static_cast<T>(tr.h1.cols());
  const T loss = -c.q.sum() / B;
  if (!grad) return loss;

  grad->assign(L.actor_size, T(0));
  const std::size_t base = L.critic_size;
  auto G = [&](std::size_t off, std::size_t r, std::size_t cols) {
    return Eigen::Map<Mat<T>>(grad->data() + (off - base), static_cast<Eigen::Index>(r),
                              static_cast<Eigen::Index>(cols));
  };
  const T dq = T(-1) / B;
  const Mat<T> dz2c = ((vec(L.wq, L.H) * dq).replicate(1, c.h2.cols()).array() * activation_grad(c.h2).array()).matrix();
  const Mat<T> da = mat(L.Wc, L.H, L.H + 2).rightCols(2).transpose() * dz2c;
  const Mat<T> dm = (da.array() * (T(1) - p.a.array().square())).matrix();
  G(L.Wm, 2, L.H).noalias() = dm * p.h2.transpose();
  G(L.bm, 2, 1) = dm.rowwise().sum();
  const Mat<T> dz2a = ((mat(L.Wm, 2, L.H).transpose() * dm).array() * activation_grad(p.h2).array()).matrix();
  G(L.Wa, L.H, L.H).noalias() = dz2a * tr.h1.transpose();
  G(L.ba, L.H, 1) = dz2a.rowwise().sum();
  return loss;
}

template <typename T>
Mat<T> TinyNet<T>::act(const ImageBatch& frames) const {
  return actor(trunk(pool_frames<T>(frames, cfg_)).h1).a;
}

template <typename T>
Action TinyNet<T>::act_one(const ImageBatch& frame) const {
  const Mat<T> a = act(frame);
  return {static_cast<double>(a(0, 0)), static_cast<double>(a(1, 0))};
}

template class TinyNet<float>;
template class TinyNet<double>;
template TinyNet<double> TinyNet<float>::cast<double>() const;
template TinyNet<float> TinyNet<double>::cast<float>() const;
template Mat<float> pool_frames<float>(const ImageBatch&, const PolicyConfig&);
template Mat<double> pool_frames<double>(const ImageBatch&, const PolicyConfig&);

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::span<float> params, std::span<const float> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw Error(ErrorCode::InvalidValue, "Adam parameter count mismatch");
  }
  ++t_;
  const double step = lr_ / (1.0 - std::pow(beta1_, static_cast<double>(t_)));
  const double inv_sqrt_c2 = 1.0 / std::sqrt(1.0 - std::pow(beta2_, static_cast<double>(t_)));
  double* __restrict m = m_.data();
  double* __restrict v = v_.data();
  float* __restrict p = params.data();
  const float* __restrict g = grad.data();
  const double b1 = beta1_, b2 = beta2_, eps = eps_;
  const std::size_t n = params.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = g[i];
    const double mi = b1 * m[i] + (1.0 - b1) * gi;
    const double vi = b2 * v[i] + (1.0 - b2) * gi * gi;
    m[i] = mi;
    v[i] = vi;
    p[i] = static_cast<float>(static_cast<double>(p[i]) - step * mi / (std::sqrt(vi) * inv_sqrt_c2 + eps));
  }
}

void soft_update(std::span<float> target, std::span<const float> online, double tau) {
  if (target.size() != online.size()) throw Error(ErrorCode::InvalidValue, "soft_update size mismatch");
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i] = static_cast<float>((1.0 - tau) * target[i] + tau * online[i]);
  }
}

namespace {

constexpr char kPolicyMagic[4] = {'A', 'R', 'L', 'P'};
constexpr std::uint32_t kPolicyVersion = 1;
constexpr std::size_t kPolicyHeader = 32;

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint64_t get_le(const std::vector<std::uint8_t>& b, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{b[at + i]} << (8 * i);
  return v;
}

}  // namespace

void save_policy(const TinyPolicy& policy, const std::filesystem::path& path) {
  const PolicyConfig& cfg = policy.config();
  std::vector<std::uint8_t> b(kPolicyMagic, kPolicyMagic + 4);
  put_u32(b, kPolicyVersion);
  put_u32(b, cfg.frame_size);
  put_u32(b, cfg.channels);
  put_u32(b, cfg.hidden);
  b.push_back(static_cast<std::uint8_t>(cfg.activation));
  b.insert(b.end(), 3, 0);
  put_u64(b, policy.params().size());
  for (float f : policy.params()) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    put_u32(b, u);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

TinyPolicy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open policy " + path.string());
  const std::vector<std::uint8_t> b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (b.size() < kPolicyHeader || std::memcmp(b.data(), kPolicyMagic, 4) != 0) {
    throw Error(ErrorCode::FormatError, path.string() + " is not an ARLP policy file");
  }
  if (get_le(b, 4, 4) != kPolicyVersion) throw Error(ErrorCode::FormatError, "unsupported ARLP version");
  PolicyConfig cfg;
  cfg.frame_size = static_cast<std::uint32_t>(get_le(b, 8, 4));
  cfg.channels = static_cast<std::uint32_t>(get_le(b, 12, 4));
  cfg.hidden = static_cast<std::uint32_t>(get_le(b, 16, 4));
  const std::uint8_t act = b[20];
  if (act > 1) throw Error(ErrorCode::FormatError, "unknown ARLP activation");
  if (b[21] || b[22] || b[23]) throw Error(ErrorCode::FormatError, "nonzero ARLP reserved bytes");
  cfg.activation = static_cast<Activation>(act);
  try {
    validate(cfg);
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
  TinyPolicy policy(cfg);
  const std::uint64_t count = get_le(b, 24, 8);
  if (count != policy.params().size() || b.size() != kPolicyHeader + 4 * count) {
    throw Error(ErrorCode::FormatError, "ARLP parameter count does not match its header");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto u = static_cast<std::uint32_t>(get_le(b, kPolicyHeader + 4 * i, 4));
    std::memcpy(&policy.params()[i], &u, 4);
  }
  return policy;
}

}  // namespace augrl::toyrl
