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

namespace augrl {

/// Philox4x32-10 block function (Salmon, Moraes, Dror, Shaw; SC'11), as in
/// the Random123 reference implementation.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer, used only to derive child stream ids.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Identifies one independent random stream: the 64-bit seed is the Philox
/// key, the 64-bit stream id occupies the upper half of the counter.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Child stream for sub-consumer `tag` (an image index, an op index, ...).
  /// child.stream = splitmix64(stream ^ (0x9E3779B97F4A7C15 * (tag + 1))).
  RngState derive(std::uint64_t tag) const noexcept;

  friend bool operator==(const RngState&, const RngState&) = default;
};

/// Sequential generator over one (seed, stream). Draws consume 32-bit words
/// from consecutive Philox blocks; block b uses counter {b_lo, b_hi,
/// stream_lo, stream_hi}. All distributions below are pinned here rather than
/// delegated to <random>, whose distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(RngState state) noexcept : state_(state) {}
  Rng(std::uint64_t seed, std::uint64_t stream) noexcept : state_{seed, stream} {}

  const RngState& state() const noexcept { return state_; }

  std::uint32_t next_u32() noexcept;
  /// Low word first.
  std::uint64_t next_u64() noexcept;
  /// (next_u64() >> 11) * 2^-53, in [0, 1).
  double uniform01() noexcept;
  /// Uniform on [lo, hi] by rejection: draw x until x >= (2^64 - r) mod r,
  /// return lo + x mod r with r = hi - lo + 1. lo == hi consumes nothing.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;
  /// Index in [0, n).
  std::size_t index(std::size_t n) noexcept { return static_cast<std::size_t>(uniform_int(0, n - 1)); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }
  /// Box-Muller, cosine branch only (one normal per two uniforms).
  double normal() noexcept;
  /// Marsaglia-Tsang; shape < 1 handled by the u^(1/shape) boost.
  double gamma(double shape) noexcept;

 private:
  RngState state_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace augrl
