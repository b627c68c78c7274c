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

#include <cmath>

#include "augrl/resample.hpp"
#include "augrl/tensor.hpp"
#include "doctest.h"
#include "oracles/bilinear_oracle.hpp"
#include "support.hpp"

using namespace augrl;

namespace {

oracle::Plane to_plane(const Image& img) {
  oracle::Plane p{img.c, img.h, img.w, {}};
  p.v.assign(img.data.begin(), img.data.end());
  return p;
}

Image from_bytes(std::uint32_t h, std::uint32_t w, std::initializer_list<int> px) {
  Image img(1, h, w);
  std::size_t i = 0;
  for (int v : px) img.data[i++] = u8_to_f32(static_cast<std::uint8_t>(v));
  return img;
}

}  // namespace

TEST_CASE("same-size resize is an exact copy") {
  const Image img = testutil::random_image(3, 5, 7, 1);
  CHECK(bilinear_resize(img.view(), 5, 7).data == img.data);
}

TEST_CASE("1x1 input gives a constant image") {
  Image one(3, 1, 1);
  one.data = {0.1f, 0.5f, 0.9f};
  const Image out = bilinear_resize(one.view(), 4, 6);
  for (std::uint32_t c = 0; c < 3; ++c)
    for (std::uint32_t y = 0; y < 4; ++y)
      for (std::uint32_t x = 0; x < 6; ++x) CHECK(out.at(c, y, x) == one.data[c]);
}

TEST_CASE("2x2 [[0,0],[255,255]] upsampled to 4x4") {
  // Rows sample s = -0.25 (clamped to 0), 0.25, 0.75, 1.25 (clamped to 1),
  // so rows are 0, 63.75, 191.25, 255 before rounding.
  const Image img = from_bytes(2, 2, {0, 0, 255, 255});
  const Image out = bilinear_resize(img.view(), 4, 4);
  const int expect[4] = {0, 64, 191, 255};
  for (std::uint32_t y = 0; y < 4; ++y)
    for (std::uint32_t x = 0; x < 4; ++x) CHECK(f32_to_u8(out.at(0, y, x)) == expect[y]);
  const auto ref = oracle::bilinear(to_plane(img), 4, 4);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::fabs(out.data[i] - ref.v[i]) < 1e-6);
}

TEST_CASE("downsampling 4x4 -> 2x2 averages 2x2 blocks") {
  // scale 2: s = 0.5 and 2.5, the midpoint of each block.
  const Image img = from_bytes(4, 4, {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150});
  const Image out = bilinear_resize(img.view(), 2, 2);
  CHECK(f32_to_u8(out.at(0, 0, 0)) == 25);
  CHECK(f32_to_u8(out.at(0, 0, 1)) == 45);
  CHECK(f32_to_u8(out.at(0, 1, 0)) == 105);
  CHECK(f32_to_u8(out.at(0, 1, 1)) == 125);
}

TEST_CASE("resampler agrees with the brute-force oracle on random shapes") {
  Rng rng(77, 0);
  for (int t = 0; t < 50; ++t) {
    const auto ih = static_cast<std::uint32_t>(rng.uniform_int(1, 12));
    const auto iw = static_cast<std::uint32_t>(rng.uniform_int(1, 12));
    const auto oh = static_cast<std::uint32_t>(rng.uniform_int(1, 12));
    const auto ow = static_cast<std::uint32_t>(rng.uniform_int(1, 12));
    const Image img = testutil::random_image(1, ih, iw, 1000 + t);
    const Image out = bilinear_resize(img.view(), oh, ow);
    const auto ref = oracle::bilinear(to_plane(img), oh, ow);
    for (std::size_t i = 0; i < out.data.size(); ++i) REQUIRE(std::fabs(out.data[i] - ref.v[i]) < 1e-6);
  }
}

TEST_CASE("zero-padded sampler reads zero outside and exact values at centers") {
  const Image img = from_bytes(2, 2, {10, 20, 30, 40});
  CHECK(sample_bilinear_zero(img.view(), 0, 0.0, 1.0) == doctest::Approx(20 / 255.0).epsilon(1e-7));
  CHECK(sample_bilinear_zero(img.view(), 0, -1.0, 0.0) == 0.0);
  CHECK(sample_bilinear_zero(img.view(), 0, 5.0, 5.0) == 0.0);
  // half a pixel outside: half weight on the edge pixel
  CHECK(sample_bilinear_zero(img.view(), 0, -0.5, 0.0) == doctest::Approx(0.5 * 10 / 255.0).epsilon(1e-7));
}
