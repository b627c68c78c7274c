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

#include "augrl/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "augrl/error.hpp"

namespace augrl {
std::vector<ResizeTap> resize_taps(std::uint32_t in, std::uint32_t out) {
  std::vector<ResizeTap> taps(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  const double hi = static_cast<double>(in - 1);
  for (std::uint32_t i = 0; i < out; ++i) {
    const double s = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, hi);
    const auto i0 = static_cast<std::uint32_t>(std::floor(s));
    taps[i] = {i0, std::min(i0 + 1, in - 1), s - static_cast<double>(i0)};
  }
  return taps;
}

Image bilinear_resize(ImageView image, std::uint32_t out_h, std::uint32_t out_w) {
  if (out_h == 0 || out_w == 0) throw Error(ErrorCode::InvalidShape, "resize target must be at least 1x1");
  if (out_h == image.h && out_w == image.w) return Image(image);

  const auto ty = resize_taps(image.h, out_h);
  const auto tx = resize_taps(image.w, out_w);
  Image out(image.c, out_h, out_w);
  // Horizontal pass once per source row, then the vertical blend; the same
  // products as evaluating both taps per output pixel, so the bits agree.
  std::vector<double> rows(std::size_t{image.h} * out_w);
  for (std::uint32_t ch = 0; ch < image.c; ++ch) {
    for (std::uint32_t r = 0; r < image.h; ++r) {
      const float* src = image.data.data() + (std::size_t{ch} * image.h + r) * image.w;
      double* hr = rows.data() + std::size_t{r} * out_w;
      for (std::uint32_t x = 0; x < out_w; ++x) {
        const ResizeTap& b = tx[x];
        hr[x] = (1.0 - b.frac) * src[b.i0] + b.frac * src[b.i1];
      }
    }
    for (std::uint32_t y = 0; y < out_h; ++y) {
      const ResizeTap& a = ty[y];
      const double* top = rows.data() + std::size_t{a.i0} * out_w;
      const double* bot = rows.data() + std::size_t{a.i1} * out_w;
      float* dst = out.data.data() + (std::size_t{ch} * out_h + y) * out_w;
      for (std::uint32_t x = 0; x < out_w; ++x) {
        dst[x] = static_cast<float>((1.0 - a.frac) * top[x] + a.frac * bot[x]);
      }
    }
  }
  return out;
}

double sample_bilinear_zero(ImageView image, std::uint32_t ch, double y, double x) noexcept {
  const double fy0 = std::floor(y);
  const double fx0 = std::floor(x);
  // Entirely outside, including the one-pixel fringe where a tap could land.
  if (fy0 < -1.0 || fx0 < -1.0 || fy0 > static_cast<double>(image.h) - 1.0 ||
      fx0 > static_cast<double>(image.w) - 1.0) {
    return 0.0;
  }
  const auto y0 = static_cast<long>(fy0);
  const auto x0 = static_cast<long>(fx0);
  const double wy = y - fy0;
  const double wx = x - fx0;
  auto tap = [&](long yy, long xx) -> double {
    if (yy < 0 || xx < 0 || yy >= static_cast<long>(image.h) || xx >= static_cast<long>(image.w)) return 0.0;
    return image.at(ch, static_cast<std::uint32_t>(yy), static_cast<std::uint32_t>(xx));
  };
  const double top = (1.0 - wx) * tap(y0, x0) + wx * tap(y0, x0 + 1);
  const double bot = (1.0 - wx) * tap(y0 + 1, x0) + wx * tap(y0 + 1, x0 + 1);
  return (1.0 - wy) * top + wy * bot;
}

}  // namespace augrl
