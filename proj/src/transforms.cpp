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

#include "augrl/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "augrl/error.hpp"
#include "augrl/resample.hpp"

namespace augrl {

std::string_view op_name(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::PadCrop: return "pad_crop";
    case OpKind::RandPadResize: return "rand_pad_resize";
    case OpKind::PadResizeHD: return "pad_resize_hd";
    case OpKind::CropShiftHD: return "crop_shift_hd";
    case OpKind::TranslateHD: return "translate_hd";
    case OpKind::Rotate: return "rotate";
    case OpKind::Cutout: return "cutout";
  }
  return "unknown";
}

std::optional<OpKind> parse_op_name(std::string_view name) noexcept {
  for (OpKind k : kAllOpKinds) {
    if (op_name(k) == name) return k;
  }
  return std::nullopt;
}

bool has_param_sets(OpKind k) noexcept {
  return k == OpKind::PadResizeHD || k == OpKind::CropShiftHD || k == OpKind::TranslateHD;
}

PaddingMode default_padding(OpKind kind) noexcept {
  return kind == OpKind::PadCrop ? PaddingMode::Replicate : PaddingMode::Zero;
}

Offset translation_offset(Direction dir, std::uint32_t strength) noexcept {
  const int s = static_cast<int>(strength);
  const int horiz = (s + 1) / 2;
  const int vert = s / 2;
  switch (dir) {
    case Direction::Up: return {-s, 0};
    case Direction::Down: return {s, 0};
    case Direction::Left: return {0, -s};
    case Direction::Right: return {0, s};
    case Direction::UpLeft: return {-vert, -horiz};
    case Direction::UpRight: return {-vert, horiz};
    case Direction::DownLeft: return {vert, -horiz};
    case Direction::DownRight: return {vert, horiz};
  }
  return {};
}

namespace {

TransformSpec make_spec(OpKind kind, std::uint32_t lo, std::uint32_t hi, std::optional<std::uint32_t> d) {
  TransformSpec s;
  s.kind = kind;
  s.strength_min = lo;
  s.strength_max = hi;
  s.diversity = d;
  s.padding = default_padding(kind);
  return s;
}

}  // namespace

TransformSpec TransformSpec::pad_crop(std::uint32_t pad) { return make_spec(OpKind::PadCrop, pad, pad, {}); }
TransformSpec TransformSpec::rand_pad_resize(std::uint32_t lo, std::uint32_t hi) {
  return make_spec(OpKind::RandPadResize, lo, hi, {});
}
TransformSpec TransformSpec::pad_resize_hd(std::uint32_t s, std::optional<std::uint32_t> d) {
  return make_spec(OpKind::PadResizeHD, s, s, d);
}
TransformSpec TransformSpec::crop_shift_hd(std::uint32_t s, std::optional<std::uint32_t> d) {
  return make_spec(OpKind::CropShiftHD, s, s, d);
}
TransformSpec TransformSpec::translate_hd(std::uint32_t s, std::optional<std::uint32_t> d) {
  return make_spec(OpKind::TranslateHD, s, s, d);
}
TransformSpec TransformSpec::rotate(std::uint32_t max_degrees) {
  return make_spec(OpKind::Rotate, 0, max_degrees, {});
}
TransformSpec TransformSpec::cutout(std::uint32_t side) { return make_spec(OpKind::Cutout, side, side, {}); }

TransformSpec TransformSpec::with_strength(std::uint32_t s) const {
  TransformSpec out = *this;
  out.strength_min = kind == OpKind::Rotate ? 0 : s;
  out.strength_max = s;
  out.param_sets.clear();
  return out;
}

void validate(const TransformSpec& spec) {
  if (spec.strength_min > spec.strength_max) {
    throw Error(ErrorCode::InvalidStrength, std::string(op_name(spec.kind)) + ": strength_min > strength_max");
  }
  if (spec.diversity && *spec.diversity == 0) {
    throw Error(ErrorCode::InvalidValue, "spatial diversity must be positive or unlimited");
  }
  if (spec.kind == OpKind::TranslateHD && spec.diversity && *spec.diversity > 8) {
    throw Error(ErrorCode::DiversityTooLarge, "translate_hd allows at most 8 directions");
  }
  if (spec.kind == OpKind::Rotate && spec.strength_max > 180) {
    throw Error(ErrorCode::InvalidStrength, "rotate: max_degrees must be <= 180");
  }
}

std::uint64_t composition_count(std::uint32_t s) noexcept {
  const std::uint64_t n = s;
  return (n + 3) * (n + 2) * (n + 1) / 6;
}

PadQuadruple unrank_composition(std::uint32_t s, std::uint64_t rank) noexcept {
  PadQuadruple q;
  std::uint32_t rest = s;
  for (q.top = 0; q.top < s; ++q.top) {
    const std::uint64_t r = rest;
    const std::uint64_t block = (r + 2) * (r + 1) / 2;  // compositions of rest into 3 parts
    if (rank < block) break;
    rank -= block;
    --rest;
  }
  for (q.bottom = 0; q.bottom < rest; ++q.bottom) {
    const std::uint64_t block = static_cast<std::uint64_t>(rest - q.bottom) + 1;
    if (rank < block) break;
    rank -= block;
  }
  const std::uint32_t lr = rest - q.bottom;
  q.left = static_cast<std::uint32_t>(rank);
  q.right = lr - q.left;
  return q;
}

namespace {

std::uint32_t draw_strength(const TransformSpec& spec, Rng& rng) {
  if (spec.strength_min == spec.strength_max) return spec.strength_min;
  return static_cast<std::uint32_t>(rng.uniform_int(spec.strength_min, spec.strength_max));
}

PadQuadruple draw_quadruple(std::uint32_t s, Rng& rng) {
  return unrank_composition(s, rng.uniform_int(0, composition_count(s) - 1));
}

CropShiftParams draw_crop_shift(std::uint32_t s, std::uint32_t h, std::uint32_t w, Rng& rng) {
  // Rows removed v, columns removed u = s - v, split uniformly over the
  // feasible range, then each split and the placement uniformly.
  const std::uint32_t v_lo = s > w ? s - w : 0;
  const std::uint32_t v_hi = std::min(s, h);
  const auto v = static_cast<std::uint32_t>(rng.uniform_int(v_lo, v_hi));
  const std::uint32_t u = s - v;
  CropShiftParams p;
  p.top = static_cast<std::uint32_t>(rng.uniform_int(0, v));
  p.bottom = v - p.top;
  p.left = static_cast<std::uint32_t>(rng.uniform_int(0, u));
  p.right = u - p.left;
  p.dst_y = static_cast<std::uint32_t>(rng.uniform_int(0, v));
  p.dst_x = static_cast<std::uint32_t>(rng.uniform_int(0, u));
  return p;
}

void check_fits(const TransformSpec& spec, std::uint32_t h, std::uint32_t w) {
  const std::uint32_t s = spec.strength_max;
  const std::uint32_t side = std::min(h, w);
  const std::string name(op_name(spec.kind));
  switch (spec.kind) {
    case OpKind::PadCrop:
    case OpKind::TranslateHD:
      if (s >= side) {
        throw Error(ErrorCode::InvalidStrength,
                    name + ": strength " + std::to_string(s) + " must be < min(h,w) = " + std::to_string(side));
      }
      break;
    case OpKind::CropShiftHD:
      if (s >= h + w) {
        throw Error(ErrorCode::InvalidStrength, name + ": strength must be < h + w");
      }
      break;
    case OpKind::Cutout:
      if (s > side) throw Error(ErrorCode::InvalidStrength, name + ": side must be <= min(h,w)");
      break;
    default: break;
  }
}

const std::vector<ParamSet>& require_param_sets(const TransformSpec& spec) {
  if (spec.param_sets.empty()) {
    throw Error(ErrorCode::NotPresampled, std::string(op_name(spec.kind)) + " with finite diversity needs presampling");
  }
  if (spec.param_sets.size() != *spec.diversity) {
    throw Error(ErrorCode::InvalidValue, "param_sets size does not match diversity");
  }
  return spec.param_sets;
}

template <typename T>
const T& param_as(const ParamSet& p, OpKind kind) {
  if (const T* v = std::get_if<T>(&p)) return *v;
  throw Error(ErrorCode::InvalidValue, std::string(op_name(kind)) + ": parameter set of the wrong type");
}

}  // namespace

std::uint64_t count_param_sets(const TransformSpec& spec, FrameSize frame) {
  const std::uint32_t s = spec.strength_max;
  switch (spec.kind) {
    case OpKind::PadResizeHD: return composition_count(s);
    case OpKind::TranslateHD: return kAllDirections.size();
    case OpKind::CropShiftHD: {
      if (s >= frame.h + frame.w) throw Error(ErrorCode::InvalidStrength, "crop_shift_hd: strength must be < h + w");
      std::uint64_t total = 0;
      const std::uint32_t v_lo = s > frame.w ? s - frame.w : 0;
      for (std::uint32_t v = v_lo; v <= std::min(s, frame.h); ++v) {
        const std::uint64_t a = v + 1, b = static_cast<std::uint64_t>(s - v) + 1;
        total += a * a * b * b;
      }
      return total;
    }
    default:
      throw Error(ErrorCode::NotApplicable, std::string(op_name(spec.kind)) + " has no parameter sets");
  }
}

TransformSpec presample_param_sets(TransformSpec spec, RngState state, FrameSize frame) {
  validate(spec);
  if (!has_param_sets(spec.kind)) {
    throw Error(ErrorCode::NotApplicable, std::string(op_name(spec.kind)) + " has no parameter sets");
  }
  if (!spec.diversity) throw Error(ErrorCode::NotApplicable, "presampling needs a finite diversity");
  if (spec.strength_min != spec.strength_max) {
    throw Error(ErrorCode::InvalidStrength, "presampling needs a fixed strength (min == max)");
  }
  const std::uint32_t d = *spec.diversity;
  const std::uint64_t available = count_param_sets(spec, frame);
  if (d > available) {
    throw Error(ErrorCode::DiversityTooLarge, "diversity " + std::to_string(d) + " exceeds the " +
                                                  std::to_string(available) + " distinct parameter sets");
  }
  Rng rng(state);
  const std::uint32_t s = spec.strength_max;
  spec.param_sets.clear();
  spec.param_sets.reserve(d);
  while (spec.param_sets.size() < d) {
    ParamSet candidate;
    switch (spec.kind) {
      case OpKind::PadResizeHD: candidate = draw_quadruple(s, rng); break;
      case OpKind::CropShiftHD: candidate = draw_crop_shift(s, frame.h, frame.w, rng); break;
      default: candidate = kAllDirections[rng.index(kAllDirections.size())]; break;
    }
    if (std::find(spec.param_sets.begin(), spec.param_sets.end(), candidate) == spec.param_sets.end()) {
      spec.param_sets.push_back(candidate);
    }
  }
  return spec;
}

namespace {

// Writes one row of a padded plane (source rows h, width w) into `dst` of
// width `ow`. Output column x reads source column first_x + x - left;
// replicate clamps row and column, zero leaves `dst` untouched outside the
// plane, so `dst` must start zeroed. Pure copies: exact for any element type.
template <typename T>
void padded_row(const T* plane, std::uint32_t h, std::uint32_t w, long sy, std::uint32_t left, long first_x,
                std::uint32_t ow, PaddingMode mode, T* dst) {
  const bool row_inside = sy >= 0 && sy < static_cast<long>(h);
  if (!row_inside && mode == PaddingMode::Zero) return;
  const auto cy = static_cast<std::uint32_t>(std::clamp<long>(sy, 0, h - 1));
  const T* src = plane + std::size_t{cy} * w;
  const long wl = w;
  for (std::uint32_t x = 0; x < ow;) {
    const long sx = first_x + static_cast<long>(x) - static_cast<long>(left);
    if (sx < 0 || sx >= wl) {
      if (mode == PaddingMode::Replicate) dst[x] = src[sx < 0 ? 0 : wl - 1];
      ++x;
      continue;
    }
    const auto run = static_cast<std::uint32_t>(std::min<long>(wl - sx, ow - x));
    std::copy_n(src + sx, run, dst + x);
    x += run;
  }
}

// h x w window at (off_y, off_x) of the plane padded by `pad` on every side.
template <typename T>
void pad_crop_planes(const T* src, std::uint32_t c, std::uint32_t h, std::uint32_t w, std::uint32_t pad,
                     std::uint32_t off_y, std::uint32_t off_x, PaddingMode mode, T* dst) {
  const std::size_t plane = std::size_t{h} * w;
  for (std::uint32_t ch = 0; ch < c; ++ch) {
    for (std::uint32_t y = 0; y < h; ++y) {
      const long sy = static_cast<long>(y + off_y) - static_cast<long>(pad);
      padded_row(src + ch * plane, h, w, sy, pad, off_x, w, mode, dst + ch * plane + std::size_t{y} * w);
    }
  }
}

// Bilinear resize of the virtually padded planes back to h x w, reading the
// source directly. Each padded pixel is load(source) or 0.0f, and the blends
// match bilinear_resize(pad_image(...)) operation for operation.
template <typename T, typename Load, typename Store>
void pad_resize_planes(const T* src, std::uint32_t c, std::uint32_t h, std::uint32_t w, const PadQuadruple& pad,
                       PaddingMode mode, Load load, Store store) {
  const std::uint32_t ph = h + pad.top + pad.bottom;
  const std::uint32_t pw = w + pad.left + pad.right;
  const auto ty = resize_taps(ph, h);
  const auto tx = resize_taps(pw, w);
  // Source column for each padded column; -1 reads as zero.
  auto source_col = [&](std::uint32_t i) -> long {
    const long sx = static_cast<long>(i) - static_cast<long>(pad.left);
    if (sx >= 0 && sx < static_cast<long>(w)) return sx;
    if (mode == PaddingMode::Zero) return -1;
    return std::clamp<long>(sx, 0, w - 1);
  };
  std::vector<long> c0(w), c1(w);
  for (std::uint32_t x = 0; x < w; ++x) {
    c0[x] = source_col(tx[x].i0);
    c1[x] = source_col(tx[x].i1);
  }
  std::vector<double> rows(std::size_t{ph} * w);
  // All-zero u8 rows blend to +0.0 exactly and are skipped. Float rows are
  // always blended, since a -0.0 input must keep its sign.
  std::vector<char> zero(ph);
  const std::size_t plane = std::size_t{h} * w;
  for (std::uint32_t ch = 0; ch < c; ++ch) {
    for (std::uint32_t r = 0; r < ph; ++r) {
      double* hr = rows.data() + std::size_t{r} * w;
      const long sy = static_cast<long>(r) - static_cast<long>(pad.top);
      zero[r] = (sy < 0 || sy >= static_cast<long>(h)) && mode == PaddingMode::Zero;
      const T* row = src + ch * plane + static_cast<std::size_t>(std::clamp<long>(sy, 0, h - 1)) * w;
      if constexpr (std::is_same_v<T, std::uint8_t>) {
        zero[r] = zero[r] || std::all_of(row, row + w, [](std::uint8_t v) { return v == 0; });
      }
      if (zero[r]) {
        std::fill_n(hr, w, 0.0);
        continue;
      }
      for (std::uint32_t x = 0; x < w; ++x) {
        const float v0 = c0[x] < 0 ? 0.0f : load(row[c0[x]]);
        const float v1 = c1[x] < 0 ? 0.0f : load(row[c1[x]]);
        hr[x] = (1.0 - tx[x].frac) * v0 + tx[x].frac * v1;
      }
    }
    for (std::uint32_t y = 0; y < h; ++y) {
      const ResizeTap& a = ty[y];
      const double* top = rows.data() + std::size_t{a.i0} * w;
      const double* bot = rows.data() + std::size_t{a.i1} * w;
      const std::size_t base = ch * plane + std::size_t{y} * w;
      if (zero[a.i0] && zero[a.i1]) {
        for (std::uint32_t x = 0; x < w; ++x) store(base + x, 0.0f);
        continue;
      }
      for (std::uint32_t x = 0; x < w; ++x) {
        store(base + x, static_cast<float>((1.0 - a.frac) * top[x] + a.frac * bot[x]));
      }
    }
  }
}

struct PadCropDraw {
  std::uint32_t pad, off_y, off_x;
};

PadCropDraw draw_pad_crop(const TransformSpec& spec, Rng& rng) {
  const std::uint32_t pad = draw_strength(spec, rng);
  const auto ox = static_cast<std::uint32_t>(rng.uniform_int(0, 2ull * pad));
  const auto oy = static_cast<std::uint32_t>(rng.uniform_int(0, 2ull * pad));
  return {pad, oy, ox};
}

}  // namespace

Image pad_image(ImageView image, const PadQuadruple& pad, PaddingMode mode) {
  const std::uint32_t oh = image.h + pad.top + pad.bottom;
  const std::uint32_t ow = image.w + pad.left + pad.right;
  Image out(image.c, oh, ow, 0.0f);
  for (std::uint32_t ch = 0; ch < image.c; ++ch) {
    for (std::uint32_t y = 0; y < oh; ++y) {
      const long sy = static_cast<long>(y) - static_cast<long>(pad.top);
      padded_row(image.data.data() + std::size_t{ch} * image.h * image.w, image.h, image.w, sy, pad.left, 0, ow, mode,
                 out.data.data() + (std::size_t{ch} * oh + y) * ow);
    }
  }
  return out;
}

Image pad_crop_image(ImageView image, std::uint32_t pad, std::uint32_t off_y, std::uint32_t off_x,
                     PaddingMode mode) {
  if (off_y > 2 * pad || off_x > 2 * pad) throw Error(ErrorCode::InvalidValue, "pad_crop offset outside [0, 2*pad]");
  if (pad == 0) return Image(image);
  Image out(image.c, image.h, image.w, 0.0f);
  pad_crop_planes(image.data.data(), image.c, image.h, image.w, pad, off_y, off_x, mode, out.data.data());
  return out;
}

Image pad_resize_image(ImageView image, const PadQuadruple& pad, PaddingMode mode) {
  if (pad.sum() == 0) return Image(image);
  Image out(image.c, image.h, image.w);
  pad_resize_planes(
      image.data.data(), image.c, image.h, image.w, pad, mode, [](float v) { return v; },
      [&](std::size_t k, float v) { out.data[k] = v; });
  return out;
}

Image crop_shift_image(ImageView image, const CropShiftParams& p) {
  const std::uint32_t v = p.top + p.bottom;
  const std::uint32_t u = p.left + p.right;
  if (v > image.h || u > image.w || p.dst_y > v || p.dst_x > u) {
    throw Error(ErrorCode::InvalidStrength, "crop_shift parameters do not fit the image");
  }
  Image out(image.c, image.h, image.w, 0.0f);
  const std::uint32_t rh = image.h - v;
  const std::uint32_t rw = image.w - u;
  for (std::uint32_t ch = 0; ch < image.c; ++ch) {
    for (std::uint32_t y = 0; y < rh; ++y) {
      for (std::uint32_t x = 0; x < rw; ++x) {
        out.at(ch, p.dst_y + y, p.dst_x + x) = image.at(ch, p.top + y, p.left + x);
      }
    }
  }
  return out;
}

Image translate_image(ImageView image, Offset off) {
  Image out(image.c, image.h, image.w, 0.0f);
  for (std::uint32_t ch = 0; ch < image.c; ++ch) {
    for (std::uint32_t y = 0; y < image.h; ++y) {
      const long sy = static_cast<long>(y) - off.dy;
      if (sy < 0 || sy >= static_cast<long>(image.h)) continue;
      for (std::uint32_t x = 0; x < image.w; ++x) {
        const long sx = static_cast<long>(x) - off.dx;
        if (sx < 0 || sx >= static_cast<long>(image.w)) continue;
        out.at(ch, y, x) = image.at(ch, static_cast<std::uint32_t>(sy), static_cast<std::uint32_t>(sx));
      }
    }
  }
  return out;
}

Image rotate_image(ImageView image, double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(rad);
  const double sn = std::sin(rad);
  const double cy = (static_cast<double>(image.h) - 1.0) / 2.0;
  const double cx = (static_cast<double>(image.w) - 1.0) / 2.0;
  Image out(image.c, image.h, image.w);
  for (std::uint32_t y = 0; y < image.h; ++y) {
    const double dy = static_cast<double>(y) - cy;
    for (std::uint32_t x = 0; x < image.w; ++x) {
      const double dx = static_cast<double>(x) - cx;
      // Inverse map: output pixel samples the source rotated by -degrees.
      const double sx = cx + cs * dx - sn * dy;
      const double sy = cy + sn * dx + cs * dy;
      for (std::uint32_t ch = 0; ch < image.c; ++ch) {
        out.at(ch, y, x) = static_cast<float>(sample_bilinear_zero(image, ch, sy, sx));
      }
    }
  }
  return out;
}

Image cutout_image(ImageView image, std::uint32_t side, std::uint32_t y0, std::uint32_t x0) {
  if (y0 + side > image.h || x0 + side > image.w) throw Error(ErrorCode::InvalidStrength, "cutout square leaves the frame");
  Image out(image);
  for (std::uint32_t ch = 0; ch < image.c; ++ch) {
    for (std::uint32_t y = y0; y < y0 + side; ++y) {
      std::fill_n(&out.at(ch, y, x0), side, 0.5f);
    }
  }
  return out;
}

namespace {

PadQuadruple draw_pad_resize(const TransformSpec& spec, Rng& rng) {
  if (spec.kind == OpKind::PadResizeHD && spec.diversity) {
    const auto& sets = require_param_sets(spec);
    return param_as<PadQuadruple>(sets[rng.index(sets.size())], spec.kind);
  }
  return draw_quadruple(draw_strength(spec, rng), rng);
}

// u8 batches skip the f32 round trip for the padding operators. The
// arithmetic is the f32 route's, so the bytes are the same.
bool apply_u8_direct(const TransformSpec& spec, const ImageBatch& batch, RngState state, ImageBatch& out) {
  if (batch.dtype() != DType::U8) return false;
  const bool pad_crop = spec.kind == OpKind::PadCrop;
  if (!pad_crop && spec.kind != OpKind::RandPadResize && spec.kind != OpKind::PadResizeHD) return false;
  const Shape& s = batch.shape();
  const std::size_t sz = s.image_size();
  static const auto table = [] {
    std::array<float, 256> t{};
    for (int v = 0; v < 256; ++v) t[static_cast<std::size_t>(v)] = u8_to_f32(static_cast<std::uint8_t>(v));
    return t;
  }();
  for (std::uint32_t i = 0; i < s.n; ++i) {
    Rng rng(state.derive(spec.granularity == Granularity::PerBatch ? 0 : i));
    const std::uint8_t* src = batch.u8().data() + i * sz;
    std::uint8_t* dst = out.u8().data() + i * sz;
    if (pad_crop) {
      const PadCropDraw d = draw_pad_crop(spec, rng);
      pad_crop_planes(src, s.c, s.h, s.w, d.pad, d.off_y, d.off_x, spec.padding, dst);
      continue;
    }
    const PadQuadruple q = draw_pad_resize(spec, rng);
    if (q.sum() == 0) {
      std::copy_n(src, sz, dst);
      continue;
    }
    pad_resize_planes(
        src, s.c, s.h, s.w, q, spec.padding, [](std::uint8_t v) { return table[v]; },
        [dst](std::size_t k, float v) { dst[k] = f32_to_u8(v); });
  }
  return true;
}

}  // namespace

Image apply_image(const TransformSpec& spec, ImageView image, Rng& rng) {
  switch (spec.kind) {
    case OpKind::PadCrop: {
      const PadCropDraw d = draw_pad_crop(spec, rng);
      return pad_crop_image(image, d.pad, d.off_y, d.off_x, spec.padding);
    }
    case OpKind::RandPadResize:
    case OpKind::PadResizeHD: return pad_resize_image(image, draw_pad_resize(spec, rng), spec.padding);
    case OpKind::CropShiftHD: {
      if (spec.diversity) {
        const auto& sets = require_param_sets(spec);
        return crop_shift_image(image, param_as<CropShiftParams>(sets[rng.index(sets.size())], spec.kind));
      }
      const std::uint32_t s = draw_strength(spec, rng);
      return crop_shift_image(image, draw_crop_shift(s, image.h, image.w, rng));
    }
    case OpKind::TranslateHD: {
      const std::uint32_t s = draw_strength(spec, rng);
      Direction dir;
      if (spec.diversity) {
        const auto& sets = require_param_sets(spec);
        dir = param_as<Direction>(sets[rng.index(sets.size())], spec.kind);
      } else {
        dir = kAllDirections[rng.index(kAllDirections.size())];
      }
      return translate_image(image, translation_offset(dir, s));
    }
    case OpKind::Rotate: {
      double deg;
      if (spec.strength_min == 0) {
        deg = rng.uniform(-static_cast<double>(spec.strength_max), static_cast<double>(spec.strength_max));
      } else {
        deg = rng.uniform(spec.strength_min, spec.strength_max);
        if (rng.next_u32() & 1u) deg = -deg;
      }
      return rotate_image(image, deg);
    }
    case OpKind::Cutout: {
      const std::uint32_t side = draw_strength(spec, rng);
      const auto y = static_cast<std::uint32_t>(rng.uniform_int(0, image.h - side));
      const auto x = static_cast<std::uint32_t>(rng.uniform_int(0, image.w - side));
      return cutout_image(image, side, y, x);
    }
  }
  throw Error(ErrorCode::InvalidValue, "unknown operator");
}

void validate(const TransformSpec& spec, std::uint32_t h, std::uint32_t w) {
  validate(spec);
  check_fits(spec, h, w);
  if (has_param_sets(spec.kind) && spec.diversity) require_param_sets(spec);
}

ImageBatch apply(const TransformSpec& spec, const ImageBatch& batch, RngState state) {
  const Shape& s = batch.shape();
  validate(spec, s.h, s.w);
  ImageBatch out = ImageBatch::filled(s, batch.dtype(), 0.0);
  if (apply_u8_direct(spec, batch, state, out)) return out;
  for (std::uint32_t i = 0; i < s.n; ++i) {
    Rng rng(state.derive(spec.granularity == Granularity::PerBatch ? 0 : i));
    const Image src = batch.image(i);
    out.set_image(i, apply_image(spec, src.view(), rng));
  }
  return out;
}

namespace {
void require_kind(const TransformSpec& spec, OpKind kind) {
  if (spec.kind != kind) {
    throw Error(ErrorCode::InvalidValue, "expected a " + std::string(op_name(kind)) + " spec, got " +
                                             std::string(op_name(spec.kind)));
  }
}
}  // namespace

ImageBatch pad_crop(const ImageBatch& batch, std::uint32_t pad, RngState rng, PaddingMode mode) {
  TransformSpec spec = TransformSpec::pad_crop(pad);
  spec.padding = mode;
  return apply(spec, batch, rng);
}

ImageBatch rand_pad_resize(const ImageBatch& batch, std::uint32_t lo, std::uint32_t hi, PaddingMode mode,
                           RngState rng) {
  TransformSpec spec = TransformSpec::rand_pad_resize(lo, hi);
  spec.padding = mode;
  return apply(spec, batch, rng);
}

ImageBatch pad_resize_hd(const ImageBatch& batch, const TransformSpec& spec, RngState rng) {
  require_kind(spec, OpKind::PadResizeHD);
  return apply(spec, batch, rng);
}

ImageBatch crop_shift_hd(const ImageBatch& batch, const TransformSpec& spec, RngState rng) {
  require_kind(spec, OpKind::CropShiftHD);
  return apply(spec, batch, rng);
}

ImageBatch translate_hd(const ImageBatch& batch, const TransformSpec& spec, RngState rng) {
  require_kind(spec, OpKind::TranslateHD);
  return apply(spec, batch, rng);
}

ImageBatch rotate(const ImageBatch& batch, std::uint32_t max_degrees, RngState rng) {
  return apply(TransformSpec::rotate(max_degrees), batch, rng);
}

ImageBatch cutout(const ImageBatch& batch, std::uint32_t side, RngState rng) {
  return apply(TransformSpec::cutout(side), batch, rng);
}

}  // namespace augrl
