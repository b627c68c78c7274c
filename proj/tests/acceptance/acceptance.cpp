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
// Acceptance runner. Prints one PASS or FAIL line per criterion and exits
// nonzero if any gating check fails. Tolerances are fixed here; nothing is
// tuned from observed results. Arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "augrl/cli/commands.hpp"
#include "augrl/fusion.hpp"
#include "augrl/metrics.hpp"
#include "augrl/resample.hpp"
#include "augrl/rng.hpp"
#include "augrl/tensor.hpp"
#include "augrl/toyrl/env.hpp"
#include "augrl/toyrl/policy.hpp"
#include "augrl/toyrl/trainer.hpp"
#include "augrl/transforms.hpp"
#include "oracles/bilinear_oracle.hpp"

using namespace augrl;
using namespace augrl::toyrl;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPropertyBudgetS = 120.0;
constexpr double kOracleF32Tol = 1e-6;
constexpr double kScaleTol = 1e-12;
constexpr double kMinPooledR = 0.8;
constexpr double kSweepBudgetS = 15 * 60.0;
constexpr double kBenefitBudgetS = 30 * 60.0;
constexpr double kCycAugSlack = 0.10;
constexpr double kGradTol = 1e-4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void progress(const std::string& msg) { std::cerr << "  .. " << msg << std::endl; }

// ---------------------------------------------------------------------------
// Transform properties.

struct Case {
  ImageBatch batch;
  TransformSpec spec;
  RngState state;
};

std::uint32_t draw(Rng& r, std::uint32_t lo, std::uint32_t hi) {
  return static_cast<std::uint32_t>(r.uniform_int(lo, hi));
}

TransformSpec random_spec(OpKind kind, std::uint32_t h, std::uint32_t w, Rng& r) {
  const std::uint32_t m = std::min(h, w);
  auto diversity = [&](std::uint64_t cap) -> std::optional<std::uint32_t> {
    if (r.uniform01() < 0.5) return std::nullopt;
    return draw(r, 1, static_cast<std::uint32_t>(std::min<std::uint64_t>(cap, 8)));
  };
  TransformSpec s;
  switch (kind) {
    case OpKind::PadCrop:
      s = TransformSpec::pad_crop(draw(r, 0, m - 1));
      s.padding = r.uniform01() < 0.5 ? PaddingMode::Zero : PaddingMode::Replicate;
      break;
    case OpKind::RandPadResize: {
      const auto lo = draw(r, 0, 24);
      s = TransformSpec::rand_pad_resize(lo, draw(r, lo, 24));
      break;
    }
    case OpKind::PadResizeHD:
      s = TransformSpec::pad_resize_hd(draw(r, 0, 20), std::nullopt);
      break;
    case OpKind::CropShiftHD:
      s = TransformSpec::crop_shift_hd(draw(r, 0, h + w - 1), std::nullopt);
      break;
    case OpKind::TranslateHD:
      s = TransformSpec::translate_hd(draw(r, 0, m - 1), std::nullopt);
      break;
    case OpKind::Rotate:
      s = TransformSpec::rotate(draw(r, 0, 180));
      break;
    case OpKind::Cutout:
      s = TransformSpec::cutout(draw(r, 0, m));
      break;
  }
  if (has_param_sets(kind)) {
    s.diversity = diversity(count_param_sets(s, {h, w}));
    if (s.diversity) s = presample_param_sets(s, RngState{r.next_u64(), 0}, {h, w});
  }
  s.granularity = r.uniform01() < 0.25 ? Granularity::PerBatch : Granularity::PerImage;
  return s;
}

TransformSpec zero_strength(OpKind kind, PaddingMode mode) {
  switch (kind) {
    case OpKind::PadCrop: {
      auto s = TransformSpec::pad_crop(0);
      s.padding = mode;
      return s;
    }
    case OpKind::RandPadResize: return TransformSpec::rand_pad_resize(0, 0);
    case OpKind::PadResizeHD: return TransformSpec::pad_resize_hd(0, std::nullopt);
    case OpKind::CropShiftHD: return TransformSpec::crop_shift_hd(0, std::nullopt);
    case OpKind::TranslateHD: return TransformSpec::translate_hd(0, std::nullopt);
    case OpKind::Rotate: return TransformSpec::rotate(0);
    case OpKind::Cutout: return TransformSpec::cutout(0);
  }
  return {};
}

ImageBatch random_batch(Shape s, DType dtype, Rng& r) {
  if (dtype == DType::U8) {
    std::vector<std::uint8_t> v(s.numel());
    for (auto& b : v) b = static_cast<std::uint8_t>(r.next_u32() & 0xFFu);
    return ImageBatch::from_u8(s, std::move(v));
  }
  std::vector<float> v(s.numel());
  for (auto& f : v) f = static_cast<float>(r.uniform01());
  return ImageBatch::from_f32(s, std::move(v));
}

// Returns an empty string when every property holds, else the first failure.
std::string check_case(const Case& c) {
  const ImageBatch out = apply(c.spec, c.batch, c.state);
  if (!(out.shape() == c.batch.shape()) || out.dtype() != c.batch.dtype()) return "shape or dtype changed";
  if (!(apply(c.spec, c.batch, c.state) == out)) return "non-deterministic";
  if (out.dtype() == DType::F32) {
    for (float v : out.f32()) {
      if (!(v >= 0.0f && v <= 1.0f)) return "f32 value outside [0,1]";
    }
  } else {
    const ImageBatch via_f32 = to_u8(apply(c.spec, to_f32(c.batch), c.state));
    if (!(via_f32 == out)) return "u8 path differs from f32 path plus rounding";
  }
  const bool per_batch = c.spec.granularity == Granularity::PerBatch;
  std::vector<Image> singles;
  for (std::uint32_t i = 0; i < c.batch.shape().n; ++i) {
    Rng rng(c.state.derive(per_batch ? 0 : i));
    singles.push_back(apply_image(c.spec, c.batch.image(i).view(), rng));
  }
  if (!(stack(singles, c.batch.dtype()) == out)) return "batch differs from per-image restack";
  for (const auto mode : {PaddingMode::Replicate, PaddingMode::Zero}) {
    if (!(apply(zero_strength(c.spec.kind, mode), c.batch, c.state) == c.batch)) return "zero strength not identity";
  }
  return "";
}

Outcome transform_properties() {
  const auto t0 = Clock::now();
  constexpr int kCases = 1000;
  std::size_t total = 0;
  for (const OpKind kind : kAllOpKinds) {
    Rng r(0xACCE55, static_cast<std::uint64_t>(kind));
    for (int i = 0; i < kCases; ++i) {
      const Shape shape{draw(r, 1, 3), r.uniform01() < 0.5 ? 1u : 3u, draw(r, 8, 24), draw(r, 8, 24)};
      const DType dtype = r.uniform01() < 0.5 ? DType::U8 : DType::F32;
      Case c{random_batch(shape, dtype, r), random_spec(kind, shape.h, shape.w, r), RngState{r.next_u64(), 0}};
      const std::string failure = check_case(c);
      if (!failure.empty()) {
        return {false, std::string(op_name(kind)) + " case " + std::to_string(i) + ": " + failure};
      }
      ++total;
    }
  }
  const double s = seconds_since(t0);
  return {s < kPropertyBudgetS, std::to_string(total) + " cases (7 ops x " + std::to_string(kCases) +
                                    ") all properties hold; " + num(s, 3) + " s (limit " + num(kPropertyBudgetS) + " s)"};
}

// ---------------------------------------------------------------------------
// Resampler against the brute-force oracle.

Outcome resampler_oracle() {
  Rng r(0xB11, 0);
  double worst_f32 = 0.0;
  std::size_t byte_mismatches = 0, pixels = 0;
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t c = r.uniform01() < 0.5 ? 1 : 3;
    const std::uint32_t ih = draw(r, 1, 16), iw = draw(r, 1, 16), oh = draw(r, 1, 16), ow = draw(r, 1, 16);
    Image f(c, ih, iw), b(c, ih, iw);
    for (auto& v : f.data) v = static_cast<float>(r.uniform01());
    for (auto& v : b.data) v = u8_to_f32(static_cast<std::uint8_t>(r.next_u32() & 0xFFu));
    auto plane = [](const Image& img) {
      return oracle::Plane{img.c, img.h, img.w, std::vector<double>(img.data.begin(), img.data.end())};
    };
    const Image fo = bilinear_resize(f.view(), oh, ow);
    const auto fr = oracle::bilinear(plane(f), oh, ow);
    for (std::size_t i = 0; i < fo.data.size(); ++i) worst_f32 = std::max(worst_f32, std::fabs(fo.data[i] - fr.v[i]));
    const Image bo = bilinear_resize(b.view(), oh, ow);
    const auto br = oracle::bilinear(plane(b), oh, ow);
    for (std::size_t i = 0; i < bo.data.size(); ++i) {
      byte_mismatches += f32_to_u8(bo.data[i]) != oracle::to_byte_via_f32(br.v[i]);
      ++pixels;
    }
  }
  return {worst_f32 <= kOracleF32Tol && byte_mismatches == 0,
          "100 f32 + 100 u8 images: max f32 error " + num(worst_f32) + " (tol " + num(kOracleF32Tol) + "), " +
              std::to_string(byte_mismatches) + " of " + std::to_string(pixels) + " bytes differ"};
}

// ---------------------------------------------------------------------------
// Scheduler contract.

Outcome scheduler_contract() {
  constexpr std::uint64_t kTicks = 1000000, kInterval = 100000;
  FusionSchedule s = default_cycaug(kInterval);
  std::uint64_t mismatches = 0, switches = 0;
  std::size_t prev = s.active_index();
  for (std::uint64_t step = 0; step <= kTicks; ++step) {
    const std::size_t idx = s.active_index();
    mismatches += idx != (step / kInterval) % 2;
    switches += idx != prev;
    prev = idx;
    if (step < kTicks) s = tick(std::move(s), 1);
  }
  return {mismatches == 0 && switches == 10 && s.step_counter == kTicks,
          "10^6 ticks, interval 10^5: " + std::to_string(mismatches) + " trace mismatches, " + std::to_string(switches) +
              " switches (expected 10)"};
}

// ---------------------------------------------------------------------------
// Fusion distributions.

FusionSchedule schedule_of(FusionScheme scheme, std::vector<TransformSpec> ops) {
  FusionSchedule s;
  s.scheme = scheme;
  s.ops = std::move(ops);
  return s;
}

Outcome fusion_checks() {
  std::vector<std::string> problems;

  // On a constant 0.25 image translate leaves zeros, cutout leaves its 0.5
  // fill and replicate pad-crop changes nothing, so each output names its op.
  constexpr std::uint32_t kDraws = 10000;
  const auto sample = schedule_of(FusionScheme::Sample, {TransformSpec::translate_hd(2, std::nullopt),
                                                         TransformSpec::cutout(2), TransformSpec::pad_crop(1)});
  const ImageBatch flat = new_batch(kDraws, 1, 6, 6, DType::F32, 0.25);
  const ImageBatch sampled = apply(sample, flat, RngState{0x5A3, 0});
  std::array<std::uint32_t, 3> counts{};
  for (std::uint32_t i = 0; i < kDraws; ++i) {
    const auto px = sampled.f32().subspan(std::size_t{i} * 36, 36);
    const bool zero = std::find(px.begin(), px.end(), 0.0f) != px.end();
    const bool half = std::find(px.begin(), px.end(), 0.5f) != px.end();
    ++counts[zero ? 0 : half ? 1 : 2];
  }
  const double expect = kDraws / 3.0;
  const double sigma = std::sqrt(kDraws * (1.0 / 3.0) * (2.0 / 3.0));
  double worst_z = 0.0;
  for (auto k : counts) worst_z = std::max(worst_z, std::fabs(k - expect) / sigma);
  if (worst_z > 3.0) problems.push_back("sample frequencies off by " + num(worst_z) + " sigma");

  // Mix: every output pixel inside the hull of its components.
  Rng r(0x313, 0);
  std::size_t hull_violations = 0, replay_mismatches = 0;
  for (int b = 0; b < 100; ++b) {
    const Shape shape{draw(r, 1, 4), 3, draw(r, 8, 16), draw(r, 8, 16)};
    std::vector<TransformSpec> ops;
    const auto n_ops = draw(r, 1, 3);
    for (std::uint32_t k = 0; k < n_ops; ++k) {
      ops.push_back(random_spec(kAllOpKinds[draw(r, 0, 6)], shape.h, shape.w, r));
    }
    auto mix = schedule_of(FusionScheme::Mix, ops);
    mix.mix_width = draw(r, 1, 4);
    mix.dirichlet_alpha = 0.25 + 2.0 * r.uniform01();
    const ImageBatch in = random_batch(shape, DType::F32, r);
    const RngState st{r.next_u64(), 0};
    const ImageBatch out = apply(mix, in, st);
    const bool per_batch = std::all_of(ops.begin(), ops.end(), [](const TransformSpec& op) {
      return op.granularity == Granularity::PerBatch;
    });
    for (std::uint32_t i = 0; i < shape.n; ++i) {
      Rng rng(st.derive(per_batch ? 0 : i));
      const MixResult m = mix_image(mix, in.image(i).view(), rng);
      const Image got = out.image(i);
      for (std::size_t p = 0; p < got.data.size(); ++p) {
        float lo = m.components[0].data[p], hi = lo;
        for (const auto& comp : m.components) {
          lo = std::min(lo, comp.data[p]);
          hi = std::max(hi, comp.data[p]);
        }
        hull_violations += got.data[p] < lo || got.data[p] > hi;
        replay_mismatches += got.data[p] != m.output.data[p];
      }
    }
  }
  if (hull_violations > 0) problems.push_back(std::to_string(hull_violations) + " mix pixels outside the hull");
  if (replay_mismatches > 0) {
    problems.push_back(std::to_string(replay_mismatches) + " mix pixels differ from the per-image replay");
  }

  // Single-op schedules against the op itself, all seven kinds.
  std::size_t single_mismatch = 0;
  for (const OpKind kind : kAllOpKinds) {
    const Shape shape{4, 3, 16, 16};
    const ImageBatch in = random_batch(shape, DType::U8, r);
    const TransformSpec op = random_spec(kind, shape.h, shape.w, r);
    const RngState st{r.next_u64(), 0};
    const ImageBatch direct = apply(op, in, st);
    auto mix = schedule_of(FusionScheme::Mix, {op});
    mix.mix_width = 1;
    for (const auto& s : {schedule_of(FusionScheme::Compose, {op}), schedule_of(FusionScheme::Sample, {op}), mix}) {
      single_mismatch += !(apply(s, in, st) == direct);
    }
  }
  if (single_mismatch > 0) problems.push_back(std::to_string(single_mismatch) + " single-op schedules differ");

  std::string counts_text = std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" + std::to_string(counts[2]);
  if (problems.empty()) {
    return {true, "sample counts " + counts_text + " (max " + num(worst_z, 3) +
                      " sigma); 100 mix batches inside hull; single-op compose/mix/sample equal op for 7 kinds"};
  }
  std::string detail;
  for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  return {false, detail};
}

// ---------------------------------------------------------------------------
// Hardness metric.

ReturnSample sample_of(std::vector<double> xs) {
  ReturnSample s;
  s.episode_returns = std::move(xs);
  return s;
}

Outcome hardness_metric() {
  Rng r(0x4A2D, 0);
  std::vector<double> xs(20), ys(20);
  for (auto& v : xs) v = r.uniform(1.0, 50.0);
  for (auto& v : ys) v = r.uniform(1.0, 50.0);
  const double self = hardness(sample_of(xs), sample_of(xs)).value();
  double worst = 0.0;
  const double base = hardness(sample_of(xs), sample_of(ys)).value();
  for (const double k : {1e-3, 0.5, 3.0, 1e4}) {
    auto sx = xs, sy = ys;
    for (auto& v : sx) v *= k;
    for (auto& v : sy) v *= k;
    worst = std::max(worst, std::fabs(hardness(sample_of(sx), sample_of(sy)).value() - base) / base);
  }
  const std::vector<double> one_to_eight = {1, 2, 3, 4, 5, 6, 7, 8};
  const double q = iqm(one_to_eight);
  return {self == 1.0 && worst <= kScaleTol && q == 4.5,
          "hardness(x,x)=" + num(self, 17) + ", scale covariance rel err " + num(worst) + " (tol " + num(kScaleTol) +
              "), iqm([1..8])=" + num(q, 17)};
}

// ---------------------------------------------------------------------------
// Gradient check.

ImageBatch concat(const std::vector<ImageBatch>& parts) {
  std::vector<Image> images;
  for (const auto& p : parts) {
    for (std::uint32_t i = 0; i < p.shape().n; ++i) images.push_back(p.image(i));
  }
  return stack(images, DType::U8);
}

Outcome gradient_check() {
  double worst = 0.0;
  std::size_t coords = 0;
  Rng r(0x6C, 0);
  for (std::uint64_t b = 0; b < 20; ++b) {
    const auto n = draw(r, 1, kGradCheckMaxFrames);
    ImageBatch frames;
    if (b % 2 == 0) {
      DotReacherEnv env;
      std::vector<ImageBatch> parts;
      for (std::uint32_t i = 0; i < n; ++i) parts.push_back(env.reset(RngState{b, i}));
      frames = concat(parts);
    } else {
      frames = random_batch({n, 3, 84, 84}, DType::U8, r);
    }
    TinyPolicy policy;
    policy.init(RngState{b, 0x1417});
    const auto rep = grad_check(policy.cast<double>(), frames, {1e-3, 64, b});
    worst = std::max(worst, rep.max_rel());
    coords += rep.coordinates;
  }
  return {worst < kGradTol, "20 batches of 1-4 frames, " + std::to_string(coords) + " coordinates, max rel error " +
                                num(worst) + " (tol " + num(kGradTol) + ", eps 1e-3, f64)"};
}

// ---------------------------------------------------------------------------
// End-to-end determinism through the train command.

Outcome train_determinism() {
  const fs::path root = fs::temp_directory_path() / "augrl_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> curves;
  for (const char* run : {"a", "b"}) {
    const std::string out = (root / run).string();
    const char* argv[] = {"augrl", "--seed", "3", "train", "--steps", "3000", "--aug",
                          R"({"scheme":"cycle","interval":500,"ops":[{"op":"pad_crop","strength":4},{"op":"rand_pad_resize","strength_min":0,"strength_max":16}]})",
                          "--out", out.c_str()};
    std::ostringstream sink_out, sink_err;
    const int code = cli::run(static_cast<int>(std::size(argv)), argv, sink_out, sink_err);
    if (code != cli::kExitOk) return {false, "train exited " + std::to_string(code) + ": " + sink_err.str()};
    std::ifstream in(root / run / cli::kCurveFileName, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    curves.push_back(ss.str());
  }
  const bool same = !curves[0].empty() && curves[0] == curves[1];
  return {same, "two train runs (cycaug, 3000 steps, seed 3): curve CSVs " +
                    std::string(same ? "bytewise identical" : "differ") + " (" + std::to_string(curves[0].size()) +
                    " bytes)"};
}

// ---------------------------------------------------------------------------
// Toy-scale reproductions share trained agents.

struct Agent {
  TrainResult result;
  double seconds = 0.0;
};

class AgentPool {
 public:
  const Agent& get(const std::string& method, std::uint64_t seed) {
    const auto key = std::make_pair(method, seed);
    auto it = agents_.find(key);
    if (it != agents_.end()) return it->second;
    TrainConfig cfg;
    cfg.seed = seed;
    if (method == "pad_crop") cfg.augmentation = TransformSpec::pad_crop(4);
    if (method == "rand_pr") cfg.augmentation = TransformSpec::rand_pad_resize(0, 16);
    if (method == "cycaug") cfg.augmentation = default_cycaug(500);
    const auto t0 = Clock::now();
    Agent a{train(cfg), 0.0};
    a.seconds = seconds_since(t0);
    progress("trained " + method + " seed " + std::to_string(seed) + ": final return " +
             num(a.result.curve.back().returns.mean()) + " in " + num(a.seconds, 3) + " s");
    return agents_.emplace(key, std::move(a)).first->second;
  }

 private:
  std::map<std::pair<std::string, std::uint64_t>, Agent> agents_;
};

Outcome hardness_linearity(AgentPool& pool) {
  const std::vector<std::uint32_t> strengths = {0, 2, 4, 8, 12};
  const auto base = TransformSpec::translate_hd(0, std::nullopt);
  const EnvConfig env;
  double seconds = 0.0;
  std::vector<HardnessCurve> curves;
  std::string per_seed;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Agent& a = pool.get("none", seed);
    seconds += a.seconds;
    const auto t0 = Clock::now();
    const Evaluator ev = [&](const std::optional<TransformSpec>& t) {
      return evaluate(a.result.policy, env, kDefaultEvalEpisodes, t, seed);
    };
    curves.push_back(strength_hardness_curve(ev, base, strengths, seed, seed));
    seconds += seconds_since(t0);
    per_seed += (per_seed.empty() ? "" : " ") + format_real(curves.back().pearson_r, "nan").substr(0, 6);
  }
  const auto pooled = pooled_pearson(curves);
  const bool ok = pooled.pearson_r && *pooled.pearson_r >= kMinPooledR && seconds < kSweepBudgetS;
  std::string ratios;
  for (std::size_t k = 0; k < strengths.size(); ++k) {
    std::vector<double> col;
    for (const auto& c : curves) col.push_back(c.points[k].report.ratio.value_or(NAN));
    ratios += (ratios.empty() ? "" : " ") + num(median(col), 3);
  }
  return {ok, "pooled pearson_r " + format_real(pooled.pearson_r, "nan") + " (min " + num(kMinPooledR) +
                  "); per-seed r " + per_seed + "; median ratio by strength " + ratios + "; " + num(seconds, 4) +
                  " s incl. baseline training (limit " + num(kSweepBudgetS) + " s)"};
}

Outcome randpr_vs_padcrop(AgentPool& pool) {
  const EnvConfig env;
  std::vector<double> pc, rpr, rpr_range;
  int translate_lower = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Agent& a = pool.get("none", seed);
    const auto clean = evaluate(a.result.policy, env, kDefaultEvalEpisodes, std::nullopt, seed);
    auto h = [&](const TransformSpec& t) {
      return hardness(clean, evaluate(a.result.policy, env, kDefaultEvalEpisodes, t, seed)).value();
    };
    pc.push_back(h(TransformSpec::pad_crop(4)));
    rpr.push_back(h(TransformSpec::rand_pad_resize(16, 16)));
    rpr_range.push_back(h(TransformSpec::rand_pad_resize(0, 16)));
    const auto shifted =
        evaluate(a.result.policy, env, kDefaultEvalEpisodes, TransformSpec::translate_hd(12, std::nullopt), seed);
    translate_lower += shifted.mean() < clean.mean();
  }
  const double m_pc = median(pc), m_rpr = median(rpr);
  return {m_rpr < m_pc, "median hardness over 10 no-DA seeds: rand_pad_resize(16) " + num(m_rpr) +
                             " vs pad_crop(4) " + num(m_pc) + "; rand_pad_resize([0,16]) " + num(median(rpr_range)) +
                             " (reported); translate_hd(12) lowers the clean return in " +
                             std::to_string(translate_lower) + "/10 seeds (reported)"};
}

Outcome augmentation_benefit(AgentPool& pool) {
  std::map<std::string, std::vector<double>> finals;
  double seconds = 0.0;
  for (const char* method : {"none", "pad_crop", "rand_pr", "cycaug"}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Agent& a = pool.get(method, seed);
      finals[method].push_back(a.result.curve.back().returns.mean());
      seconds += a.seconds;
    }
  }
  const double none = median(finals["none"]), pc = median(finals["pad_crop"]);
  const double rpr = median(finals["rand_pr"]), cyc = median(finals["cycaug"]);
  const double bar = std::max(pc, rpr) * (1.0 - kCycAugSlack);
  const bool cyc_ok = cyc >= bar;
  const bool ok = pc > none && seconds < kBenefitBudgetS;
  return {ok, "median final return at 30k steps: none " + num(none) + ", pad_crop " + num(pc) + ", rand_pr " + num(rpr) +
                  ", cycaug " + num(cyc) + "; pad_crop > none " + (pc > none ? "holds" : "fails") +
                  "; cycaug >= " + num(bar) + " " + (cyc_ok ? "holds" : "fails") + " (non-gating); " +
                  num(seconds, 4) + " s training (limit " + num(kBenefitBudgetS) + " s)"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto selected = [&](int id) { return only.empty() || only.contains(id); };

  AgentPool pool;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"transform property suite", transform_properties},
      {"resampler oracle", resampler_oracle},
      {"scheduler contract", scheduler_contract},
      {"fusion distributions", fusion_checks},
      {"hardness metric", hardness_metric},
      {"hardness-strength linearity", [&] { return hardness_linearity(pool); }},
      {"rand_pad_resize vs pad_crop hardness", [&] { return randpr_vs_padcrop(pool); }},
      {"augmentation benefit", [&] { return augmentation_benefit(pool); }},
      {"gradient check", gradient_check},
      {"train determinism", train_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!selected(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[k].first << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
