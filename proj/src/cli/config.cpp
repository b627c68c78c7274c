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
#include "augrl/cli/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "augrl/error.hpp"

namespace augrl::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ConfigError, path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  template <typename U>
  void uint(const std::string& key, U& out) {
    const json* v = raw(key);
    if (v == nullptr) return;
    out = as_uint<U>(*v, join(path_, key));
  }

  void real(const std::string& key, double& out) {
    const json* v = raw(key);
    if (v == nullptr) return;
    if (!v->is_number()) fail(join(path_, key), "expected a number");
    out = v->get<double>();
  }

  void boolean(const std::string& key, bool& out) {
    const json* v = raw(key);
    if (v == nullptr) return;
    if (!v->is_boolean()) fail(join(path_, key), "expected true or false");
    out = v->get<bool>();
  }

  void string(const std::string& key, std::string& out) {
    const json* v = raw(key);
    if (v == nullptr) return;
    if (!v->is_string()) fail(join(path_, key), "expected a string");
    out = v->get<std::string>();
  }

  template <typename U>
  void uint_list(const std::string& key, std::vector<U>& out) {
    const json* v = raw(key);
    if (v == nullptr) return;
    if (!v->is_array()) fail(join(path_, key), "expected an array");
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      out.push_back(as_uint<U>((*v)[i], join(path_, key) + "[" + std::to_string(i) + "]"));
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) fail(join(path_, key), "unknown key");
    }
  }

  const std::string& path() const { return path_; }

  template <typename U>
  static U as_uint(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected a non-negative integer");
    if (v.is_number_unsigned()) {
      const auto x = v.get<std::uint64_t>();
      if (x > std::numeric_limits<U>::max()) fail(path, "value too large");
      return static_cast<U>(x);
    }
    const auto x = v.get<std::int64_t>();
    if (x < 0) fail(path, "expected a non-negative integer");
    if (static_cast<std::uint64_t>(x) > std::numeric_limits<U>::max()) fail(path, "value too large");
    return static_cast<U>(x);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const char* padding_name(PaddingMode m) { return m == PaddingMode::Zero ? "zero" : "replicate"; }
const char* granularity_name(Granularity g) { return g == Granularity::PerBatch ? "per_batch" : "per_image"; }

constexpr std::array<const char*, 8> kDirectionNames = {"up",      "down",     "left",      "right",
                                                         "up_left", "up_right", "down_left", "down_right"};

json param_set_to_json(const ParamSet& p) {
  if (const auto* q = std::get_if<PadQuadruple>(&p)) return json::array({q->top, q->bottom, q->left, q->right});
  if (const auto* c = std::get_if<CropShiftParams>(&p)) {
    return json{{"top", c->top},       {"bottom", c->bottom}, {"left", c->left},
                {"right", c->right},   {"dst_y", c->dst_y},   {"dst_x", c->dst_x}};
  }
  return kDirectionNames[static_cast<std::size_t>(std::get<Direction>(p))];
}

ParamSet param_set_from_json(OpKind kind, const json& j, const std::string& path) {
  switch (kind) {
    case OpKind::PadResizeHD: {
      if (!j.is_array() || j.size() != 4) fail(path, "expected [top, bottom, left, right]");
      return PadQuadruple{Reader::as_uint<std::uint32_t>(j[0], path + "[0]"),
                          Reader::as_uint<std::uint32_t>(j[1], path + "[1]"),
                          Reader::as_uint<std::uint32_t>(j[2], path + "[2]"),
                          Reader::as_uint<std::uint32_t>(j[3], path + "[3]")};
    }
    case OpKind::CropShiftHD: {
      Reader r(j, path);
      CropShiftParams c;
      r.uint("top", c.top);
      r.uint("bottom", c.bottom);
      r.uint("left", c.left);
      r.uint("right", c.right);
      r.uint("dst_y", c.dst_y);
      r.uint("dst_x", c.dst_x);
      r.finish();
      return c;
    }
    case OpKind::TranslateHD: {
      if (j.is_string()) {
        for (std::size_t i = 0; i < kDirectionNames.size(); ++i) {
          if (j.get<std::string>() == kDirectionNames[i]) return kAllDirections[i];
        }
      }
      fail(path, "expected a direction name");
    }
    default:
      fail(path, "operator takes no parameter sets");
  }
}

template <typename T, typename F>
json list_to_json(const std::vector<T>& xs, F f) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

toyrl::EnvConfig env_from_json(Reader& r) {
  toyrl::EnvConfig e;
  r.uint("frame_size", e.frame_size);
  r.uint("max_steps", e.max_steps);
  r.real("step_size", e.step_size);
  r.real("target_radius", e.target_radius);
  r.real("bonus", e.bonus);
  r.real("gamma", e.gamma);
  r.real("dot_radius_px", e.dot_radius_px);
  r.boolean("terminate_at_target", e.terminate_at_target);
  r.finish();
  return e;
}

json env_to_json(const toyrl::EnvConfig& e) {
  return json{{"frame_size", e.frame_size},       {"max_steps", e.max_steps}, {"step_size", e.step_size},
              {"target_radius", e.target_radius}, {"bonus", e.bonus},         {"gamma", e.gamma},
              {"dot_radius_px", e.dot_radius_px}, {"terminate_at_target", e.terminate_at_target}};
}

// Checks run after the whole tree is read so the message can name a key.
template <typename F>
void checked(const std::string& path, F f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(path, e.what());
  }
}

void presample_if_needed(TransformSpec& spec, std::uint64_t seed, FrameSize frame) {
  if (has_param_sets(spec.kind) && spec.diversity.has_value() && spec.param_sets.empty()) {
    spec = presample_param_sets(std::move(spec), RngState{seed, kPresampleStream}, frame);
  }
}

}  // namespace

json spec_to_json(const TransformSpec& spec) {
  json j{{"op", std::string(op_name(spec.kind))},
         {"strength_min", spec.strength_min},
         {"strength_max", spec.strength_max},
         {"padding", padding_name(spec.padding)},
         {"granularity", granularity_name(spec.granularity)}};
  j["diversity"] = spec.diversity ? json(*spec.diversity) : json("unlimited");
  if (!spec.param_sets.empty()) j["param_sets"] = list_to_json(spec.param_sets, param_set_to_json);
  return j;
}

TransformSpec spec_from_json(const json& j, const std::string& path) {
  Reader r(j, path);
  std::string name;
  if (!r.has("op")) fail(join(path, "op"), "missing operator name");
  r.string("op", name);
  const auto kind = parse_op_name(name);
  if (!kind) fail(join(path, "op"), "unknown operator '" + name + "'");

  TransformSpec spec;
  spec.kind = *kind;
  spec.padding = default_padding(*kind);
  if (r.has("strength") && (r.has("strength_min") || r.has("strength_max"))) {
    fail(join(path, "strength"), "give either strength or strength_min/strength_max");
  }
  std::uint32_t strength = 0;
  if (r.has("strength")) {
    r.uint("strength", strength);
    spec.strength_min = spec.strength_max = strength;
  } else {
    r.uint("strength_min", spec.strength_min);
    r.uint("strength_max", spec.strength_max);
  }
  if (const json* d = r.raw("diversity")) {
    if (d->is_string() && d->get<std::string>() == "unlimited") {
      spec.diversity.reset();
    } else {
      spec.diversity = Reader::as_uint<std::uint32_t>(*d, join(path, "diversity"));
    }
  }
  if (const json* p = r.raw("padding")) {
    if (*p == "zero") {
      spec.padding = PaddingMode::Zero;
    } else if (*p == "replicate") {
      spec.padding = PaddingMode::Replicate;
    } else {
      fail(join(path, "padding"), "expected \"zero\" or \"replicate\"");
    }
  }
  if (const json* g = r.raw("granularity")) {
    if (*g == "per_image") {
      spec.granularity = Granularity::PerImage;
    } else if (*g == "per_batch") {
      spec.granularity = Granularity::PerBatch;
    } else {
      fail(join(path, "granularity"), "expected \"per_image\" or \"per_batch\"");
    }
  }
  if (const json* ps = r.raw("param_sets")) {
    if (!ps->is_array()) fail(join(path, "param_sets"), "expected an array");
    for (std::size_t i = 0; i < ps->size(); ++i) {
      spec.param_sets.push_back(
          param_set_from_json(spec.kind, (*ps)[i], join(path, "param_sets") + "[" + std::to_string(i) + "]"));
    }
  }
  r.finish();
  checked(path, [&] { validate(spec); });
  return spec;
}

json augmentation_to_json(const toyrl::Augmentation& aug) {
  if (std::holds_alternative<std::monostate>(aug)) return nullptr;
  if (const auto* s = std::get_if<TransformSpec>(&aug)) return spec_to_json(*s);
  const auto& f = std::get<FusionSchedule>(aug);
  return json{{"scheme", std::string(scheme_name(f.scheme))},
              {"ops", list_to_json(f.ops, spec_to_json)},
              {"order", f.order == ComposeOrder::Shuffled ? "shuffled" : "fixed"},
              {"mix_width", f.mix_width},
              {"dirichlet_alpha", f.dirichlet_alpha},
              {"interval", f.interval},
              {"step_counter", f.step_counter}};
}

toyrl::Augmentation augmentation_from_json(const json& j, const std::string& path) {
  if (j.is_null() || j == "none") return std::monostate{};
  if (j.is_object() && j.contains("op")) return spec_from_json(j, path);
  Reader r(j, path);
  FusionSchedule f;
  std::string scheme;
  if (!r.has("scheme")) fail(path, "expected null, \"none\", an operator (\"op\") or a schedule (\"scheme\")");
  r.string("scheme", scheme);
  const auto parsed = parse_scheme_name(scheme);
  if (!parsed) fail(join(path, "scheme"), "unknown scheme '" + scheme + "'");
  f.scheme = *parsed;
  if (const json* ops = r.raw("ops")) {
    if (!ops->is_array()) fail(join(path, "ops"), "expected an array");
    for (std::size_t i = 0; i < ops->size(); ++i) {
      f.ops.push_back(spec_from_json((*ops)[i], join(path, "ops") + "[" + std::to_string(i) + "]"));
    }
  }
  if (const json* o = r.raw("order")) {
    if (*o == "fixed") {
      f.order = ComposeOrder::Fixed;
    } else if (*o == "shuffled") {
      f.order = ComposeOrder::Shuffled;
    } else {
      fail(join(path, "order"), "expected \"fixed\" or \"shuffled\"");
    }
  }
  r.uint("mix_width", f.mix_width);
  r.real("dirichlet_alpha", f.dirichlet_alpha);
  r.uint("interval", f.interval);
  r.uint("step_counter", f.step_counter);
  r.finish();
  checked(path, [&] { validate(f); });
  return f;
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  Reader root(doc, "");
  root.uint("seed", cfg.seed);
  root.uint_list("seeds", cfg.seeds);
  root.uint("parallel_seeds", cfg.parallel_seeds);
  if (cfg.parallel_seeds == 0) fail("parallel_seeds", "must be at least 1");

  auto& t = cfg.train;
  if (const json* a = root.raw("augmentation")) t.augmentation = augmentation_from_json(*a, "augmentation");
  if (const json* e = root.raw("env")) {
    Reader r(*e, "env");
    t.env = env_from_json(r);
  }
  if (const json* p = root.raw("policy")) {
    Reader r(*p, "policy");
    r.uint("hidden", t.policy.hidden);
    if (const json* act = r.raw("activation")) {
      if (*act == "tanh") {
        t.policy.activation = toyrl::Activation::Tanh;
      } else if (*act == "identity") {
        t.policy.activation = toyrl::Activation::Identity;
      } else {
        fail("policy.activation", "expected \"tanh\" or \"identity\"");
      }
    }
    r.finish();
  }
  t.policy.frame_size = t.env.frame_size;
  if (const json* tr = root.raw("train")) {
    Reader r(*tr, "train");
    r.uint("total_env_steps", t.total_env_steps);
    r.uint("batch_size", t.batch_size);
    r.uint("replay_capacity", t.replay_capacity);
    r.uint("eval_every", t.eval_every);
    r.uint("eval_episodes", t.eval_episodes);
    r.uint("seed_steps", t.seed_steps);
    r.uint("update_every", t.update_every);
    r.uint("n_step", t.n_step);
    r.real("tau", t.tau);
    r.real("lr", t.lr);
    r.real("encoder_lr_scale", t.encoder_lr_scale);
    r.real("std_start", t.std_start);
    r.real("std_end", t.std_end);
    r.real("std_decay_fraction", t.std_decay_fraction);
    r.real("target_noise_std", t.target_noise_std);
    r.real("target_noise_clip", t.target_noise_clip);
    r.boolean("share_aug_params", t.share_aug_params);
    r.finish();
  }
  checked("env", [&] { toyrl::validate(t.env); });
  checked("policy", [&] { toyrl::validate(t.policy); });

  if (const json* e = root.raw("eval")) {
    Reader r(*e, "eval");
    r.string("policy", cfg.eval.policy);
    r.uint("episodes", cfg.eval.episodes);
    if (const json* tf = r.raw("transform"); tf != nullptr && !tf->is_null() && *tf != "none") {
      cfg.eval.transform = spec_from_json(*tf, "eval.transform");
    }
    r.finish();
  }
  if (const json* a = root.raw("augment")) {
    Reader r(*a, "augment");
    r.string("input", cfg.augment.input);
    r.finish();
  }
  if (const json* s = root.raw("sweep_hardness")) {
    Reader r(*s, "sweep_hardness");
    if (const json* op = r.raw("op")) cfg.sweep_hardness.op = spec_from_json(*op, "sweep_hardness.op");
    r.uint_list("strengths", cfg.sweep_hardness.strengths);
    r.string("policy", cfg.sweep_hardness.policy);
    r.uint("episodes", cfg.sweep_hardness.episodes);
    r.boolean("train_baseline", cfg.sweep_hardness.train_baseline);
    r.finish();
  }
  if (const json* s = root.raw("sweep_diversity")) {
    Reader r(*s, "sweep_diversity");
    if (const json* op = r.raw("op")) cfg.sweep_diversity.op = spec_from_json(*op, "sweep_diversity.op");
    r.uint_list("diversities", cfg.sweep_diversity.diversities);
    r.finish();
  }
  if (const json* c = root.raw("compare")) {
    Reader r(*c, "compare");
    if (const json* runs = r.raw("runs")) {
      if (!runs->is_array()) fail("compare.runs", "expected an array of directories");
      cfg.compare.runs.clear();
      for (std::size_t i = 0; i < runs->size(); ++i) {
        if (!(*runs)[i].is_string()) fail("compare.runs[" + std::to_string(i) + "]", "expected a string");
        cfg.compare.runs.push_back((*runs)[i].get<std::string>());
      }
    }
    r.finish();
  }
  root.finish();

  if (cfg.eval.episodes == 0) fail("eval.episodes", "must be at least 1");
  if (cfg.sweep_hardness.episodes == 0) fail("sweep_hardness.episodes", "must be at least 1");
  if (cfg.sweep_hardness.strengths.empty()) fail("sweep_hardness.strengths", "must not be empty");
  if (cfg.sweep_diversity.diversities.empty()) fail("sweep_diversity.diversities", "must not be empty");
  if (cfg.sweep_diversity.op.strength_min != cfg.sweep_diversity.op.strength_max) {
    fail("sweep_diversity.op", "needs a single strength");
  }
  if (!has_param_sets(cfg.sweep_diversity.op.kind)) {
    fail("sweep_diversity.op.op", "needs pad_resize_hd, crop_shift_hd or translate_hd");
  }
  return cfg;
}

json load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
}

json to_json(const ExperimentConfig& cfg) {
  const auto& t = cfg.train;
  json eval{{"policy", cfg.eval.policy}, {"episodes", cfg.eval.episodes}};
  eval["transform"] = cfg.eval.transform ? spec_to_json(*cfg.eval.transform) : json(nullptr);
  return json{
      {"seed", cfg.seed},
      {"seeds", cfg.seeds},
      {"parallel_seeds", cfg.parallel_seeds},
      {"augmentation", augmentation_to_json(t.augmentation)},
      {"env", env_to_json(t.env)},
      {"policy",
       {{"hidden", t.policy.hidden},
        {"activation", t.policy.activation == toyrl::Activation::Identity ? "identity" : "tanh"}}},
      {"train",
       {{"total_env_steps", t.total_env_steps},
        {"batch_size", t.batch_size},
        {"replay_capacity", t.replay_capacity},
        {"eval_every", t.eval_every},
        {"eval_episodes", t.eval_episodes},
        {"seed_steps", t.seed_steps},
        {"update_every", t.update_every},
        {"n_step", t.n_step},
        {"tau", t.tau},
        {"lr", t.lr},
        {"encoder_lr_scale", t.encoder_lr_scale},
        {"std_start", t.std_start},
        {"std_end", t.std_end},
        {"std_decay_fraction", t.std_decay_fraction},
        {"target_noise_std", t.target_noise_std},
        {"target_noise_clip", t.target_noise_clip},
        {"share_aug_params", t.share_aug_params}}},
      {"eval", eval},
      {"augment", {{"input", cfg.augment.input}}},
      {"sweep_hardness",
       {{"op", spec_to_json(cfg.sweep_hardness.op)},
        {"strengths", cfg.sweep_hardness.strengths},
        {"policy", cfg.sweep_hardness.policy},
        {"episodes", cfg.sweep_hardness.episodes},
        {"train_baseline", cfg.sweep_hardness.train_baseline}}},
      {"sweep_diversity",
       {{"op", spec_to_json(cfg.sweep_diversity.op)}, {"diversities", cfg.sweep_diversity.diversities}}},
      {"compare", {{"runs", cfg.compare.runs}}},
  };
}

void resolve(ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) cfg.seeds = {cfg.seed};
  const FrameSize frame{cfg.train.env.frame_size, cfg.train.env.frame_size};
  auto& aug = cfg.train.augmentation;
  checked("augmentation", [&] {
    if (auto* s = std::get_if<TransformSpec>(&aug)) presample_if_needed(*s, cfg.seed, frame);
    if (auto* f = std::get_if<FusionSchedule>(&aug)) {
      for (auto& op : f->ops) presample_if_needed(op, cfg.seed, frame);
    }
  });
  checked("eval.transform", [&] {
    if (cfg.eval.transform) presample_if_needed(*cfg.eval.transform, cfg.seed, frame);
  });
  checked("train", [&] { toyrl::validate(cfg.train); });
}

}  // namespace augrl::cli
