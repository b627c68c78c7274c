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
#include "augrl/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "augrl/buffer.hpp"
#include "augrl/error.hpp"
#include "augrl/io.hpp"
#include "augrl/metrics.hpp"

namespace augrl::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::mutex g_log_mutex;

void log_line(std::ostream& log, const std::string& line) {
  const std::lock_guard lock(g_log_mutex);
  log << line << '\n' << std::flush;
}

// Runs task(i) for i in [0, count) on up to `threads` workers. Results are
// indexed by task, so output order never depends on scheduling. The first
// failing task (by index) is rethrown.
template <typename R, typename F>
std::vector<R> parallel_tasks(std::size_t count, std::uint32_t threads, F task) {
  std::vector<std::optional<R>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::mutex m;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        const std::lock_guard lock(m);
        if (next == count) return;
        i = next++;
      }
      try {
        results[i].emplace(task(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return os;
}

void write_text(const fs::path& path, const std::string& text) {
  auto os = open_out(path);
  os << text;
  if (!os) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::string resolved_text(const ExperimentConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

void prepare_dir(const fs::path& dir, const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_text(dir / kResolvedConfigName, resolved_text(cfg));
}

toyrl::TinyPolicy load_policy_checked(const std::string& path, const toyrl::EnvConfig& env, const char* key) {
  if (path.empty()) {
    throw Error(ErrorCode::ConfigError, std::string(key) + ": no policy given; pass --policy <file.arlp> from `augrl train`");
  }
  if (!fs::exists(path)) {
    throw Error(ErrorCode::IoError, "policy file " + path +
                                        " not found; train one with `augrl train --out DIR` and pass "
                                        "DIR/" + policy_file_name(0) + ", or use --train-baseline");
  }
  auto policy = toyrl::load_policy(path);
  if (policy.config().frame_size != env.frame_size) {
    throw Error(ErrorCode::ConfigError, std::string(key) + ": policy expects " +
                                            std::to_string(policy.config().frame_size) + " px frames, env.frame_size is " +
                                            std::to_string(env.frame_size));
  }
  return policy;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

toyrl::TrainConfig seeded(const ExperimentConfig& cfg, std::uint64_t seed) {
  toyrl::TrainConfig t = cfg.train;
  t.seed = seed;
  return t;
}

toyrl::TrainResult train_logged(const toyrl::TrainConfig& t, std::ostream& log, const std::string& tag) {
  return toyrl::train(t, [&](std::uint64_t step, const toyrl::LearningPoint* p) {
    if (p != nullptr) {
      log_line(log, tag + " step " + std::to_string(step) + " return_mean " + fixed3(p->returns.mean()));
    }
  });
}

}  // namespace

std::string policy_file_name(std::uint64_t seed) { return "policy_seed" + std::to_string(seed) + ".arlp"; }

void cmd_augment(const ExperimentConfig& cfg, const fs::path& out_file) {
  if (cfg.augment.input.empty()) throw Error(ErrorCode::ConfigError, "augment.input: no input file given");
  const auto& aug = cfg.train.augmentation;
  if (std::holds_alternative<std::monostate>(aug)) {
    throw Error(ErrorCode::ConfigError, "augmentation: augment needs an operator or a schedule");
  }
  const ImageBatch batch = load_image_file(cfg.augment.input);
  const RngState rng = augment_stream(cfg.seed);
  ImageBatch result = std::holds_alternative<TransformSpec>(aug) ? apply(std::get<TransformSpec>(aug), batch, rng)
                                                                   : apply(std::get<FusionSchedule>(aug), batch, rng);
  if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
  save_image_file(result, out_file);
  write_text(fs::path(out_file.string() + "." + kResolvedConfigName), resolved_text(cfg));
}

void cmd_train(const ExperimentConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  prepare_dir(out_dir, cfg);
  const auto results = parallel_tasks<toyrl::TrainResult>(cfg.seeds.size(), cfg.parallel_seeds, [&](std::size_t i) {
    const auto seed = cfg.seeds[i];
    auto res = train_logged(seeded(cfg, seed), log, "seed " + std::to_string(seed));
    toyrl::save_policy(res.policy, out_dir / policy_file_name(seed));
    return res;
  });
  auto os = open_out(out_dir / kCurveFileName);
  for (std::size_t i = 0; i < results.size(); ++i) {
    toyrl::write_learning_curve_csv(os, results[i].curve, cfg.seeds[i], i == 0);
  }
}

void cmd_eval(const ExperimentConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const auto policy = load_policy_checked(cfg.eval.policy, cfg.train.env, "eval.policy");
  const auto& env = cfg.train.env;
  if (cfg.eval.transform) validate(*cfg.eval.transform, env.frame_size, env.frame_size);
  prepare_dir(out_dir, cfg);
  const auto samples = parallel_tasks<ReturnSample>(cfg.seeds.size(), cfg.parallel_seeds, [&](std::size_t i) {
    return toyrl::evaluate(policy, env, cfg.eval.episodes, cfg.eval.transform, cfg.seeds[i]);
  });
  const std::string label = cfg.eval.transform ? std::string(op_name(cfg.eval.transform->kind)) : "none";
  auto os = open_out(out_dir / kEvalFileName);
  os << kEvalCsvHeader << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& r = samples[i].episode_returns;
    for (std::size_t e = 0; e < r.size(); ++e) {
      os << cfg.seeds[i] << ',' << label << ',' << e << ',' << format_real(r[e]) << '\n';
    }
    log_line(log, "seed " + std::to_string(cfg.seeds[i]) + " mean " + fixed3(samples[i].mean()) + " iqm " +
                      fixed3(iqm(r)));
  }
}

void cmd_sweep_hardness(const ExperimentConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const auto& sw = cfg.sweep_hardness;
  const auto& env = cfg.train.env;
  std::optional<toyrl::TinyPolicy> shared;
  if (!sw.train_baseline) shared = load_policy_checked(sw.policy, env, "sweep_hardness.policy");
  for (const auto s : sw.strengths) validate(sw.op.with_strength(s), env.frame_size, env.frame_size);
  prepare_dir(out_dir, cfg);

  const auto curves = parallel_tasks<HardnessCurve>(cfg.seeds.size(), cfg.parallel_seeds, [&](std::size_t i) {
    const auto seed = cfg.seeds[i];
    toyrl::TinyPolicy policy = shared ? *shared : [&] {
      toyrl::TrainConfig t = seeded(cfg, seed);
      t.augmentation = std::monostate{};
      auto res = train_logged(t, log, "baseline seed " + std::to_string(seed));
      toyrl::save_policy(res.policy, out_dir / policy_file_name(seed));
      return std::move(res.policy);
    }();
    const Evaluator evaluator = [&](const std::optional<TransformSpec>& t) {
      return toyrl::evaluate(policy, env, sw.episodes, t, seed);
    };
    auto curve = strength_hardness_curve(evaluator, sw.op, sw.strengths, seed, seed);
    log_line(log, "seed " + std::to_string(seed) + " pearson_r " + format_real(curve.pearson_r, "nan"));
    return curve;
  });
  const auto pooled = pooled_pearson(curves);
  auto os = open_out(out_dir / kHardnessFileName);
  write_curve_csv(os, curves, pooled.pearson_r);
  log_line(log, "pooled pearson_r " + format_real(pooled.pearson_r, "nan"));
}

void cmd_sweep_diversity(const ExperimentConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const auto& sw = cfg.sweep_diversity;
  const auto& env = cfg.train.env;
  const FrameSize frame{env.frame_size, env.frame_size};
  struct Task {
    std::uint32_t diversity;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  std::vector<TransformSpec> specs;
  for (const auto d : sw.diversities) {
    for (const auto seed : cfg.seeds) {
      TransformSpec spec = sw.op;
      spec.param_sets.clear();
      spec.diversity = d == 0 ? std::nullopt : std::optional<std::uint32_t>(d);
      if (spec.diversity) spec = presample_param_sets(std::move(spec), RngState{seed, kPresampleStream}, frame);
      validate(spec, env.frame_size, env.frame_size);
      tasks.push_back({d, seed});
      specs.push_back(std::move(spec));
    }
  }
  prepare_dir(out_dir, cfg);
  const auto finals = parallel_tasks<ReturnSample>(tasks.size(), cfg.parallel_seeds, [&](std::size_t i) {
    toyrl::TrainConfig t = seeded(cfg, tasks[i].seed);
    t.augmentation = specs[i];
    const std::string tag = "diversity " + std::to_string(tasks[i].diversity) + " seed " + std::to_string(tasks[i].seed);
    return train_logged(t, log, tag).curve.back().returns;
  });
  auto os = open_out(out_dir / kDiversityFileName);
  os << kDiversityCsvHeader << '\n';
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto rep = diversity_report(specs[i]);
    os << tasks[i].diversity << ',' << rep.strength_diversity << ','
       << (rep.spatial_diversity ? std::to_string(*rep.spatial_diversity) : std::string("unlimited")) << ','
       << rep.type_diversity << ',' << tasks[i].seed << ',' << format_real(finals[i].mean()) << ','
       << format_real(iqm(finals[i].episode_returns)) << '\n';
  }
}

CompareTable compare_runs(const std::vector<fs::path>& run_dirs) {
  if (run_dirs.empty()) throw Error(ErrorCode::ConfigError, "compare.runs: no run directories given");
  CompareTable table;
  std::vector<std::map<std::uint64_t, std::vector<double>>> per_run;
  std::map<std::uint64_t, bool> all_steps;
  for (const auto& dir : run_dirs) {
    const fs::path file = dir / kCurveFileName;
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + file.string() + "; is it a `train` output directory?");
    std::string line;
    std::getline(in, line);
    if (line != "step,seed,return_mean,return_iqm") throw Error(ErrorCode::FormatError, file.string() + ": bad header");
    std::map<std::uint64_t, std::vector<double>> by_step;
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::string step, seed, mean;
      if (!std::getline(ss, step, ',') || !std::getline(ss, seed, ',') || !std::getline(ss, mean, ',')) {
        throw Error(ErrorCode::FormatError, file.string() + ":" + std::to_string(lineno) + ": expected 4 columns");
      }
      try {
        const auto s = std::stoull(step);
        by_step[s].push_back(std::stod(mean));
        all_steps[s] = true;
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::FormatError, file.string() + ":" + std::to_string(lineno) + ": not a number");
      }
    }
    per_run.push_back(std::move(by_step));
    fs::path name = dir.filename().empty() ? dir.parent_path().filename() : dir.filename();
    table.labels.push_back(name.string());
  }
  for (const auto& [step, unused] : all_steps) {
    table.steps.push_back(step);
    auto& row = table.values.emplace_back();
    for (const auto& run : per_run) {
      const auto it = run.find(step);
      row.push_back(it == run.end() ? std::nullopt : std::optional<double>(iqm(it->second)));
    }
  }
  return table;
}

void write_compare_csv(std::ostream& os, const CompareTable& table) {
  os << "step";
  for (const auto& l : table.labels) os << ',' << l;
  os << '\n';
  for (std::size_t r = 0; r < table.steps.size(); ++r) {
    os << table.steps[r];
    for (const auto& v : table.values[r]) os << ',' << (v ? format_real(*v) : std::string());
    os << '\n';
  }
}

void write_compare_text(std::ostream& os, const CompareTable& table) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"step"});
  for (const auto& l : table.labels) cells.back().push_back(l);
  for (std::size_t r = 0; r < table.steps.size(); ++r) {
    auto& row = cells.emplace_back();
    row.push_back(std::to_string(table.steps[r]));
    for (const auto& v : table.values[r]) row.push_back(v ? fixed3(*v) : "-");
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << '\n';
  }
}

void cmd_compare(const ExperimentConfig& cfg, const std::optional<fs::path>& out_dir, std::ostream& out) {
  std::vector<fs::path> dirs(cfg.compare.runs.begin(), cfg.compare.runs.end());
  const auto table = compare_runs(dirs);
  std::ostringstream text;
  write_compare_text(text, table);
  out << text.str();
  if (out_dir) {
    prepare_dir(*out_dir, cfg);
    auto csv = open_out(*out_dir / kCompareCsvName);
    write_compare_csv(csv, table);
    write_text(*out_dir / kCompareTextName, text.str());
  }
}

namespace {

// Flag values land in the JSON tree before parsing so that one strict
// parser sees file and flags alike.
struct Flags {
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  std::string config;
  std::string out;
  std::optional<std::uint32_t> parallel_seeds;
  bool dry_run = false;

  std::string input;
  std::string aug;
  std::optional<std::uint64_t> steps;
  std::string policy;
  std::optional<std::uint32_t> episodes;
  std::string transform;
  std::string op;
  std::vector<std::uint32_t> strengths;
  std::vector<std::uint32_t> diversities;
  bool train_baseline = false;
  std::vector<std::string> runs;
};

json parse_flag_json(const std::string& text, const char* flag) {
  if (text == "none") return nullptr;
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string(flag) + ": " + e.what());
  }
}

json merged_document(const Flags& f, const std::string& command) {
  json doc = f.config.empty() ? json::object() : load_config_document(f.config);
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "<root>: expected an object");
  if (f.seed) {
    doc["seed"] = *f.seed;
    doc.erase("seeds");
  }
  if (!f.seeds.empty()) doc["seeds"] = f.seeds;
  if (f.parallel_seeds) doc["parallel_seeds"] = *f.parallel_seeds;
  auto section = [&](const char* key) -> json& {
    json& s = doc[key];
    if (s.is_null()) s = json::object();
    return s;
  };
  if (!f.aug.empty()) doc["augmentation"] = parse_flag_json(f.aug, "--aug");
  if (f.steps) section("train")["total_env_steps"] = *f.steps;
  if (command == "augment" && !f.input.empty()) section("augment")["input"] = f.input;
  if (command == "eval") {
    if (!f.policy.empty()) section("eval")["policy"] = f.policy;
    if (f.episodes) section("eval")["episodes"] = *f.episodes;
    if (!f.transform.empty()) section("eval")["transform"] = parse_flag_json(f.transform, "--transform");
  }
  if (command == "sweep-hardness") {
    if (!f.policy.empty()) section("sweep_hardness")["policy"] = f.policy;
    if (f.episodes) section("sweep_hardness")["episodes"] = *f.episodes;
    if (!f.op.empty()) section("sweep_hardness")["op"] = parse_flag_json(f.op, "--op");
    if (!f.strengths.empty()) section("sweep_hardness")["strengths"] = f.strengths;
    if (f.train_baseline) section("sweep_hardness")["train_baseline"] = true;
  }
  if (command == "sweep-diversity") {
    if (!f.op.empty()) section("sweep_diversity")["op"] = parse_flag_json(f.op, "--op");
    if (!f.diversities.empty()) section("sweep_diversity")["diversities"] = f.diversities;
  }
  if (command == "compare" && !f.runs.empty()) section("compare")["runs"] = f.runs;
  return doc;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic image augmentation for pixel-based RL, with a toy trainer and metrics."};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--seed", f.seed, "Base seed; replaces any seed list from the config");
  app.add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  app.add_option("--out", f.out, "Output directory (output file for augment)");
  app.add_option("--parallel-seeds", f.parallel_seeds, "Worker threads for per-seed work")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dry-run", f.dry_run, "Print the resolved config and exit without writing");

  auto* augment = app.add_subcommand("augment", "Augment an ARLT or PNG file");
  augment->add_option("--in", f.input, "Input file (.png or ARLT)");
  augment->add_option("--aug", f.aug, "Operator or schedule as JSON");

  auto* train = app.add_subcommand("train", "Train the toy agent, one run per seed");
  train->add_option("--aug", f.aug, "Operator or schedule as JSON, or none");
  train->add_option("--steps", f.steps, "Environment steps per run");
  train->add_option("--seeds", f.seeds, "Comma-separated seeds")->delimiter(',');

  auto* eval = app.add_subcommand("eval", "Evaluate a saved policy");
  eval->add_option("--policy", f.policy, "Policy file from train");
  eval->add_option("--episodes", f.episodes, "Episodes per seed");
  eval->add_option("--transform", f.transform, "Observation operator as JSON, or none");
  eval->add_option("--seeds", f.seeds, "Comma-separated seeds")->delimiter(',');

  auto* hard = app.add_subcommand("sweep-hardness", "Hardness ratio against operator strength");
  hard->add_option("--policy", f.policy, "Policy file from train");
  hard->add_option("--op", f.op, "Base operator as JSON");
  hard->add_option("--strengths", f.strengths, "Comma-separated strengths")->delimiter(',');
  hard->add_option("--episodes", f.episodes, "Episodes per evaluation");
  hard->add_flag("--train-baseline", f.train_baseline, "Train a no-augmentation policy per seed first");
  hard->add_option("--seeds", f.seeds, "Comma-separated seeds")->delimiter(',');
  hard->add_option("--steps", f.steps, "Environment steps per baseline run");

  auto* div = app.add_subcommand("sweep-diversity", "Final return against spatial diversity");
  div->add_option("--op", f.op, "HD operator as JSON");
  div->add_option("--diversities", f.diversities, "Comma-separated levels, 0 for unlimited")->delimiter(',');
  div->add_option("--seeds", f.seeds, "Comma-separated seeds")->delimiter(',');
  div->add_option("--steps", f.steps, "Environment steps per run");

  auto* cmp = app.add_subcommand("compare", "IQM-over-seeds table of train runs");
  cmp->add_option("runs", f.runs, "Run directories written by train");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = parse_config(merged_document(f, command));
    resolve(cfg);
    if (f.dry_run) {
      out << resolved_text(cfg);
      return kExitOk;
    }
    if (command == "compare") {
      cmd_compare(cfg, f.out.empty() ? std::nullopt : std::optional<fs::path>(f.out), out);
      return kExitOk;
    }
    if (f.out.empty()) throw Error(ErrorCode::ConfigError, "--out: required for " + command);
    if (command == "augment") cmd_augment(cfg, f.out);
    if (command == "train") cmd_train(cfg, f.out, err);
    if (command == "eval") cmd_eval(cfg, f.out, err);
    if (command == "sweep-hardness") cmd_sweep_hardness(cfg, f.out, err);
    if (command == "sweep-diversity") cmd_sweep_diversity(cfg, f.out, err);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace augrl::cli
