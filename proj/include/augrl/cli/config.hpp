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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "augrl/toyrl/trainer.hpp"
#include "augrl/transforms.hpp"

namespace augrl::cli {

// Experiment configuration.
//
// One JSON document holds every command's parameters. Parsing is strict:
// an unknown key, a wrong type or an out-of-range value raises ConfigError
// naming the dotted key path. The resolved form (defaults filled in, HD
// parameter sets presampled) is what gets echoed next to every artifact.

struct EvalSection {
  std::string policy;
  std::uint32_t episodes = kDefaultEvalEpisodes;
  std::optional<TransformSpec> transform;
};

struct AugmentSection {
  std::string input;
};

struct SweepHardnessSection {
  TransformSpec op = TransformSpec::translate_hd(0, std::nullopt);
  std::vector<std::uint32_t> strengths = {0, 2, 4, 8, 12};
  std::string policy;
  std::uint32_t episodes = kDefaultEvalEpisodes;
  /// Train one no-augmentation policy per seed instead of loading `policy`.
  bool train_baseline = false;
};

struct SweepDiversitySection {
  TransformSpec op = TransformSpec::translate_hd(4, std::nullopt);
  /// Spatial diversity levels; 0 stands for Unlimited.
  std::vector<std::uint32_t> diversities = {1, 2, 4, 8};
};

struct CompareSection {
  std::vector<std::string> runs;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  /// Seeds of multi-seed commands; resolves to {seed} when absent.
  std::vector<std::uint64_t> seeds;
  std::uint32_t parallel_seeds = 1;
  /// Carries the augmentation, env and policy sections too.
  toyrl::TrainConfig train;
  EvalSection eval;
  AugmentSection augment;
  SweepHardnessSection sweep_hardness;
  SweepDiversitySection sweep_diversity;
  CompareSection compare;
};

/// Stream that presamples finite-diversity parameter sets for `seed`.
inline constexpr std::uint64_t kPresampleStream = 0x9E5A;

/// Strict parse. Keys absent from `doc` keep their defaults. Checks that
/// need presampled parameter sets wait for resolve().
ExperimentConfig parse_config(const nlohmann::json& doc);
/// Reads a JSON file; IoError if unreadable, ConfigError if malformed.
nlohmann::json load_config_document(const std::filesystem::path& path);
/// Complete tree; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& cfg);

nlohmann::json spec_to_json(const TransformSpec& spec);
/// `path` prefixes error messages.
TransformSpec spec_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json augmentation_to_json(const toyrl::Augmentation& aug);
toyrl::Augmentation augmentation_from_json(const nlohmann::json& j, const std::string& path);

/// Fills in `seeds` and presamples every finite-diversity HD spec that
/// lacks parameter sets, from RngState{seed, kPresampleStream}, then runs
/// the frame-dependent training checks.
void resolve(ExperimentConfig& cfg);

}  // namespace augrl::cli
