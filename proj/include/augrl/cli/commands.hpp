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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "augrl/cli/config.hpp"

namespace augrl::cli {

// Subcommands. Each cmd_* throws augrl::Error on failure; run() turns
// errors into the exit-code contract below. Every command that writes files
// also writes resolved_config.json, which parse_config accepts unchanged.

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

inline constexpr const char* kResolvedConfigName = "resolved_config.json";
inline constexpr const char* kCurveFileName = "curve.csv";
inline constexpr const char* kHardnessFileName = "hardness.csv";
inline constexpr const char* kDiversityFileName = "diversity.csv";
inline constexpr const char* kEvalFileName = "eval.csv";
inline constexpr const char* kCompareCsvName = "compare.csv";
inline constexpr const char* kCompareTextName = "compare.txt";

inline constexpr const char* kDiversityCsvHeader =
    "diversity,strength_diversity,spatial_diversity,type_diversity,seed,final_return_mean,final_return_iqm";
inline constexpr const char* kEvalCsvHeader = "seed,transform,episode,return";

/// "policy_seed<k>.arlp"
std::string policy_file_name(std::uint64_t seed);

/// Entry point: parses flags, applies them over the --config file and
/// dispatches. 0 success, 1 runtime error, 2 config or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes the augmented batch to `out_file` and the resolved config to
/// "<out_file>.resolved_config.json". Input and output format follow the
/// file extension (.png or ARLT).
void cmd_augment(const ExperimentConfig& cfg, const std::filesystem::path& out_file);

/// One run per seed: curve.csv (all seeds) and one policy file per seed.
void cmd_train(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// eval.csv: one row per episode per seed.
void cmd_eval(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// hardness.csv: one curve block per seed, then the pooled pearson_r.
void cmd_sweep_hardness(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// diversity.csv: final return of one training run per (diversity, seed).
void cmd_sweep_diversity(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Per-step IQM over seeds of each run's return_mean, one column per run.
struct CompareTable {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> steps;
  /// values[row][column]; empty where a run has no point at that step.
  std::vector<std::vector<std::optional<double>>> values;
};

CompareTable compare_runs(const std::vector<std::filesystem::path>& run_dirs);
void write_compare_csv(std::ostream& os, const CompareTable& table);
/// Right-aligned columns, three decimals.
void write_compare_text(std::ostream& os, const CompareTable& table);

/// Prints the text table to `out`; with an output directory also writes
/// compare.csv, compare.txt and the resolved config there.
void cmd_compare(const ExperimentConfig& cfg, const std::optional<std::filesystem::path>& out_dir,
                 std::ostream& out);

}  // namespace augrl::cli
