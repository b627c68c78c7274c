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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "augrl/fusion.hpp"
#include "augrl/transforms.hpp"

namespace augrl {

inline constexpr std::uint32_t kDefaultEvalEpisodes = 20;

struct ReturnContext {
  std::string policy_id;
  std::string env_id;
  std::string transform = "none";
  std::uint64_t seed = 0;
};

/// Episode returns of one policy under one observation pipeline.
struct ReturnSample {
  std::vector<double> episode_returns;
  ReturnContext context;

  double mean() const;
  std::size_t size() const noexcept { return episode_returns.size(); }
};

/// InvalidValue unless non-empty and finite.
void validate(const ReturnSample& sample);

/// ratio = clean_mean / aug_mean. A zero augmented mean leaves `ratio`
/// empty and sets `degenerate_denominator` instead of inventing a number.
struct HardnessReport {
  ReturnSample clean;
  ReturnSample augmented;
  double clean_mean = 0.0;
  double aug_mean = 0.0;
  std::optional<double> ratio;
  bool degenerate_denominator = false;

  /// The ratio, or DegenerateDenominator.
  double value() const;
};

HardnessReport hardness(const ReturnSample& clean, const ReturnSample& augmented);

double mean(std::span<const double> xs);
double median(std::span<const double> xs);
/// Linear interpolation between closest ranks: position q * (n - 1) in the
/// sorted sample.
double percentile(std::span<const double> xs, double q);
/// Mean of the values x with q25 <= x <= q75. When no sample lies in that
/// band (only possible for n == 2) the band midpoint is returned.
double iqm(std::span<const double> xs);
/// Empty when either axis has zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// Evaluates a policy clean (nullopt) or under the given operator.
using Evaluator = std::function<ReturnSample(const std::optional<TransformSpec>&)>;

struct CurvePoint {
  std::uint32_t strength = 0;
  HardnessReport report;
};

struct HardnessCurve {
  std::vector<CurvePoint> points;
  std::uint64_t seed = 0;
  std::optional<double> pearson_r;
  /// Set when every ratio (or every strength) is equal.
  bool degenerate_variance = false;
  /// Set when some augmented mean was zero; pearson_r is then empty.
  bool degenerate_denominator = false;
};

/// One clean evaluation shared by every strength, then one augmented
/// evaluation per strength using base.with_strength(s). Finite-diversity HD
/// operators are presampled per strength from RngState{presample_seed, s}.
/// pearson_r needs at least three strengths.
HardnessCurve strength_hardness_curve(const Evaluator& evaluator, const TransformSpec& base,
                                      std::span<const std::uint32_t> strengths, std::uint64_t seed = 0,
                                      std::uint64_t presample_seed = 0);

/// Pearson r over the (strength, ratio) pairs of all curves.
struct PooledCorrelation {
  std::optional<double> pearson_r;
  bool degenerate_variance = false;
  bool degenerate_denominator = false;
};
PooledCorrelation pooled_pearson(std::span<const HardnessCurve> curves);

struct DiversityReport {
  std::uint64_t strength_diversity = 0;
  std::optional<std::uint64_t> spatial_diversity;  // nullopt: Unlimited
  std::uint64_t type_diversity = 0;
};

/// strength_max - strength_min + 1, D as given, one type.
DiversityReport diversity_report(const TransformSpec& spec);
/// Counts add across ops; spatial is Unlimited if any op is; type = |ops|.
DiversityReport diversity_report(const FusionSchedule& schedule);

inline constexpr const char* kCurveCsvHeader = "strength,hardness_ratio,clean_mean,aug_mean,n_episodes,seed";

/// Shortest round-trip decimal; "inf" for an absent ratio, "nan" for an
/// absent correlation.
std::string format_real(double v);
std::string format_real(const std::optional<double>& v, const char* absent);

/// Header, then one row per point of every curve, then "# pearson_r=<r>".
void write_curve_csv(std::ostream& os, std::span<const HardnessCurve> curves, const std::optional<double>& pearson_r);

}  // namespace augrl
