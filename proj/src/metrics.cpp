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

#include "augrl/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "augrl/error.hpp"

namespace augrl {
namespace {

void require_nonempty(std::span<const double> xs, const char* what) {
  if (xs.empty()) throw Error(ErrorCode::InvalidValue, std::string(what) + " of an empty sample");
}

std::vector<double> sorted(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return v;
}

double percentile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

}  // namespace

double ReturnSample::mean() const { return augrl::mean(episode_returns); }

void validate(const ReturnSample& sample) {
  if (sample.episode_returns.empty()) throw Error(ErrorCode::InvalidValue, "return sample is empty");
  for (double r : sample.episode_returns) {
    if (!std::isfinite(r)) throw Error(ErrorCode::InvalidValue, "return sample holds a non-finite value");
  }
}

double HardnessReport::value() const {
  if (!ratio) throw Error(ErrorCode::DegenerateDenominator, "augmented mean return is zero");
  return *ratio;
}

HardnessReport hardness(const ReturnSample& clean, const ReturnSample& augmented) {
  validate(clean);
  validate(augmented);
  HardnessReport r;
  r.clean = clean;
  r.augmented = augmented;
  r.clean_mean = clean.mean();
  r.aug_mean = augmented.mean();
  if (r.aug_mean == 0.0) {
    r.degenerate_denominator = true;
  } else {
    r.ratio = r.clean_mean / r.aug_mean;
  }
  return r;
}

double mean(std::span<const double> xs) {
  require_nonempty(xs, "mean");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double median(std::span<const double> xs) {
  require_nonempty(xs, "median");
  return percentile_sorted(sorted(xs), 0.5);
}

double percentile(std::span<const double> xs, double q) {
  require_nonempty(xs, "percentile");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidValue, "percentile q must be in [0, 1]");
  return percentile_sorted(sorted(xs), q);
}

double iqm(std::span<const double> xs) {
  require_nonempty(xs, "iqm");
  const auto v = sorted(xs);
  const double q25 = percentile_sorted(v, 0.25);
  const double q75 = percentile_sorted(v, 0.75);
  double sum = 0.0;
  std::size_t count = 0;
  for (double x : v) {
    if (x >= q25 && x <= q75) {
      sum += x;
      ++count;
    }
  }
  if (count == 0) return 0.5 * (q25 + q75);
  return sum / static_cast<double>(count);
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::InvalidValue, "pearson needs equally long axes");
  require_nonempty(xs, "pearson");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

struct PairStats {
  std::optional<double> r;
  bool degenerate_variance = false;
  bool degenerate_denominator = false;
};

PairStats correlate(std::span<const HardnessCurve> curves) {
  PairStats out;
  std::vector<double> xs, ys;
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      if (!p.report.ratio) {
        out.degenerate_denominator = true;
        continue;
      }
      xs.push_back(p.strength);
      ys.push_back(*p.report.ratio);
    }
  }
  if (out.degenerate_denominator || xs.size() < 3) return out;
  out.r = pearson(xs, ys);
  out.degenerate_variance = !out.r.has_value();
  return out;
}

}  // namespace

HardnessCurve strength_hardness_curve(const Evaluator& evaluator, const TransformSpec& base,
                                      std::span<const std::uint32_t> strengths, std::uint64_t seed,
                                      std::uint64_t presample_seed) {
  if (strengths.empty()) throw Error(ErrorCode::InvalidValue, "strength list is empty");
  HardnessCurve curve;
  curve.seed = seed;
  const ReturnSample clean = evaluator(std::nullopt);
  for (std::uint32_t s : strengths) {
    TransformSpec spec = base.with_strength(s);
    if (spec.diversity && has_param_sets(spec.kind)) {
      spec = presample_param_sets(spec, RngState{presample_seed, s});
    }
    curve.points.push_back({s, hardness(clean, evaluator(spec))});
  }
  const HardnessCurve* one = &curve;
  const PairStats st = correlate(std::span(one, 1));
  curve.pearson_r = st.r;
  curve.degenerate_variance = st.degenerate_variance;
  curve.degenerate_denominator = st.degenerate_denominator;
  return curve;
}

PooledCorrelation pooled_pearson(std::span<const HardnessCurve> curves) {
  const PairStats st = correlate(curves);
  return {st.r, st.degenerate_variance, st.degenerate_denominator};
}

DiversityReport diversity_report(const TransformSpec& spec) {
  validate(spec);
  DiversityReport r;
  r.strength_diversity = static_cast<std::uint64_t>(spec.strength_max) - spec.strength_min + 1;
  if (spec.diversity) r.spatial_diversity = *spec.diversity;
  r.type_diversity = 1;
  return r;
}

DiversityReport diversity_report(const FusionSchedule& schedule) {
  validate(schedule);
  DiversityReport r;
  std::uint64_t spatial = 0;
  bool unlimited = false;
  for (const auto& op : schedule.ops) {
    const DiversityReport one = diversity_report(op);
    r.strength_diversity += one.strength_diversity;
    if (one.spatial_diversity) {
      spatial += *one.spatial_diversity;
    } else {
      unlimited = true;
    }
  }
  if (!unlimited) r.spatial_diversity = spatial;
  r.type_diversity = schedule.ops.size();
  return r;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_real(const std::optional<double>& v, const char* absent) {
  return v ? format_real(*v) : std::string(absent);
}

void write_curve_csv(std::ostream& os, std::span<const HardnessCurve> curves, const std::optional<double>& pearson_r) {
  os << kCurveCsvHeader << '\n';
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      os << p.strength << ',' << format_real(p.report.ratio, "inf") << ',' << format_real(p.report.clean_mean) << ','
         << format_real(p.report.aug_mean) << ',' << p.report.augmented.size() << ',' << c.seed << '\n';
    }
  }
  os << "# pearson_r=" << format_real(pearson_r, "nan") << '\n';
}

}  // namespace augrl
