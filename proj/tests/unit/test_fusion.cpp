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

#include <algorithm>
#include <cmath>

#include "augrl/error.hpp"
#include "augrl/fusion.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace augrl;

namespace {

FusionSchedule make(FusionScheme scheme, std::vector<TransformSpec> ops) {
  FusionSchedule s;
  s.scheme = scheme;
  s.ops = std::move(ops);
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  for (auto s : {FusionScheme::Compose, FusionScheme::Sample, FusionScheme::Mix, FusionScheme::Cycle}) {
    CHECK(parse_scheme_name(scheme_name(s)) == s);
  }
  CHECK_FALSE(parse_scheme_name("CycAug").has_value());
}

TEST_CASE("cycle index trace for interval 3") {
  auto s = make(FusionScheme::Cycle, {TransformSpec::pad_crop(1), TransformSpec::cutout(1)});
  s.interval = 3;
  const std::size_t expect[] = {0, 0, 0, 1, 1, 1, 0, 0, 0};
  for (std::size_t step = 0; step < 9; ++step) {
    CHECK(s.active_index() == expect[step]);
    if (step < 8) s = tick(s, 1);
  }
}

TEST_CASE("tick counts, rejects zero and overflow") {
  auto s = default_cycaug();
  s = tick(s, 5);
  CHECK(s.step_counter == 5);
  CHECK(code_of([&] { tick(s, 0); }) == ErrorCode::InvalidValue);
  s.step_counter = kMaxStepCounter - 1;
  s = tick(s, 1);
  CHECK(s.step_counter == kMaxStepCounter);
  CHECK(code_of([&] { tick(s, 1); }) == ErrorCode::CounterOverflow);
}

TEST_CASE("default cycaug configuration") {
  const auto s = default_cycaug();
  CHECK(s.scheme == FusionScheme::Cycle);
  CHECK(s.interval == 100000);
  REQUIRE(s.ops.size() == 2);
  CHECK(s.ops[0] == TransformSpec::pad_crop(4));
  CHECK(s.ops[1] == TransformSpec::rand_pad_resize(0, 16));
  CHECK(default_cycaug(20000).interval == 20000);
}

TEST_CASE("apply never touches the counter and cycle follows the active op") {
  auto s = make(FusionScheme::Cycle, {TransformSpec::translate_hd(2, std::nullopt), TransformSpec::cutout(3)});
  s.interval = 2;
  const auto b = testutil::random_batch({3, 3, 10, 10}, DType::U8, 1);
  const RngState r{4, 4};
  for (int step = 0; step < 6; ++step) {
    const auto before = s;
    const auto out = apply(s, b, r);
    CHECK(s == before);
    CHECK(out == apply(s.ops[s.active_index()], b, r));
    s = tick(s, 1);
  }
}

TEST_CASE("single-op schedules equal the op itself") {
  const auto b = testutil::random_batch({6, 3, 12, 12}, DType::U8, 2);
  const RngState r{9, 1};
  for (const auto& op : {TransformSpec::rand_pad_resize(0, 8), TransformSpec::rotate(30), TransformSpec::pad_crop(2)}) {
    const auto direct = apply(op, b, r);
    CHECK(apply(make(FusionScheme::Compose, {op}), b, r) == direct);
    CHECK(apply(make(FusionScheme::Sample, {op}), b, r) == direct);
    CHECK(apply(make(FusionScheme::Cycle, {op}), b, r) == direct);
    auto mix = make(FusionScheme::Mix, {op});
    mix.mix_width = 1;
    CHECK(apply(mix, b, r) == direct);
  }
}

TEST_CASE("compose applies ops in sequence per image") {
  const auto b = testutil::random_batch({3, 1, 9, 9}, DType::F32, 3);
  const auto a = TransformSpec::translate_hd(2, std::nullopt);
  const auto c = TransformSpec::cutout(2);
  const RngState r{2, 2};
  const auto out = apply(make(FusionScheme::Compose, {a, c}), b, r);
  for (std::uint32_t i = 0; i < 3; ++i) {
    Rng rng(r.derive(i));
    const Image img = b.image(i);
    const Image step1 = apply_image(a, img.view(), rng);
    const Image step2 = apply_image(c, step1.view(), rng);
    CHECK(out.image(i).data == step2.data);
  }
}

TEST_CASE("shuffled compose uses one order per batch") {
  auto s = make(FusionScheme::Compose, {TransformSpec::translate_hd(2, std::nullopt), TransformSpec::cutout(2)});
  s.order = ComposeOrder::Shuffled;
  const auto b = testutil::random_batch({2, 1, 9, 9}, DType::F32, 4);
  CHECK(apply(s, b, {1, 1}) == apply(s, b, {1, 1}));
}

TEST_CASE("sample frequencies over 10^4 images") {
  // On a constant 0.25 image translate leaves zeros and cutout never does,
  // so each output identifies the op that produced it.
  auto s = make(FusionScheme::Sample, {TransformSpec::translate_hd(2, std::nullopt), TransformSpec::cutout(2)});
  const std::uint32_t n = 10000;
  const auto out = apply(s, new_batch(n, 1, 6, 6, DType::F32, 0.25), {5, 5});
  std::uint32_t first = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto px = out.f32().subspan(i * 36, 36);
    first += std::find(px.begin(), px.end(), 0.0f) != px.end();
  }
  const double p = static_cast<double>(first) / n;
  CHECK(p >= 0.47);
  CHECK(p <= 0.53);
}

TEST_CASE("mix weights form a simplex and the output is their blend") {
  auto s = make(FusionScheme::Mix, {TransformSpec::translate_hd(3, std::nullopt), TransformSpec::cutout(4)});
  s.mix_width = 3;
  const Image img = testutil::random_image(3, 10, 10, 6);
  Rng rng(6, 6);
  for (int t = 0; t < 20; ++t) {
    const MixResult m = mix_image(s, img.view(), rng);
    REQUIRE(m.weights.size() == 3);
    double sum = 0.0;
    for (double w : m.weights) {
      CHECK(w >= 0.0);
      sum += w;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-12);
    for (std::size_t p = 0; p < img.data.size(); ++p) {
      float lo = m.components[0].data[p], hi = lo;
      double blend = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        lo = std::min(lo, m.components[j].data[p]);
        hi = std::max(hi, m.components[j].data[p]);
        blend += m.weights[j] * m.components[j].data[p];
      }
      REQUIRE(m.output.data[p] >= lo);
      REQUIRE(m.output.data[p] <= hi);
      REQUIRE(m.output.data[p] == static_cast<float>(blend));
    }
  }
}

TEST_CASE("schedule validation") {
  CHECK(code_of([] { validate(make(FusionScheme::Sample, {})); }) == ErrorCode::InvalidSchedule);
  auto s = default_cycaug();
  s.interval = 0;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSchedule);
  s = make(FusionScheme::Mix, {TransformSpec::cutout(1)});
  s.dirichlet_alpha = 0.0;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidSchedule);
  const auto b = new_batch(1, 1, 4, 4, DType::U8, 0);
  CHECK(code_of([&] { apply(make(FusionScheme::Compose, {TransformSpec::cutout(5)}), b, {}); }) ==
        ErrorCode::InvalidStrength);
}
