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

#include <array>
#include <cmath>
#include <set>

#include "augrl/rng.hpp"
#include "doctest.h"

using augrl::Rng;
using augrl::RngState;

// Known-answer vectors from the Random123 distribution (kat_vectors,
// philox4x32 with 10 rounds).
TEST_CASE("philox4x32_10 matches Random123 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(augrl::philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(augrl::philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(augrl::philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("generator consumes blocks word by word") {
  Rng rng(0x0123456789ABCDEFull, 0xFEDCBA9876543210ull);
  const auto b0 = augrl::philox4x32_10({0, 0, 0x76543210u, 0xFEDCBA98u}, {0x89ABCDEFu, 0x01234567u});
  const auto b1 = augrl::philox4x32_10({1, 0, 0x76543210u, 0xFEDCBA98u}, {0x89ABCDEFu, 0x01234567u});
  for (auto w : b0) CHECK(rng.next_u32() == w);
  CHECK(rng.next_u64() == ((std::uint64_t{b1[1]} << 32) | b1[0]));
}

TEST_CASE("equal states replay, derived streams differ") {
  const RngState s{42, 7};
  Rng a(s), b(s);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  std::set<std::uint64_t> streams;
  for (std::uint64_t t = 0; t < 1000; ++t) streams.insert(s.derive(t).stream);
  CHECK(streams.size() == 1000);
  CHECK(s.derive(3) == s.derive(3));
  CHECK(s.derive(3).seed == s.seed);
}

TEST_CASE("uniform_int stays in range and hits every value") {
  Rng rng(1, 2);
  std::array<int, 7> counts{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.uniform_int(3, 9);
    REQUIRE(v >= 3);
    REQUIRE(v <= 9);
    ++counts[v - 3];
  }
  for (int c : counts) CHECK(c > 800);
}

TEST_CASE("degenerate uniform_int consumes nothing") {
  Rng a(5, 5), b(5, 5);
  CHECK(a.uniform_int(4, 4) == 4);
  CHECK(a.next_u32() == b.next_u32());
}

TEST_CASE("uniform01 in [0,1) with the expected mean") {
  Rng rng(9, 9);
  double s = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    s += u;
  }
  // sd of the mean is sqrt(1/12/n) ~ 6.5e-4
  CHECK(std::fabs(s / n - 0.5) < 4e-3);
}

TEST_CASE("normal and gamma moments") {
  Rng rng(11, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::fabs(s / n) < 0.02);
  CHECK(std::fabs(s2 / n - 1.0) < 0.02);

  for (double shape : {0.5, 1.0, 3.0}) {
    double g = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.gamma(shape);
      REQUIRE(x > 0.0);
      g += x;
    }
    CHECK(std::fabs(g / n - shape) < 0.03 * std::max(1.0, shape));
  }
}
