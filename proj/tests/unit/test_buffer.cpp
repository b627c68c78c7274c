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

#include <cstring>

#include "augrl/buffer.hpp"
#include "augrl/error.hpp"
#include "augrl/version.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace augrl;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

BufferView view_of(const ImageBatch& b) {
  BufferView v;
  v.data = b.bytes().data();
  v.size_bytes = b.bytes().size();
  v.shape = b.shape();
  v.dtype = b.dtype();
  return v;
}

}  // namespace

TEST_CASE("version handshake") {
  CHECK(version() == "0.1.0");
  CHECK(version_compatible("0.1.0"));
  CHECK(version_compatible("0.0.7"));
  CHECK_FALSE(version_compatible("0.2.0"));
  CHECK_FALSE(version_compatible("1.0.0"));
  CHECK_FALSE(version_compatible("0.1"));
  CHECK_FALSE(version_compatible("0.1.0-rc1"));
  CHECK_FALSE(version_compatible(""));
}

TEST_CASE("buffer apply equals batch apply with the augment stream") {
  for (DType dt : {DType::U8, DType::F32}) {
    const auto b = testutil::random_batch({8, 3, 84, 84}, dt, 3);
    const auto spec = TransformSpec::rand_pad_resize(0, 16);
    CHECK(apply_buffer(view_of(b), spec, 3) == apply(spec, b, augment_stream(3)));
    CHECK(apply_buffer(view_of(b), default_cycaug(), 3) == apply(default_cycaug(), b, augment_stream(3)));
  }
}

TEST_CASE("buffer apply with pad 0 returns the input content") {
  const auto b = testutil::random_batch({2, 1, 9, 9}, DType::U8, 4);
  CHECK(apply_buffer(view_of(b), TransformSpec::pad_crop(0), 11) == b);
}

TEST_CASE("buffer layout validation happens before any kernel") {
  const auto b = testutil::random_batch({2, 3, 4, 4}, DType::U8, 5);
  auto v = view_of(b);
  v.size_bytes -= 1;
  CHECK(code_of([&] { batch_from_buffer(v); }) == ErrorCode::InvalidShape);

  v = view_of(b);
  v.has_strides = true;
  v.strides = {48, 16, 4, 1};
  CHECK_NOTHROW(batch_from_buffer(v));
  v.strides = {48, 1, 12, 3};  // channels-last
  CHECK(code_of([&] { batch_from_buffer(v); }) == ErrorCode::InvalidShape);

  v = view_of(b);
  v.data = nullptr;
  CHECK(code_of([&] { batch_from_buffer(v); }) == ErrorCode::InvalidValue);

  v = view_of(b);
  v.shape.c = 2;
  v.size_bytes = 2 * 2 * 16;
  CHECK(code_of([&] { batch_from_buffer(v); }) == ErrorCode::InvalidShape);
}

TEST_CASE("f32 buffers outside [0,1] are rejected") {
  std::vector<float> px(4, 0.5f);
  px[2] = 1.5f;
  BufferView v;
  v.data = px.data();
  v.size_bytes = px.size() * sizeof(float);
  v.shape = {1, 1, 2, 2};
  v.dtype = DType::F32;
  CHECK(code_of([&] { batch_from_buffer(v); }) == ErrorCode::InvalidValue);
}
