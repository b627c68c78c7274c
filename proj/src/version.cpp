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

#include "augrl/version.hpp"

#include <charconv>

namespace augrl {
namespace {

struct Parsed {
  int major = -1;
  int minor = -1;
  int patch = -1;
};

Parsed parse(std::string_view v) noexcept {
  Parsed p;
  int* parts[3] = {&p.major, &p.minor, &p.patch};
  const char* it = v.data();
  const char* end = v.data() + v.size();
  for (int i = 0; i < 3; ++i) {
    const auto res = std::from_chars(it, end, *parts[i]);
    if (res.ec != std::errc{}) return {};
    it = res.ptr;
    if (i < 2) {
      if (it == end || *it != '.') return {};
      ++it;
    }
  }
  if (it != end) return {};
  return p;
}

}  // namespace

std::string_view version() noexcept { return "0.1.0"; }

bool version_compatible(std::string_view client_version) noexcept {
  const Parsed c = parse(client_version);
  if (c.major < 0) return false;
  return c.major == kVersionMajor && c.minor <= kVersionMinor;
}

}  // namespace augrl
