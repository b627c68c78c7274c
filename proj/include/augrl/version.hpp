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

#include <string_view>

namespace augrl {

inline constexpr int kVersionMajor = 0;
inline constexpr int kVersionMinor = 1;
inline constexpr int kVersionPatch = 0;

/// Semantic version of the library, "MAJOR.MINOR.PATCH". Bindings compare
/// the major component before touching any buffer.
std::string_view version() noexcept;

/// True when a client built against `client_version` can use this library:
/// same major version, and client minor <= library minor.
bool version_compatible(std::string_view client_version) noexcept;

}  // namespace augrl
