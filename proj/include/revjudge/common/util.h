// Copyright 2026 The revjudge Authors.
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

#ifndef REVJUDGE_COMMON_UTIL_H_
#define REVJUDGE_COMMON_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace revjudge {

// 64-bit FNV-1a. Used for content fingerprints; stable across platforms.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

// Lowercase 16-digit hex.
std::string to_hex(std::uint64_t value);

// SplitMix64 finalizer. Derives independent RNG seeds from a base seed and
// a sequence of stream coordinates (fold, tree, ...).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a = 0,
                       std::uint64_t b = 0);

std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Round-trippable, locale-independent rendering of a double ("%.17g").
std::string format_exact(double v);
// Fixed-point rendering with `digits` decimals.
std::string format_fixed(double v, int digits);

void log_warning(std::string_view message);
void log_info(std::string_view message);

}  // namespace revjudge

#endif  // REVJUDGE_COMMON_UTIL_H_
