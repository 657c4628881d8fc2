/*
 * Copyright 2026 The raps authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace raps {

/// Exact rational number on 64-bit numerator/denominator, always normalized
/// (gcd 1, denominator >= 1). Arithmetic throws std::overflow_error instead
/// of wrapping.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(long long n) : num_(n) {}  // NOLINT: intentionally implicit, mirrors int
  static Rat of(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  bool is_zero() const { return num_ == 0; }

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;  // o != 0

  bool operator==(const Rat& o) const = default;
  std::strong_ordering operator<=>(const Rat& o) const;

  /// "p" when integral, "p/q" otherwise.
  std::string str() const;
  /// Accepts "p" or "p/q" with optional leading '-'.
  static std::optional<Rat> parse(std::string_view text);

 private:
  long long num_ = 0;
  long long den_ = 1;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

}  // namespace raps
