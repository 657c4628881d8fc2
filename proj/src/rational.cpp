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
#include "raps/rational.hpp"

#include <charconv>
#include <numeric>

namespace raps {

namespace {

using Wide = __int128;

long long narrow(Wide v) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN))
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<long long>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat make(Wide num, Wide den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rat::of(narrow(num), narrow(den));
}

}  // namespace

Rat Rat::of(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  Rat r;
  r.num_ = g > 1 ? num / g : num;
  r.den_ = g > 1 ? den / g : den;
  return r;
}

Rat Rat::operator+(const Rat& o) const {
  return make(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
  return make(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rat Rat::operator*(const Rat& o) const {
  return make(Wide(num_) * o.num_, Wide(den_) * o.den_);
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  return make(Wide(num_) * o.den_, Wide(den_) * o.num_);
}

std::strong_ordering Rat::operator<=>(const Rat& o) const {
  Wide lhs = Wide(num_) * o.den_;
  Wide rhs = Wide(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rat::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

std::optional<Rat> Rat::parse(std::string_view text) {
  auto parse_ll = [](std::string_view s, long long& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  auto slash = text.find('/');
  long long num = 0;
  long long den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(text, num)) return std::nullopt;
  } else {
    if (!parse_ll(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_ll(text.substr(slash + 1), den)) return std::nullopt;
    if (den <= 0) return std::nullopt;
  }
  return Rat::of(num, den);
}

}  // namespace raps
