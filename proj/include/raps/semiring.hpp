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

#include <string>
#include <string_view>

#include "raps/rational.hpp"

namespace raps {

/// The commutative semirings the solver knows about. All carry the order
/// x <= y iff exists z with x + z = y, which here is always total:
///   boolean                   ({0,1}, or, 0, and, 1), order 0 < 1
///   tropical-bounded          ({0..B} u {inf}, min, inf, +B, 0), order >=
///   tropical-rational-bounded same with nonnegative rational payloads
enum class KindTag { kBoolean, kTropicalNat, kTropicalRat };

struct Kind {
  KindTag tag = KindTag::kBoolean;
  Rat bound;  // B for the bounded tropical kinds; >= 1

  static Kind boolean() { return Kind{KindTag::kBoolean, Rat(0)}; }
  static Kind tropical_nat(long long b);
  static Kind tropical_rat(const Rat& b);

  bool is_tropical() const { return tag != KindTag::kBoolean; }
  bool operator==(const Kind& o) const = default;
  std::string str() const;
};

/// One semiring element, tagged with its kind. Tropical infinity is the
/// semiring zero; numeric 0 is the semiring one. Boolean payloads are 0/1.
class Value {
 public:
  Value() = default;

  static Value zero(const Kind& k);
  static Value one(const Kind& k);
  static Value infinity(const Kind& k);          // tropical kinds only
  static Value finite(const Kind& k, const Rat& v);
  static Value boolean(bool b) { return finite(Kind::boolean(), Rat(b ? 1 : 0)); }

  const Kind& kind() const { return kind_; }
  bool is_inf() const { return inf_; }
  bool is_zero() const;
  bool is_one() const;
  /// Finite tropical payload (pre: tropical and not inf), or boolean as 0/1.
  const Rat& finite_value() const { return payload_; }
  bool bool_value() const { return payload_.num() != 0; }

  bool operator==(const Value& o) const = default;
  std::string str() const;

 private:
  Kind kind_ = Kind::boolean();
  bool inf_ = false;
  Rat payload_;
};

/// Semiring addition (min / or). Throws std::invalid_argument on kind mismatch.
Value add(const Value& a, const Value& b);
/// Semiring multiplication (+B with saturation to inf / and).
Value mul(const Value& a, const Value& b);
/// Induced order a <= b; total in all provided kinds. In tropical kinds this
/// is numeric >=, with inf at the bottom and 0 at the top.
bool leq(const Value& a, const Value& b);
/// Residual a (/) b = inf { u | u * b >= a }: capped subtraction in tropical
/// kinds, first projection in the boolean one.
Value residual(const Value& a, const Value& b);

/// Parses a value in the textual form used by model files: "inf", a decimal,
/// "p/q", or 0/1 for booleans. Throws std::invalid_argument on bad input or
/// out-of-range payloads.
Value parse_value(const Kind& k, std::string_view text);

}  // namespace raps
