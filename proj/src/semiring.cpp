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
#include "raps/semiring.hpp"

#include <stdexcept>

namespace raps {

namespace {

void require_same_kind(const Value& a, const Value& b, const char* op) {
  if (!(a.kind() == b.kind()))
    throw std::invalid_argument(std::string(op) + ": semiring kind mismatch (" +
                                a.kind().str() + " vs " + b.kind().str() + ")");
}

}  // namespace

Kind Kind::tropical_nat(long long b) {
  if (b < 1) throw std::invalid_argument("tropical bound must be >= 1");
  return Kind{KindTag::kTropicalNat, Rat(b)};
}

Kind Kind::tropical_rat(const Rat& b) {
  if (b < Rat(1)) throw std::invalid_argument("tropical bound must be >= 1");
  return Kind{KindTag::kTropicalRat, b};
}

std::string Kind::str() const {
  switch (tag) {
    case KindTag::kBoolean:
      return "boolean";
    case KindTag::kTropicalNat:
      return "tropical-bounded " + bound.str();
    case KindTag::kTropicalRat:
      return "tropical-rational-bounded " + bound.str();
  }
  return "?";
}

Value Value::zero(const Kind& k) {
  return k.is_tropical() ? infinity(k) : finite(k, Rat(0));
}

Value Value::one(const Kind& k) {
  return k.is_tropical() ? finite(k, Rat(0)) : finite(k, Rat(1));
}

Value Value::infinity(const Kind& k) {
  if (!k.is_tropical())
    throw std::invalid_argument("infinity only exists in tropical kinds");
  Value v;
  v.kind_ = k;
  v.inf_ = true;
  return v;
}

Value Value::finite(const Kind& k, const Rat& payload) {
  Value v;
  v.kind_ = k;
  v.payload_ = payload;
  switch (k.tag) {
    case KindTag::kBoolean:
      if (payload != Rat(0) && payload != Rat(1))
        throw std::invalid_argument("boolean payload must be 0 or 1");
      break;
    case KindTag::kTropicalNat:
      if (!payload.is_integer() || payload.is_negative() || payload > k.bound)
        throw std::invalid_argument("payload " + payload.str() +
                                    " outside {0.." + k.bound.str() + "}");
      break;
    case KindTag::kTropicalRat:
      if (payload.is_negative() || payload > k.bound)
        throw std::invalid_argument("payload " + payload.str() +
                                    " outside [0, " + k.bound.str() + "]");
      break;
  }
  return v;
}

bool Value::is_zero() const {
  return kind_.is_tropical() ? inf_ : payload_.is_zero();
}

bool Value::is_one() const {
  if (inf_) return false;
  return kind_.is_tropical() ? payload_.is_zero() : payload_ == Rat(1);
}

std::string Value::str() const {
  if (inf_) return "inf";
  return payload_.str();
}

Value add(const Value& a, const Value& b) {
  require_same_kind(a, b, "add");
  if (!a.kind().is_tropical())
    return Value::boolean(a.bool_value() || b.bool_value());
  if (a.is_inf()) return b;
  if (b.is_inf()) return a;
  return Value::finite(a.kind(), min(a.finite_value(), b.finite_value()));
}

Value mul(const Value& a, const Value& b) {
  require_same_kind(a, b, "mul");
  if (!a.kind().is_tropical())
    return Value::boolean(a.bool_value() && b.bool_value());
  if (a.is_inf() || b.is_inf()) return Value::infinity(a.kind());
  Rat sum = a.finite_value() + b.finite_value();
  if (sum > a.kind().bound) return Value::infinity(a.kind());
  return Value::finite(a.kind(), sum);
}

bool leq(const Value& a, const Value& b) {
  require_same_kind(a, b, "leq");
  if (!a.kind().is_tropical()) return !a.bool_value() || b.bool_value();
  if (a.is_inf()) return true;
  if (b.is_inf()) return false;
  return b.finite_value() <= a.finite_value();
}

Value residual(const Value& a, const Value& b) {
  require_same_kind(a, b, "residual");
  if (!a.kind().is_tropical()) return a;
  if (a.is_inf() && b.is_inf()) return Value::infinity(a.kind());
  if (a.is_inf()) return Value::infinity(a.kind());
  if (b.is_inf()) return Value::one(a.kind());
  // Capped subtraction, clamped back into {0..B, inf}. The clamp can only
  // fire for payloads already at the bound, but keeps the rule uniform.
  Rat diff = max(a.finite_value() - b.finite_value(), Rat(0));
  if (diff > a.kind().bound) return Value::infinity(a.kind());
  return Value::finite(a.kind(), diff);
}

Value parse_value(const Kind& k, std::string_view text) {
  if (text == "inf") {
    if (!k.is_tropical())
      throw std::invalid_argument("inf is not a boolean value");
    return Value::infinity(k);
  }
  auto r = Rat::parse(text);
  if (!r) throw std::invalid_argument("malformed value '" + std::string(text) + "'");
  return Value::finite(k, *r);
}

}  // namespace raps
