#include "doctest.h"

#include <vector>

#include "raps/prng.hpp"
#include "raps/semiring.hpp"

using namespace raps;

namespace {

Value fin(const Kind& k, long long n) { return Value::finite(k, Rat(n)); }

// Uniform sample over the kind's whole carrier, infinity included.
Value sample(Prng& rng, const Kind& k) {
  switch (k.tag) {
    case KindTag::kBoolean:
      return Value::boolean(rng.chance(50));
    case KindTag::kTropicalNat: {
      long long b = k.bound.num();
      long long pick = rng.range(0, b + 1);
      return pick > b ? Value::infinity(k) : fin(k, pick);
    }
    case KindTag::kTropicalRat: {
      if (rng.chance(10)) return Value::infinity(k);
      long long den = rng.range(1, 4);
      long long num = rng.range(0, k.bound.num() * den / k.bound.den());
      Rat r = Rat::of(num, den);
      if (r > k.bound) r = k.bound;
      return Value::finite(k, r);
    }
  }
  return Value::boolean(false);
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rat::of(4, 6) == Rat::of(2, 3));
  CHECK((Rat::of(5, 2) + Rat::of(1, 2)) == Rat(3));
  CHECK((Rat(1) / Rat(3)).str() == "1/3");
  CHECK(Rat::parse("7/4").value() == Rat::of(7, 4));
  CHECK(Rat::parse("12").value() == Rat(12));
  CHECK(!Rat::parse("1/0").has_value());
  CHECK(!Rat::parse("x").has_value());
  CHECK(Rat::of(1, 3) < Rat::of(1, 2));
}

TEST_CASE("tropical add is min with identity inf") {
  Kind k = Kind::tropical_nat(10);
  CHECK(add(fin(k, 3), fin(k, 7)) == fin(k, 3));
  CHECK(add(fin(k, 5), Value::infinity(k)) == fin(k, 5));
  CHECK(add(Value::infinity(k), Value::infinity(k)).is_inf());
}

TEST_CASE("boolean add/mul") {
  CHECK(add(Value::boolean(false), Value::boolean(true)) == Value::boolean(true));
  CHECK(mul(Value::boolean(true), Value::boolean(false)) == Value::boolean(false));
}

TEST_CASE("tropical mul saturates at the bound") {
  Kind k = Kind::tropical_nat(10);
  CHECK(mul(fin(k, 4), fin(k, 5)) == fin(k, 9));
  CHECK(mul(fin(k, 6), fin(k, 5)).is_inf());
  CHECK(mul(fin(k, 6), Value::infinity(k)).is_inf());
}

TEST_CASE("induced order") {
  Kind k = Kind::tropical_nat(10);
  CHECK(leq(fin(k, 7), fin(k, 3)));
  CHECK(!leq(fin(k, 3), fin(k, 7)));
  CHECK(leq(Value::infinity(k), fin(k, 0)));
  CHECK(leq(Value::boolean(false), Value::boolean(true)));
  CHECK(!leq(Value::boolean(true), Value::boolean(false)));
}

TEST_CASE("residual") {
  Kind k = Kind::tropical_nat(10);
  CHECK(residual(fin(k, 7), fin(k, 3)) == fin(k, 4));
  CHECK(residual(fin(k, 2), fin(k, 5)) == fin(k, 0));
  CHECK(residual(Value::infinity(k), Value::infinity(k)).is_inf());
  CHECK(residual(Value::infinity(k), fin(k, 3)).is_inf());
  CHECK(residual(fin(k, 3), Value::infinity(k)) == fin(k, 0));
  CHECK(residual(Value::boolean(true), Value::boolean(false)) == Value::boolean(true));
}

TEST_CASE("kind mismatch is a usage error") {
  Kind a = Kind::tropical_nat(10);
  Kind b = Kind::tropical_nat(11);
  CHECK_THROWS_AS(add(fin(a, 1), fin(b, 1)), std::invalid_argument);
  CHECK_THROWS_AS(mul(fin(a, 1), Value::boolean(true)), std::invalid_argument);
  CHECK_THROWS_AS(residual(Value::boolean(true), fin(a, 1)), std::invalid_argument);
}

TEST_CASE("payload validation") {
  Kind k = Kind::tropical_nat(10);
  CHECK_THROWS_AS(Value::finite(k, Rat(11)), std::invalid_argument);
  CHECK_THROWS_AS(Value::finite(k, Rat::of(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Kind::tropical_nat(0), std::invalid_argument);
  CHECK_NOTHROW(Value::finite(Kind::tropical_rat(Rat::of(7, 2)), Rat::of(7, 2)));
}

TEST_CASE("value rendering and parsing") {
  Kind k = Kind::tropical_nat(64);
  CHECK(fin(k, 5).str() == "5");
  CHECK(Value::infinity(k).str() == "inf");
  CHECK(parse_value(k, "inf").is_inf());
  CHECK(parse_value(k, "12") == fin(k, 12));
  Kind kr = Kind::tropical_rat(Rat(8));
  CHECK(parse_value(kr, "5/2") == Value::finite(kr, Rat::of(5, 2)));
  CHECK(Value::finite(kr, Rat::of(5, 2)).str() == "5/2");
  CHECK(Value::boolean(true).str() == "1");
  CHECK_THROWS_AS(parse_value(k, "65"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value(Kind::boolean(), "inf"), std::invalid_argument);
}

TEST_CASE("semiring laws on random triples") {
  std::vector<Kind> kinds = {Kind::boolean(), Kind::tropical_nat(12),
                             Kind::tropical_rat(Rat::of(15, 2))};
  for (const Kind& k : kinds) {
    Prng rng(42);
    Value zero = Value::zero(k);
    Value one = Value::one(k);
    for (int i = 0; i < 2000; ++i) {
      Value a = sample(rng, k);
      Value b = sample(rng, k);
      Value c = sample(rng, k);

      // (a/c) + (b/c) = (a+b)/c
      CHECK(add(residual(a, c), residual(b, c)) == residual(add(a, b), c));

      // residual is a weak inverse whenever any u with u*b >= a exists;
      // mul is monotone, so such a u exists iff u = one works, i.e. a <= b
      if (leq(a, b)) CHECK(leq(a, mul(residual(a, b), b)));

      // commutativity and identities
      CHECK(add(a, b) == add(b, a));
      CHECK(mul(a, b) == mul(b, a));
      CHECK(add(a, zero) == a);
      CHECK(mul(a, one) == a);
      CHECK(mul(a, zero) == zero);

      // monotonicity of add and mul in each argument
      if (leq(a, b)) {
        CHECK(leq(add(a, c), add(b, c)));
        CHECK(leq(mul(a, c), mul(b, c)));
      }

      // total order with bottom zero, top one
      CHECK((leq(a, b) || leq(b, a)));
      CHECK(leq(zero, a));
      CHECK(leq(a, one));
      if (leq(a, b) && leq(b, a)) CHECK(a == b);
    }
  }
}

TEST_CASE("residual distributes over finite chains") {
  Kind k = Kind::tropical_nat(30);
  Prng rng(7);
  for (int i = 0; i < 500; ++i) {
    Value c = sample(rng, k);
    std::vector<Value> xs;
    for (int j = 0; j < 5; ++j) xs.push_back(sample(rng, k));

    // order-sup is numeric min (== add), order-inf is numeric max
    Value sup = xs[0];
    Value inf = xs[0];
    Value sup_res = residual(xs[0], c);
    Value inf_res = residual(xs[0], c);
    for (const Value& x : xs) {
      sup = add(sup, x);
      if (!leq(inf, x)) inf = x;
      Value xr = residual(x, c);
      sup_res = add(sup_res, xr);
      if (!leq(inf_res, xr)) inf_res = xr;
    }
    CHECK(residual(sup, c) == sup_res);
    CHECK(residual(inf, c) == inf_res);
  }
}
