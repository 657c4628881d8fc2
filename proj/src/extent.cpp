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
#include "raps/extent.hpp"

#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace raps {

std::string ExtentMap::render(const Model& m) const {
  std::ostringstream out;
  for (std::size_t q = 0; q < m.states.size(); ++q)
    out << m.states[q].name << "=" << values[q].str() << "\n";
  return out.str();
}

bool FixpointStats::within_budget(long long bound_b) const {
  for (const auto& [parity, rounds] : max_rounds) {
    auto it = class_size.find(parity);
    long long size = it == class_size.end() ? 0 : it->second;
    if (rounds > bound_b * size + 1) return false;
  }
  return true;
}

Value one_step_value(const Model& m, StateId q, const std::vector<Value>& current) {
  const State& s = m.states[q];
  bool first = true;
  Value combined;
  for (std::size_t d : s.options) {
    Value option_value = Value::zero(m.semiring);
    for (const Transition& t : m.distributions[d].entries) {
      Value product = t.weight;
      for (StateId succ : t.successors) product = mul(product, current[succ]);
      option_value = add(option_value, product);
    }
    if (first) {
      combined = option_value;
      first = false;
    } else if (leq(option_value, combined)) {
      combined = option_value;  // order-infimum: the worst option wins
    }
  }
  return residual(combined, s.offset);
}

namespace {

// Chain-length ceiling for one block, used only as a loop guard;
// the spec-level round budget is checked by the tests via FixpointStats.
long long block_round_cap(const Model& m, std::size_t block_size) {
  if (!m.semiring.is_tropical()) return static_cast<long long>(block_size) + 2;
  long long g = m.value_granularity();
  const Rat& b = m.semiring.bound;
  long long steps = (b.num() * (g / std::gcd(g, b.den())) + b.den() - 1) / b.den();
  return (steps + 2) * (static_cast<long long>(block_size) + 1) + 2;
}

}  // namespace

ExtentMap extent_generic(const Model& m) {
  std::vector<Value> e(m.states.size(), Value::zero(m.semiring));
  std::function<void(unsigned)> solve = [&](unsigned k) {
    if (k == 0) return;
    std::vector<StateId> block = m.states_with_parity(k);
    bool is_mu = k % 2 == 1;
    Value init = is_mu ? Value::zero(m.semiring) : Value::one(m.semiring);
    for (StateId q : block) e[q] = init;
    long long cap = block_round_cap(m, block.size());
    for (long long round = 0;; ++round) {
      if (round > cap)
        throw std::logic_error("extent iteration exceeded its chain bound");
      solve(k - 1);
      std::vector<Value> old = e;
      bool changed = false;
      for (StateId q : block) {
        Value next = one_step_value(m, q, old);
        bool monotone = is_mu ? leq(old[q], next) : leq(next, old[q]);
        if (!monotone)
          throw std::logic_error("non-monotone fixpoint step at state " +
                                 m.states[q].name);
        if (!(next == e[q])) changed = true;
        e[q] = next;
      }
      if (!changed) break;
    }
  };
  solve(m.max_parity());
  return ExtentMap{std::move(e)};
}

namespace {

// Level arithmetic for the specialised solver: finite naturals plus a
// saturating infinity.
constexpr long long kInf = std::numeric_limits<long long>::max();

long long lv_of(const Value& v) {
  return v.is_inf() ? kInf : v.finite_value().num();
}

long long lv_mul(long long a, long long b, long long bound) {
  if (a == kInf || b == kInf) return kInf;
  long long s = a + b;
  return s > bound ? kInf : s;
}

long long lv_res(long long a, long long r) {
  if (a == kInf) return kInf;
  if (r == kInf) return 0;
  return a > r ? a - r : 0;
}

struct Witness {
  std::size_t option = 0;
  std::size_t transition = 0;
  std::vector<long long> successor_levels;
};

}  // namespace

RecursiveResult extent_recursive(const Model& m) {
  if (m.semiring.tag != KindTag::kTropicalNat)
    throw std::invalid_argument("extent_recursive requires the tropical-bounded kind");
  const long long bound = m.semiring.bound.num();
  const std::size_t n = m.states.size();

  RecursiveResult result;
  std::vector<long long> e(n, kInf);
  for (unsigned k = 1; k <= m.max_parity(); ++k)
    result.stats.class_size[k] =
        static_cast<long long>(m.states_with_parity(k).size());

  // Evaluates state q against the snapshot, returning the level and the
  // witnessing move: worst option, then cheapest transition, ties broken by
  // declaration order.
  auto evaluate = [&](StateId q, const std::vector<long long>& old) {
    const State& s = m.states[q];
    long long worst = 0;
    Witness w;
    bool first = true;
    for (std::size_t oi = 0; oi < s.options.size(); ++oi) {
      const Distribution& d = m.distributions[s.options[oi]];
      long long best = kInf;
      std::size_t best_tr = 0;
      for (std::size_t ti = 0; ti < d.entries.size(); ++ti) {
        const Transition& t = d.entries[ti];
        long long v = lv_of(t.weight);
        for (StateId succ : t.successors) v = lv_mul(v, old[succ], bound);
        if (v < best) {
          best = v;
          best_tr = ti;
        }
      }
      if (first || best > worst) {
        worst = best;
        w.option = oi;
        w.transition = best_tr;
        first = false;
      }
    }
    const Distribution& wd = m.distributions[s.options[w.option]];
    for (StateId succ : wd.entries[w.transition].successors)
      w.successor_levels.push_back(old[succ]);
    return std::pair<long long, Witness>(lv_res(worst, lv_of(s.offset)), w);
  };

  std::function<void(unsigned)> extent_rec = [&](unsigned k) {
    if (k == 0) return;
    std::vector<StateId> block = m.states_with_parity(k);
    bool is_odd = k % 2 == 1;
    for (StateId q : block) e[q] = is_odd ? kInf : 0;
    if (k == 1) result.trace.updates.clear();  // keep only the last call
    long long cap = block_round_cap(m, block.size());
    long long rounds = 0;
    while (true) {
      extent_rec(k - 1);
      ++rounds;
      if (rounds > cap)
        throw std::logic_error("extent iteration exceeded its chain bound");
      std::vector<long long> old = e;
      bool changed = false;
      for (StateId q : block) {
        auto [next, witness] = evaluate(q, old);
        bool monotone = is_odd ? next <= old[q] : next >= old[q];
        if (!monotone)
          throw std::logic_error("non-monotone fixpoint step at state " +
                                 m.states[q].name);
        if (next == e[q]) continue;
        changed = true;
        e[q] = next;
        if (k == 1)
          result.trace.updates.push_back({q, next, witness.option,
                                          witness.transition,
                                          std::move(witness.successor_levels),
                                          rounds});
      }
      if (!changed) break;
    }
    auto& worst_rounds = result.stats.max_rounds[k];
    worst_rounds = std::max(worst_rounds, rounds);
  };

  extent_rec(m.max_parity());

  result.extents.values.reserve(n);
  for (std::size_t q = 0; q < n; ++q)
    result.extents.values.push_back(e[q] == kInf
                                        ? Value::infinity(m.semiring)
                                        : Value::finite(m.semiring, Rat(e[q])));
  return result;
}

}  // namespace raps
