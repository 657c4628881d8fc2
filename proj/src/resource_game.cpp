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
#include "raps/resource_game.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace raps {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max();

long long lv_of(const Value& v) {
  return v.is_inf() ? kInf : v.finite_value().num();
}

unsigned min_model_parity(const Model& m) {
  unsigned p = m.states.empty() ? 1 : m.states[0].parity;
  for (const State& s : m.states) p = std::min(p, s.parity);
  return p;
}

// Budget available after visiting q with level n: n + r(q), capped at the
// bound (no combined requirement beyond B is ever satisfiable anyway).
long long budget_after(const Model& m, StateId q, long long n, long long bound) {
  long long r = lv_of(m.states[q].offset);
  if (r == kInf || n + r > bound) return bound;
  return n + r;
}

struct Builder {
  const Model& m;
  ResourceGame g;
  std::map<Config, std::size_t> index;

  explicit Builder(const Model& model) : m(model) { g.model = &model; }

  std::pair<std::size_t, bool> intern(const Config& c, bool exists,
                                      unsigned parity) {
    auto it = index.find(c);
    if (it != index.end()) return {it->second, false};
    std::size_t id = g.configs.size();
    g.configs.push_back(c);
    g.exists_owner.push_back(exists);
    g.parity.push_back(parity);
    g.moves.emplace_back();
    index.emplace(c, id);
    return {id, true};
  }

  std::size_t id_of(const Config& c) const { return index.at(c); }

  void add_move(std::size_t from, std::size_t to) { g.moves[from].push_back(to); }
};

Config state_config(StateId q, long long n) {
  Config c;
  c.tag = Config::Tag::kState;
  c.state = q;
  c.level = n;
  return c;
}

Config option_config(StateId q, std::size_t dist, long long n) {
  Config c;
  c.tag = Config::Tag::kOption;
  c.state = q;
  c.dist = dist;
  c.level = n;
  return c;
}

// Enumerates successor level tuples with n_i drawn from `choices[i]`
// (sorted ascending) and sum n_i <= budget.
template <typename Sink>
void enumerate_splits(const std::vector<const std::vector<long long>*>& choices,
                      long long budget, Sink&& sink) {
  std::vector<long long> tuple(choices.size());
  std::vector<long long> min_after(choices.size() + 1, 0);
  for (std::size_t i = choices.size(); i-- > 0;) {
    if (choices[i]->empty()) return;
    min_after[i] = min_after[i + 1] + choices[i]->front();
  }
  std::function<void(std::size_t, long long)> rec = [&](std::size_t i,
                                                        long long left) {
    if (i == choices.size()) {
      sink(tuple);
      return;
    }
    for (long long v : *choices[i]) {
      if (v > left - min_after[i + 1]) break;
      tuple[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (min_after[0] <= budget) rec(0, budget);
}

// Shared construction core. `levels[q]` lists the admissible levels of q in
// ascending order (empty = state excluded). Builds the two-layer game for
// automata and the three-layer one for games.
ResourceGame assemble(const Model& m,
                      const std::vector<std::vector<long long>>& levels) {
  if (m.semiring.tag != KindTag::kTropicalNat)
    throw std::invalid_argument(
        "resource games require the tropical-bounded kind");
  const long long bound = m.semiring.bound.num();
  const bool game = !is_automaton(m);
  const unsigned low = min_model_parity(m);
  Builder b(m);

  for (StateId q = 0; q < m.states.size(); ++q)
    for (long long n : levels[q])
      b.intern(state_config(q, n), !game, m.states[q].parity);

  // Expands one option's transitions from `from` with the given budget.
  auto expand_option = [&](std::size_t from, const Distribution& d,
                           long long budget) {
    for (const Transition& t : d.entries) {
      long long w = lv_of(t.weight);
      if (w > budget) continue;
      std::vector<const std::vector<long long>*> choices;
      bool excluded = false;
      for (StateId succ : t.successors) {
        if (levels[succ].empty()) {
          excluded = true;
          break;
        }
        choices.push_back(&levels[succ]);
      }
      if (excluded) continue;
      enumerate_splits(choices, budget - w, [&](const std::vector<long long>& ns) {
        Config br;
        br.tag = Config::Tag::kBranch;
        br.symbol = t.symbol;
        for (std::size_t i = 0; i < ns.size(); ++i)
          br.parts.emplace_back(t.successors[i], ns[i]);
        auto [bid, fresh] = b.intern(br, false, low);
        b.add_move(from, bid);
        if (fresh)
          for (auto& [qq, nn] : br.parts)
            b.add_move(bid, b.id_of(state_config(qq, nn)));
      });
    }
  };

  for (StateId q = 0; q < m.states.size(); ++q) {
    for (long long n : levels[q]) {
      std::size_t sid = b.id_of(state_config(q, n));
      long long budget = budget_after(m, q, n, bound);
      if (!game) {
        expand_option(sid, m.distributions[m.states[q].options[0]], budget);
        continue;
      }
      for (std::size_t d : m.states[q].options) {
        auto [oid, fresh] = b.intern(option_config(q, d, budget), true, low);
        b.add_move(sid, oid);
        if (fresh) expand_option(oid, m.distributions[d], budget);
      }
    }
  }
  return std::move(b.g);
}

}  // namespace

std::string Config::str(const Model& m) const {
  std::ostringstream out;
  switch (tag) {
    case Tag::kState:
      out << "(" << m.states[state].name << "," << level << ")";
      break;
    case Tag::kOption:
      out << "(" << m.states[state].name << ":" << m.distributions[dist].name
          << "," << level << ")";
      break;
    case Tag::kBranch:
      out << m.signature[symbol].name << "(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out << ",";
        out << "(" << m.states[parts[i].first].name << "," << parts[i].second
            << ")";
      }
      out << ")";
      break;
  }
  return out.str();
}

std::optional<std::size_t> ResourceGame::find(const Config& c) const {
  for (std::size_t i = 0; i < configs.size(); ++i)
    if (configs[i] == c) return i;
  return std::nullopt;
}

std::optional<std::size_t> ResourceGame::find_state(StateId q,
                                                    long long level) const {
  return find(state_config(q, level));
}

std::string ResourceGame::dump() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    out << (exists_owner[i] ? "E" : "A") << " " << parity[i] << " "
        << configs[i].str(*model) << " ->";
    for (std::size_t t : moves[i]) out << " " << configs[t].str(*model);
    out << "\n";
  }
  return out.str();
}

ResourceGame build_resource_game(const Model& m, const ExtentMap& ext) {
  const long long bound = m.semiring.is_tropical() ? m.semiring.bound.num() : 0;
  std::vector<std::vector<long long>> levels(m.states.size());
  for (StateId q = 0; q < m.states.size(); ++q) {
    if (ext.at(q).is_inf()) continue;
    for (long long n = ext.at(q).finite_value().num(); n <= bound; ++n)
      levels[q].push_back(n);
  }
  return assemble(m, levels);
}

ResourceGame build_leveled_game(const Model& m,
                                const std::vector<long long>& min_levels) {
  const long long bound = m.semiring.is_tropical() ? m.semiring.bound.num() : 0;
  std::vector<std::vector<long long>> levels(m.states.size());
  for (StateId q = 0; q < m.states.size(); ++q) {
    if (min_levels[q] == kNoLevel) continue;
    for (long long n = min_levels[q]; n <= bound; ++n) levels[q].push_back(n);
  }
  return assemble(m, levels);
}

ResourceGame build_subgame(const Model& m, const UpdateTrace& trace,
                           const ExtentMap& ext) {
  if (!is_buchi(m))
    throw UnsupportedError("the resource sub-game is defined for Buchi models");
  std::vector<std::set<long long>> allowed(m.states.size());
  for (const ExtentUpdate& u : trace.updates) allowed[u.state].insert(u.level);
  for (StateId q = 0; q < m.states.size(); ++q)
    if (m.states[q].parity == 2 && !ext.at(q).is_inf())
      allowed[q].insert(ext.at(q).finite_value().num());
  std::vector<std::vector<long long>> levels(m.states.size());
  for (StateId q = 0; q < m.states.size(); ++q)
    levels[q].assign(allowed[q].begin(), allowed[q].end());
  return assemble(m, levels);
}

namespace {

struct ZGraph {
  std::vector<bool> exists;
  std::vector<unsigned> parity;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::vector<std::size_t>> pred;
};

// Attractor of `seed` for the given player inside `region`; extends `attr`
// in place (attr is the seed on entry).
void attract(const ZGraph& z, bool for_exists, const std::vector<char>& region,
             std::vector<char>& attr) {
  std::vector<std::size_t> cnt(z.succ.size(), 0);
  for (std::size_t u = 0; u < z.succ.size(); ++u) {
    if (!region[u] || z.exists[u] == for_exists) continue;
    for (std::size_t v : z.succ[u])
      if (region[v]) ++cnt[u];
  }
  std::queue<std::size_t> work;
  for (std::size_t v = 0; v < attr.size(); ++v)
    if (attr[v]) work.push(v);
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop();
    for (std::size_t u : z.pred[v]) {
      if (!region[u] || attr[u]) continue;
      if (z.exists[u] == for_exists) {
        attr[u] = 1;
        work.push(u);
      } else if (--cnt[u] == 0) {
        attr[u] = 1;
        work.push(u);
      }
    }
  }
}

void zsolve(const ZGraph& z, const std::vector<char>& region,
            std::vector<Winner>& win) {
  unsigned maxp = 0;
  bool any = false;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (!region[i]) continue;
    any = true;
    maxp = std::max(maxp, z.parity[i]);
  }
  if (!any) return;
  bool player_exists = maxp % 2 == 0;
  Winner player = player_exists ? Winner::kExists : Winner::kForall;
  Winner opponent = player_exists ? Winner::kForall : Winner::kExists;

  std::vector<char> attr(region.size(), 0);
  for (std::size_t i = 0; i < region.size(); ++i)
    if (region[i] && z.parity[i] == maxp) attr[i] = 1;
  attract(z, player_exists, region, attr);

  std::vector<char> rest = region;
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (attr[i]) rest[i] = 0;
  zsolve(z, rest, win);

  std::vector<char> opp_region(region.size(), 0);
  bool opp_any = false;
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (rest[i] && win[i] == opponent) opp_region[i] = opp_any = true;

  if (!opp_any) {
    for (std::size_t i = 0; i < region.size(); ++i)
      if (region[i]) win[i] = player;
    return;
  }
  attract(z, !player_exists, region, opp_region);
  std::vector<char> remaining = region;
  for (std::size_t i = 0; i < region.size(); ++i)
    if (opp_region[i]) {
      win[i] = opponent;
      remaining[i] = 0;
    }
  zsolve(z, remaining, win);
}

}  // namespace

std::vector<Winner> zielonka_solve(const ResourceGame& g) {
  const std::size_t n = g.size();
  ZGraph z;
  z.exists.resize(n + 2);
  z.parity.resize(n + 2);
  z.succ.resize(n + 2);
  // Two sinks encode the finite-play rule: a stuck universal position is an
  // existential win and vice versa.
  const std::size_t sink_e = n;
  const std::size_t sink_a = n + 1;
  z.exists[sink_e] = false;
  z.exists[sink_a] = false;
  z.parity[sink_e] = 2;
  z.parity[sink_a] = 1;
  z.succ[sink_e] = {sink_e};
  z.succ[sink_a] = {sink_a};
  for (std::size_t i = 0; i < n; ++i) {
    z.exists[i] = g.exists_owner[i];
    z.parity[i] = g.parity[i];
    if (g.moves[i].empty())
      z.succ[i] = {g.exists_owner[i] ? sink_a : sink_e};
    else
      z.succ[i] = g.moves[i];
  }
  z.pred.resize(n + 2);
  for (std::size_t u = 0; u < n + 2; ++u)
    for (std::size_t v : z.succ[u]) z.pred[v].push_back(u);

  std::vector<char> region(n + 2, 1);
  std::vector<Winner> win(n + 2, Winner::kForall);
  zsolve(z, region, win);
  win.resize(n);
  return win;
}

}  // namespace raps
