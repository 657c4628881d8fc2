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
#include "raps/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "raps/prng.hpp"
#include "raps/runs.hpp"

namespace raps {

ExtentMap oracle_extent_credit(const Model& m, std::size_t max_state_configs) {
  if (m.semiring.tag != KindTag::kTropicalNat)
    throw std::invalid_argument(
        "the credit oracle requires the tropical-bounded kind");
  const long long bound = m.semiring.bound.num();
  if (m.states.size() * static_cast<std::size_t>(bound + 1) > max_state_configs)
    throw BlowupError("credit game state layer exceeds the configured cap");

  std::vector<long long> zeros(m.states.size(), 0);
  ResourceGame g = build_leveled_game(m, zeros);
  std::vector<Winner> win = zielonka_solve(g);

  ExtentMap out;
  out.values.reserve(m.states.size());
  for (StateId q = 0; q < m.states.size(); ++q) {
    Value best = Value::infinity(m.semiring);
    for (long long n = 0; n <= bound; ++n) {
      auto id = g.find_state(q, n);
      if (id && win[*id] == Winner::kExists) {
        best = Value::finite(m.semiring, Rat(n));
        break;
      }
    }
    out.values.push_back(best);
  }
  return out;
}

EnumerateResult enumerate_runs(const Model& m, StateId q0,
                               std::size_t max_nodes, std::size_t work_cap) {
  if (!is_automaton(m))
    throw std::invalid_argument("run enumeration is defined for automata");

  EnumerateResult out;
  out.best = Value::zero(m.semiring);
  out.exhaustive = true;

  struct Node {
    StateId state;
    std::size_t symbol = 0;
    std::vector<std::size_t> children;
    bool chosen = false;
  };
  std::vector<Node> nodes;
  nodes.push_back({q0, 0, {}, false});
  std::size_t work = 0;

  std::function<void(std::size_t)> expand = [&](std::size_t pos) {
    if (!out.exhaustive) return;
    if (++work > work_cap) {
      out.exhaustive = false;
      return;
    }
    if (pos == nodes.size()) {
      // complete presentation: evaluate it
      RegularRun z;
      z.root = 0;
      for (const Node& n : nodes)
        z.nodes.push_back({"e" + std::to_string(z.nodes.size()), n.state,
                           n.symbol, n.children});
      ++out.runs_seen;
      if (is_accepting(m, z)) {
        Value v = run_value(m, z);
        if (leq(out.best, v)) out.best = v;  // order-max = numeric min
      }
      return;
    }
    const Distribution& d =
        m.distributions[m.states[nodes[pos].state].options[0]];
    for (std::size_t ti = 0; ti < d.entries.size(); ++ti) {
      const Transition& t = d.entries[ti];
      nodes[pos].symbol = t.symbol;
      // enumerate child assignments: reuse any existing node of the right
      // state, or append the next fresh one
      std::function<void(std::size_t)> assign = [&](std::size_t slot) {
        if (!out.exhaustive) return;
        if (slot == t.successors.size()) {
          expand(pos + 1);
          return;
        }
        StateId want = t.successors[slot];
        for (std::size_t cand = 0; cand < nodes.size(); ++cand) {
          if (nodes[cand].state != want) continue;
          nodes[pos].children.push_back(cand);
          assign(slot + 1);
          nodes[pos].children.pop_back();
          if (!out.exhaustive) return;
        }
        if (nodes.size() < max_nodes) {
          nodes.push_back({want, 0, {}, false});
          nodes[pos].children.push_back(nodes.size() - 1);
          assign(slot + 1);
          nodes[pos].children.pop_back();
          nodes.pop_back();
        }
      };
      assign(0);
      nodes[pos].children.clear();
      if (!out.exhaustive) return;
    }
  };
  expand(0);
  return out;
}

Value oracle_extent_enumerate(const Model& m, StateId q0,
                              std::size_t max_nodes) {
  return enumerate_runs(m, q0, max_nodes).best;
}

std::vector<Winner> oracle_boolean_winners(const Model& m) {
  // The unweighted parity game: universal states pick options, existential
  // option positions pick transitions, universal branch positions pick the
  // continuation. For automata the option layer is skipped.
  const bool game = !is_automaton(m);
  unsigned low = m.states[0].parity;
  for (const State& s : m.states) low = std::min(low, s.parity);

  ResourceGame g;
  g.model = &m;
  std::map<Config, std::size_t> index;
  auto intern = [&](const Config& c, bool exists, unsigned parity) {
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    g.configs.push_back(c);
    g.exists_owner.push_back(exists);
    g.parity.push_back(parity);
    g.moves.emplace_back();
    index.emplace(c, g.configs.size() - 1);
    return g.configs.size() - 1;
  };
  auto state_cfg = [&](StateId q) {
    Config c;
    c.tag = Config::Tag::kState;
    c.state = q;
    return c;
  };

  for (StateId q = 0; q < m.states.size(); ++q)
    intern(state_cfg(q), !game, m.states[q].parity);

  for (StateId q = 0; q < m.states.size(); ++q) {
    std::size_t sid = index.at(state_cfg(q));
    auto expand = [&](std::size_t from, std::size_t dist) {
      for (const Transition& t : m.distributions[dist].entries) {
        Config br;
        br.tag = Config::Tag::kBranch;
        br.symbol = t.symbol;
        for (StateId succ : t.successors) br.parts.emplace_back(succ, 0);
        std::size_t bid = intern(br, false, low);
        if (std::find(g.moves[from].begin(), g.moves[from].end(), bid) ==
            g.moves[from].end())
          g.moves[from].push_back(bid);
        if (g.moves[bid].empty())
          for (StateId succ : t.successors)
            g.moves[bid].push_back(index.at(state_cfg(succ)));
      }
    };
    if (!game) {
      expand(sid, m.states[q].options[0]);
      continue;
    }
    for (std::size_t d : m.states[q].options) {
      Config oc;
      oc.tag = Config::Tag::kOption;
      oc.state = q;
      oc.dist = d;
      std::size_t oid = intern(oc, true, low);
      if (std::find(g.moves[sid].begin(), g.moves[sid].end(), oid) ==
          g.moves[sid].end())
        g.moves[sid].push_back(oid);
      if (g.moves[oid].empty()) expand(oid, d);
    }
  }

  std::vector<Winner> win = zielonka_solve(g);
  std::vector<Winner> out;
  out.reserve(m.states.size());
  for (StateId q = 0; q < m.states.size(); ++q)
    out.push_back(win[index.at(state_cfg(q))]);
  return out;
}

RandomProfile profile_by_name(const std::string& name) {
  RandomProfile p;
  p.name = name;
  if (name == "buchi-automaton") return p;
  if (name == "buchi-game") {
    p.max_options = 3;
    return p;
  }
  if (name == "parity3-automaton") {
    p.max_parity = 3;
    p.max_arity = 2;
    return p;
  }
  if (name == "boolean") {
    p.kind = KindTag::kBoolean;
    p.max_options = 2;
    p.max_arity = 2;
    p.max_parity = 3;
    return p;
  }
  throw std::invalid_argument("unknown profile '" + name + "'");
}

Model random_model(unsigned long long seed, const RandomProfile& profile) {
  std::uint64_t tag = 1469598103934665603ULL;  // FNV-1a over the profile name
  for (char c : profile.name) tag = (tag ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  Prng rng(seed ^ tag);
  Model m;

  long long bound = 1;
  if (profile.kind == KindTag::kBoolean) {
    m.semiring = Kind::boolean();
  } else {
    bound = rng.range(profile.min_bound, profile.max_bound);
    m.semiring = Kind::tropical_nat(bound);
  }

  m.signature.push_back({"step", 1});
  if (profile.max_arity >= 2) m.signature.push_back({"fork", 2});
  bool terminal = profile.terminal && rng.chance(40);
  if (terminal) m.signature.push_back({"halt", 0});

  std::size_t n = 1 + rng.below(profile.max_states);
  bool buchi = profile.max_parity <= 2;
  for (std::size_t i = 0; i < n; ++i) {
    State s;
    s.name = "q" + std::to_string(i);
    s.parity = 1 + static_cast<unsigned>(rng.below(profile.max_parity));
    long long off = profile.kind == KindTag::kBoolean
                        ? rng.range(0, 1)
                        : rng.range(0, std::min(profile.max_offset, bound));
    s.offset = Value::finite(m.semiring, Rat(off));
    m.states.push_back(std::move(s));
  }
  if (buchi) {
    // Buchi profiles guarantee an accepting state
    bool has_even = false;
    for (const State& s : m.states) has_even |= s.parity == 2;
    if (!has_even) m.states[rng.below(n)].parity = 2;
  }

  auto random_weight = [&]() {
    if (profile.kind == KindTag::kBoolean) return Value::boolean(true);
    return Value::finite(m.semiring,
                         Rat(rng.range(0, std::min(profile.max_weight, bound))));
  };

  for (StateId q = 0; q < n; ++q) {
    std::size_t options = 1 + rng.below(profile.max_options);
    for (std::size_t oi = 0; oi < options; ++oi) {
      Distribution d;
      d.name = "d" + std::to_string(m.distributions.size());
      std::size_t entries = 1 + rng.below(profile.max_transitions);
      for (std::size_t ti = 0; ti < entries; ++ti) {
        Transition t;
        t.symbol = rng.below(m.signature.size());
        for (std::size_t a = 0; a < m.signature[t.symbol].arity; ++a)
          t.successors.push_back(rng.below(n));
        t.weight = random_weight();
        bool dup = false;
        for (const Transition& prev : d.entries) dup |= prev.same_key(t);
        if (!dup) d.entries.push_back(std::move(t));
      }
      m.distributions.push_back(std::move(d));
      m.states[q].options.push_back(m.distributions.size() - 1);
    }
  }

  if (auto err = validate_model(m))
    throw std::logic_error("generator produced an invalid model: " + *err);
  return m;
}

std::string OracleReport::render() const {
  std::ostringstream out;
  for (const Line& l : lines)
    out << l.seed << " " << l.state << " " << l.expected << " " << l.got << " "
        << (l.ok ? "ok" : "MISMATCH") << "\n";
  out << seeds_ok << "/" << seeds_total << " ok\n";
  return out.str();
}

OracleReport oracle_batch(unsigned long long first, unsigned long long last,
                          const RandomProfile& profile) {
  OracleReport report;
  for (unsigned long long seed = first; seed <= last && first <= last; ++seed) {
    Model m = random_model(seed, profile);
    ++report.seeds_total;
    bool seed_ok = true;

    if (profile.kind == KindTag::kBoolean) {
      ExtentMap got = extent_generic(m);
      std::vector<Winner> win = oracle_boolean_winners(m);
      for (StateId q = 0; q < m.states.size(); ++q) {
        Value expected = Value::boolean(win[q] == Winner::kExists);
        bool ok = got.at(q) == expected;
        seed_ok &= ok;
        report.lines.push_back(
            {seed, m.states[q].name, expected.str(), got.at(q).str(), ok});
      }
    } else {
      ExtentMap generic = extent_generic(m);
      RecursiveResult f1 = extent_recursive(m);
      ExtentMap credit = oracle_extent_credit(m);
      for (StateId q = 0; q < m.states.size(); ++q) {
        bool ok = generic.at(q) == credit.at(q) &&
                  f1.extents.at(q) == credit.at(q);
        seed_ok &= ok;
        report.lines.push_back({seed, m.states[q].name, credit.at(q).str(),
                                generic.at(q).str(), ok});
      }
    }
    if (seed_ok)
      ++report.seeds_ok;
    else
      report.failed_seeds.push_back(seed);
  }
  return report;
}

}  // namespace raps
