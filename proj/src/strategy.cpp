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
#include "raps/strategy.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace raps {

namespace {

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

const Transition& move_transition(const Model& m, StateId q, std::size_t option,
                                  std::size_t transition) {
  return m.distributions[m.states[q].options[option]].entries[transition];
}

// Worst option, cheapest transition within it, ties by declaration order.
struct Evaluated {
  long long level;
  Move move;
};

Evaluated evaluate_state(const Model& m, StateId q,
                         const std::vector<long long>& vals, long long bound) {
  const State& s = m.states[q];
  long long worst = 0;
  std::size_t w_opt = 0;
  std::size_t w_tr = 0;
  bool first = true;
  for (std::size_t oi = 0; oi < s.options.size(); ++oi) {
    const Distribution& d = m.distributions[s.options[oi]];
    long long best = kInf;
    std::size_t best_tr = 0;
    for (std::size_t ti = 0; ti < d.entries.size(); ++ti) {
      const Transition& t = d.entries[ti];
      long long v = lv_of(t.weight);
      for (StateId succ : t.successors) v = lv_mul(v, vals[succ], bound);
      if (v < best) {
        best = v;
        best_tr = ti;
      }
    }
    if (first || best > worst) {
      worst = best;
      w_opt = oi;
      w_tr = best_tr;
      first = false;
    }
  }
  Evaluated out;
  out.level = lv_res(worst, lv_of(s.offset));
  out.move.option = w_opt;
  out.move.transition = w_tr;
  for (StateId succ : move_transition(m, q, w_opt, w_tr).successors)
    out.move.levels.push_back(vals[succ]);
  return out;
}

}  // namespace

SynthResult synthesize_strategy(const Model& m) {
  if (m.semiring.tag != KindTag::kTropicalNat)
    throw std::invalid_argument("synthesis requires the tropical-bounded kind");
  if (!is_buchi(m))
    throw UnsupportedError("unsupported: parity synthesis");
  const long long bound = m.semiring.bound.num();

  SynthResult out;
  RecursiveResult full = extent_recursive(m);
  out.extents = full.extents;

  std::vector<long long> e(m.states.size());
  for (StateId q = 0; q < m.states.size(); ++q) e[q] = lv_of(out.extents.at(q));

  // Even states: fix the witnessing move at the final values.
  for (StateId q : m.states_with_parity(2)) {
    if (e[q] == kInf) continue;
    Evaluated ev = evaluate_state(m, q, e, bound);
    if (ev.level != e[q])
      throw std::logic_error("even state is not a fixpoint of its equation");
    out.strategy.even[q] = {e[q], std::move(ev.move)};
  }

  // Odd states: reset and re-derive; the first strict update sets the
  // acceptor move and the threshold, later ones overwrite the base move.
  std::vector<StateId> odd = m.states_with_parity(1);
  for (StateId q : odd) e[q] = kInf;
  out.stats.class_size[1] = static_cast<long long>(odd.size());
  out.stats.class_size[2] =
      static_cast<long long>(m.states_with_parity(2).size());

  long long rounds = 0;
  while (true) {
    ++rounds;
    std::vector<long long> old = e;
    bool changed = false;
    for (StateId q : odd) {
      Evaluated ev = evaluate_state(m, q, old, bound);
      if (ev.level > old[q])
        throw std::logic_error("non-monotone synthesis step");
      if (ev.level == e[q]) continue;
      changed = true;
      e[q] = ev.level;
      out.trace.updates.push_back({q, ev.level, ev.move.option,
                                   ev.move.transition, ev.move.levels, rounds});
      auto it = out.strategy.odd.find(q);
      if (it == out.strategy.odd.end()) {
        ReducedStrategy::OddEntry entry;
        entry.theta = ev.level;
        entry.acceptor = std::move(ev.move);
        out.strategy.odd.emplace(q, std::move(entry));
      } else {
        it->second.base = std::move(ev.move);
      }
    }
    if (!changed) break;
    if (rounds > (bound + 2) * (static_cast<long long>(odd.size()) + 1) + 2)
      throw std::logic_error("synthesis loop exceeded its chain bound");
  }
  out.stats.max_rounds[1] = rounds;

  for (StateId q : odd)
    if (e[q] != lv_of(out.extents.at(q)))
      throw std::logic_error("synthesis re-derivation disagrees with extents");
  return out;
}

std::vector<long long> SkeletonStrategy::domain(StateId q) const {
  std::vector<long long> out;
  for (auto it = entries.lower_bound({q, std::numeric_limits<long long>::min()});
       it != entries.end() && it->first.first == q; ++it)
    out.push_back(it->first.second);
  return out;
}

std::optional<long long> SkeletonStrategy::level_at(StateId q,
                                                    const Rat& mem) const {
  std::optional<long long> best;
  for (long long l : domain(q))
    if (Rat(l) <= mem) best = l;
  return best;
}

void attach_completions(const Model& m, const UpdateTrace& trace,
                        SkeletonStrategy& s) {
  const long long bound = m.semiring.bound.num();

  // value table at the start of the replay: even states at their recorded
  // level, everything else unresolved
  std::vector<long long> table(m.states.size(), kInf);
  for (const auto& [key, mv] : s.entries)
    if (m.states[key.first].parity % 2 == 0) table[key.first] = key.second;

  std::map<StateId, long long> first_round;
  std::map<StateId, long long> last_round;
  for (const ExtentUpdate& u : trace.updates) {
    if (!first_round.count(u.state)) first_round[u.state] = u.round;
    last_round[u.state] = u.round;
  }

  // the cheapest finite transition of one option against a value table
  auto option_witness = [&](StateId q, std::size_t oi,
                            const std::vector<long long>& vals)
      -> std::optional<Move> {
    const Distribution& d = m.distributions[m.states[q].options[oi]];
    long long best = kInf;
    std::size_t best_tr = 0;
    for (std::size_t ti = 0; ti < d.entries.size(); ++ti) {
      const Transition& t = d.entries[ti];
      long long v = lv_of(t.weight);
      for (StateId succ : t.successors) v = lv_mul(v, vals[succ], bound);
      if (v < best) {
        best = v;
        best_tr = ti;
      }
    }
    if (best == kInf) return std::nullopt;
    Move mv;
    mv.option = oi;
    mv.transition = best_tr;
    for (StateId succ : move_transition(m, q, oi, best_tr).successors)
      mv.levels.push_back(vals[succ]);
    return mv;
  };

  auto record = [&](StateId q, bool acceptor) {
    for (std::size_t oi = 0; oi < m.states[q].options.size(); ++oi) {
      auto mv = option_witness(q, oi, table);
      if (!mv) continue;
      if (acceptor)
        s.acceptor_completion[{q, oi}] = std::move(*mv);
      else
        s.base_completion[{q, oi}] = std::move(*mv);
    }
  };

  std::size_t i = 0;
  while (i < trace.updates.size()) {
    long long round = trace.updates[i].round;
    // completions read the table as it stood before this round's updates
    for (std::size_t j = i; j < trace.updates.size() &&
                            trace.updates[j].round == round; ++j) {
      StateId q = trace.updates[j].state;
      if (first_round.at(q) == round) record(q, true);
      if (last_round.at(q) == round) record(q, false);
    }
    for (; i < trace.updates.size() && trace.updates[i].round == round; ++i)
      table[trace.updates[i].state] = trace.updates[i].level;
  }

  // even states complete against the final table
  for (const auto& [key, mv] : s.entries) {
    if (m.states[key.first].parity % 2 != 0) continue;
    record(key.first, true);
    record(key.first, false);
  }
}

Skeletons skeleton_of(const Model& m, const ReducedStrategy& reduced,
                      const UpdateTrace& trace) {
  Skeletons out;
  std::map<StateId, long long> lowest;
  for (const ExtentUpdate& u : trace.updates) {
    out.full.entries[{u.state, u.level}] =
        Move{u.option, u.transition, u.successor_levels};
    auto it = lowest.find(u.state);
    if (it == lowest.end() || u.level < it->second) lowest[u.state] = u.level;
  }
  for (const auto& [q, entry] : reduced.even) {
    out.full.entries[{q, entry.level}] = entry.sigma;
    out.reduced.entries[{q, entry.level}] = entry.sigma;
  }
  for (const auto& [q, entry] : reduced.odd) {
    auto acc = out.full.entries.find({q, entry.theta});
    if (acc == out.full.entries.end() || !(acc->second == entry.acceptor))
      throw std::invalid_argument("acceptor move does not match the trace");
    out.reduced.entries[{q, entry.theta}] = entry.acceptor;
    auto low = lowest.find(q);
    if (low == lowest.end())
      throw std::invalid_argument("strategy state missing from the trace");
    if (entry.base) {
      auto base = out.full.entries.find({q, low->second});
      if (low->second == entry.theta || base == out.full.entries.end() ||
          !(base->second == *entry.base))
        throw std::invalid_argument("base move does not match the trace");
      out.reduced.entries[{q, low->second}] = *entry.base;
    } else if (low->second != entry.theta) {
      throw std::invalid_argument("missing base move for a multi-level state");
    }
  }
  attach_completions(m, trace, out.full);
  out.reduced.acceptor_completion = out.full.acceptor_completion;
  out.reduced.base_completion = out.full.base_completion;
  return out;
}

SkeletonStrategy reduced_skeleton(const Model& m, const ReducedStrategy& s,
                                  const ExtentMap& ext) {
  SkeletonStrategy out;
  auto level_of = [&](StateId q) {
    if (ext.at(q).is_inf())
      throw std::invalid_argument("strategy entry for state '" +
                                  m.states[q].name + "' with infinite extent");
    return ext.at(q).finite_value().num();
  };
  for (const auto& [q, entry] : s.even)
    out.entries[{q, level_of(q)}] = entry.sigma;
  for (const auto& [q, entry] : s.odd) {
    out.entries[{q, entry.theta}] = entry.acceptor;
    long long e = level_of(q);
    if (entry.base) {
      if (e == entry.theta)
        throw std::invalid_argument("base move present at the threshold level");
      out.entries[{q, e}] = *entry.base;
    } else if (e != entry.theta) {
      throw std::invalid_argument("missing base move for state '" +
                                  m.states[q].name + "'");
    }
  }
  // deviation completions are canonical for the model, so they can be
  // rebuilt even when the strategy came from a file
  if (!is_automaton(m) && m.semiring.tag == KindTag::kTropicalNat)
    attach_completions(m, extent_recursive(m).trace, out);
  return out;
}

bool no_redundancy(const Model& m, const SkeletonStrategy& s) {
  // Conform graph restricted to odd-parity entries; moves delivering a
  // configuration outside the domain end the path, even-parity entries
  // break it.
  std::vector<std::pair<StateId, long long>> nodes;
  std::map<std::pair<StateId, long long>, std::size_t> id;
  for (const auto& [key, mv] : s.entries) {
    if (m.states[key.first].parity % 2 == 0) continue;
    id[key] = nodes.size();
    nodes.push_back(key);
  }
  std::vector<std::vector<std::size_t>> succ(nodes.size());
  for (const auto& [key, mv] : s.entries) {
    auto from = id.find(key);
    if (from == id.end()) continue;
    const Transition& t =
        move_transition(m, key.first, mv.option, mv.transition);
    for (std::size_t i = 0; i < t.successors.size(); ++i) {
      auto to = id.find({t.successors[i], mv.levels[i]});
      if (to != id.end()) succ[from->second].push_back(to->second);
    }
  }
  for (std::size_t start = 0; start < nodes.size(); ++start) {
    std::vector<char> seen(nodes.size(), 0);
    std::queue<std::size_t> work;
    seen[start] = 1;
    work.push(start);
    while (!work.empty()) {
      std::size_t v = work.front();
      work.pop();
      for (std::size_t w : succ[v]) {
        if (nodes[w].first == nodes[start].first &&
            nodes[w].second < nodes[start].second)
          return false;
        if (!seen[w]) {
          seen[w] = 1;
          work.push(w);
        }
      }
    }
  }
  return true;
}

std::vector<Rat> distribute_carryover(const Rat& surplus, std::size_t k) {
  if (k == 0)
    throw std::invalid_argument("cannot distribute a surplus over 0 branches");
  if (surplus.is_negative())
    throw std::invalid_argument("negative surplus");
  return std::vector<Rat>(k, surplus / Rat(static_cast<long long>(k)));
}

MemoryFullPlayer::MemoryFullPlayer(const Model& m, const SkeletonStrategy& s)
    : m_(m), s_(s) {}

StrategyStep MemoryFullPlayer::step(StateId q, const Rat& mem,
                                    std::optional<std::size_t> forced) const {
  if (!mem.is_integer() || !s_.defined(q, mem.num()))
    throw UndefinedStrategyError("strategy undefined at (" + m_.states[q].name +
                                     "," + mem.str() + ")",
                                 q, mem);
  const Move& mv = s_.entries.at({q, mem.num()});
  if (forced && *forced != mv.option)
    throw UndefinedStrategyError("recorded option differs from the chosen one",
                                 q, mem);
  const Transition& t = move_transition(m_, q, mv.option, mv.transition);
  StrategyStep out{mv.option, mv.transition, {}};
  for (std::size_t i = 0; i < t.successors.size(); ++i)
    out.successors.emplace_back(t.successors[i], Rat(mv.levels[i]));
  return out;
}

CarryOverPlayer::CarryOverPlayer(const Model& m, const SkeletonStrategy& s)
    : m_(m), s_(s) {
  theta_.assign(m.states.size(), -1);
  ext_.assign(m.states.size(), kInf);
  for (const auto& [key, mv] : s.entries) {
    theta_[key.first] = std::max(theta_[key.first], key.second);
    ext_[key.first] = std::min(ext_[key.first], key.second);
  }
}

StrategyStep CarryOverPlayer::step(StateId q, const Rat& mem,
                                   std::optional<std::size_t> forced) const {
  const long long bound = m_.semiring.bound.num();
  auto level = s_.level_at(q, mem);
  if (!level)
    throw UndefinedStrategyError("no strategy level below memory at (" +
                                     m_.states[q].name + "," + mem.str() + ")",
                                 q, mem);
  const Move& mv = s_.entries.at({q, *level});

  auto capped = [&](const Rat& v) { return min(v, Rat(bound)); };

  if (!forced || *forced == mv.option) {
    const Transition& t = move_transition(m_, q, mv.option, mv.transition);
    StrategyStep out{mv.option, mv.transition, {}};
    if (!t.successors.empty()) {
      auto shares = distribute_carryover(mem - Rat(*level), t.successors.size());
      for (std::size_t i = 0; i < t.successors.size(); ++i)
        out.successors.emplace_back(t.successors[i],
                                    capped(Rat(mv.levels[i]) + shares[i]));
    }
    return out;
  }

  // The adversary picked an option the recorded move does not cover: play
  // the option's witness at the matching update round (threshold level ->
  // first round, otherwise last round). These land on recorded levels and
  // are affordable whenever the recorded level is.
  bool at_threshold = m_.states[q].parity % 2 == 1 && *level == theta_[q];
  const auto& table = at_threshold ? s_.acceptor_completion : s_.base_completion;
  auto comp = table.find({q, *forced});
  if (comp != table.end()) {
    const Move& cm = comp->second;
    const Transition& t = move_transition(m_, q, cm.option, cm.transition);
    StrategyStep out{cm.option, cm.transition, {}};
    if (!t.successors.empty()) {
      auto shares = distribute_carryover(mem - Rat(*level), t.successors.size());
      for (std::size_t i = 0; i < t.successors.size(); ++i)
        out.successors.emplace_back(t.successors[i],
                                    capped(Rat(cm.levels[i]) + shares[i]));
    }
    return out;
  }

  // No completion table (hand-built skeleton): fall back to the option's
  // extent-cheapest transition.
  const Distribution& d = m_.distributions[m_.states[q].options[*forced]];
  long long best = kInf;
  std::size_t best_tr = d.entries.size();
  for (std::size_t ti = 0; ti < d.entries.size(); ++ti) {
    const Transition& t = d.entries[ti];
    long long cost = lv_of(t.weight);
    for (StateId succ : t.successors)
      cost = cost == kInf || ext_[succ] == kInf ? kInf : cost + ext_[succ];
    if (cost < best) {
      best = cost;
      best_tr = ti;
    }
  }
  if (best_tr == d.entries.size() || best == kInf)
    throw UndefinedStrategyError("no completion move for the chosen option", q,
                                 mem);
  Rat offset = m_.states[q].offset.is_inf()
                   ? Rat(bound)
                   : m_.states[q].offset.finite_value();
  Rat budget = capped(mem + offset);
  if (budget < Rat(best))
    throw UndefinedStrategyError("completion move is not affordable", q, mem);
  const Transition& t = d.entries[best_tr];
  StrategyStep out{*forced, best_tr, {}};
  if (!t.successors.empty()) {
    auto shares = distribute_carryover(budget - Rat(best), t.successors.size());
    for (std::size_t i = 0; i < t.successors.size(); ++i)
      out.successors.emplace_back(
          t.successors[i], capped(Rat(ext_[t.successors[i]]) + shares[i]));
  }
  return out;
}

std::vector<std::pair<StateId, Rat>> next_memory_full(const Model& m,
                                                      const SkeletonStrategy& s,
                                                      StateId q, const Rat& mem) {
  return MemoryFullPlayer(m, s).step(q, mem, std::nullopt).successors;
}

StrategyStep next_carry_over(const Model& m, const SkeletonStrategy& s,
                             StateId q, const Rat& mem) {
  return CarryOverPlayer(m, s).step(q, mem, std::nullopt);
}

AdversaryPolicy adversary_policy(const ResourceGame& g,
                                 const std::vector<Winner>& winners,
                                 const ExtentMap& ext) {
  const Model& m = *g.model;
  const long long bound = m.semiring.bound.num();
  auto ext_of = [&](StateId q) { return lv_of(ext.at(q)); };
  auto slack = [&](const Config& c) -> long long {
    if (c.tag == Config::Tag::kState) {
      long long e = ext_of(c.state);
      return e == kInf ? -1 : c.level - e;
    }
    // option configuration: compare against the cheapest extent requirement
    long long need = kInf;
    for (const Transition& t : m.distributions[c.dist].entries) {
      long long cost = lv_of(t.weight);
      for (StateId succ : t.successors)
        cost = lv_mul(cost, ext_of(succ), bound);
      need = std::min(need, cost);
    }
    return need == kInf ? -1 : c.level - need;
  };

  AdversaryPolicy policy;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.exists_owner[i] || g.moves[i].empty()) continue;
    std::size_t pick = g.moves[i][0];
    bool found = false;
    for (std::size_t t : g.moves[i])
      if (winners[t] == Winner::kForall) {
        pick = t;
        found = true;
        break;
      }
    if (!found) {
      long long best_slack = kInf;
      for (std::size_t t : g.moves[i]) {
        long long s = slack(g.configs[t]);
        if (s < best_slack) {
          best_slack = s;
          pick = t;
        }
      }
    }
    policy.choice[i] = pick;
  }
  return policy;
}

namespace {

std::string move_str(const Model& m, StateId q, const Move& mv) {
  const Transition& t = move_transition(m, q, mv.option, mv.transition);
  std::ostringstream out;
  out << m.distributions[m.states[q].options[mv.option]].name << ":"
      << m.signature[t.symbol].name << "(";
  for (std::size_t i = 0; i < t.successors.size(); ++i) {
    if (i) out << ",";
    out << m.states[t.successors[i]].name << ":" << mv.levels[i];
  }
  out << ")";
  return out.str();
}

Move parse_move(const Model& m, StateId q, const std::string& text,
                std::size_t line) {
  auto colon = text.find(':');
  auto paren = text.find('(');
  if (colon == std::string::npos || paren == std::string::npos ||
      colon > paren || text.empty() || text.back() != ')')
    throw ParseError(line, "malformed move '" + text + "'");
  std::string dist_name = text.substr(0, colon);
  std::string sym_name = text.substr(colon + 1, paren - colon - 1);
  std::string inner = text.substr(paren + 1, text.size() - paren - 2);

  const State& s = m.states[q];
  Move mv;
  bool have_option = false;
  for (std::size_t oi = 0; oi < s.options.size(); ++oi)
    if (m.distributions[s.options[oi]].name == dist_name) {
      mv.option = oi;
      have_option = true;
      break;
    }
  if (!have_option)
    throw ParseError(line, "distribution '" + dist_name +
                               "' is not an option of state '" + s.name + "'");

  std::vector<StateId> succs;
  std::vector<long long> levels;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    auto comma = inner.find(',', pos);
    std::string part = inner.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto c = part.rfind(':');
    if (c == std::string::npos)
      throw ParseError(line, "malformed successor '" + part + "'");
    auto qi = m.state_index(part.substr(0, c));
    auto l = Rat::parse(part.substr(c + 1));
    if (!qi || !l || !l->is_integer() || l->is_negative())
      throw ParseError(line, "malformed successor '" + part + "'");
    succs.push_back(*qi);
    levels.push_back(l->num());
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  const Distribution& d = m.distributions[s.options[mv.option]];
  bool found = false;
  for (std::size_t ti = 0; ti < d.entries.size(); ++ti) {
    const Transition& t = d.entries[ti];
    if (m.signature[t.symbol].name == sym_name && t.successors == succs) {
      mv.transition = ti;
      found = true;
      break;
    }
  }
  if (!found)
    throw ParseError(line, "move '" + text + "' names no transition of '" +
                               dist_name + "'");
  mv.levels = std::move(levels);
  return mv;
}

}  // namespace

std::string render_strategy(const Model& m, const ReducedStrategy& s) {
  std::ostringstream out;
  for (StateId q = 0; q < m.states.size(); ++q) {
    auto odd = s.odd.find(q);
    if (odd != s.odd.end()) {
      out << m.states[q].name << " theta=" << odd->second.theta
          << " acceptor=" << move_str(m, q, odd->second.acceptor) << " base=";
      if (odd->second.base)
        out << move_str(m, q, *odd->second.base);
      else
        out << "none";
      out << "\n";
    }
    auto even = s.even.find(q);
    if (even != s.even.end())
      out << m.states[q].name << " sigma=" << move_str(m, q, even->second.sigma)
          << "\n";
  }
  return out.str();
}

ReducedStrategy parse_strategy(const Model& m, std::string_view text) {
  ReducedStrategy out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) {
      if (tok[0] == '#') break;
      toks.push_back(tok);
    }
    if (toks.empty()) continue;
    auto qi = m.state_index(toks[0]);
    if (!qi) throw ParseError(lineno, "unknown state '" + toks[0] + "'");
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      auto eq = toks[i].find('=');
      if (eq == std::string::npos)
        throw ParseError(lineno, "expected key=value, got '" + toks[i] + "'");
      kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    if (kv.count("sigma")) {
      ReducedStrategy::EvenEntry entry;
      entry.sigma = parse_move(m, *qi, kv.at("sigma"), lineno);
      out.even[*qi] = std::move(entry);
    } else {
      if (!kv.count("theta") || !kv.count("acceptor") || !kv.count("base"))
        throw ParseError(lineno, "odd entry needs theta, acceptor and base");
      ReducedStrategy::OddEntry entry;
      auto th = Rat::parse(kv.at("theta"));
      if (!th || !th->is_integer() || th->is_negative())
        throw ParseError(lineno, "bad theta '" + kv.at("theta") + "'");
      entry.theta = th->num();
      entry.acceptor = parse_move(m, *qi, kv.at("acceptor"), lineno);
      if (kv.at("base") != "none")
        entry.base = parse_move(m, *qi, kv.at("base"), lineno);
      out.odd[*qi] = std::move(entry);
    }
  }
  return out;
}

}  // namespace raps
