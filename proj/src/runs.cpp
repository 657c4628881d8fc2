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
#include "raps/runs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace raps {

namespace {

// Weight of the node's transition: the semiring sum (minimum) over all
// options containing the (symbol, successors) key; absent keys make the
// graph a non-run.
std::optional<Value> node_weight(const Model& m, const RegularRun& z,
                                 const RunNode& n) {
  std::optional<Value> w;
  for (std::size_t di : m.states[n.state].options) {
    for (const Transition& t : m.distributions[di].entries) {
      if (t.symbol != n.symbol || t.successors.size() != n.children.size())
        continue;
      bool match = true;
      for (std::size_t i = 0; match && i < t.successors.size(); ++i)
        match = t.successors[i] == z.nodes[n.children[i]].state;
      if (!match) continue;
      w = w ? add(*w, t.weight) : t.weight;
    }
  }
  return w;
}

}  // namespace

Value run_value(const Model& m, const RegularRun& z, std::string* warning) {
  std::vector<Value> weights;
  weights.reserve(z.nodes.size());
  for (const RunNode& n : z.nodes) {
    auto w = node_weight(m, z, n);
    if (!w) {
      if (warning)
        *warning = "node '" + n.id + "' takes a transition absent from state '" +
                   m.states[n.state].name + "': not a run of the model";
      return Value::zero(m.semiring);
    }
    weights.push_back(*w);
  }

  long long g = m.value_granularity();
  long long chain = m.semiring.is_tropical()
                        ? (m.semiring.bound.num() * g) / m.semiring.bound.den() + 2
                        : 2;
  long long cap = (chain + 2) * (static_cast<long long>(z.nodes.size()) + 1) + 2;

  std::vector<Value> v(z.nodes.size(), Value::one(m.semiring));
  for (long long round = 0;; ++round) {
    if (round > cap)
      throw std::logic_error("run value iteration exceeded its chain bound");
    bool changed = false;
    std::vector<Value> old = v;
    for (std::size_t i = 0; i < z.nodes.size(); ++i) {
      Value product = weights[i];
      for (std::size_t c : z.nodes[i].children) product = mul(product, old[c]);
      Value next = residual(product, m.states[z.nodes[i].state].offset);
      if (!(next == v[i])) changed = true;
      v[i] = next;
    }
    if (!changed) break;
  }
  return v[z.root];
}

bool is_accepting(const Model& m, const RegularRun& z) {
  // For every odd parity p: no parity-p node may lie on a cycle using only
  // parities <= p.
  std::vector<unsigned> parities;
  for (const RunNode& n : z.nodes) parities.push_back(m.states[n.state].parity);
  unsigned maxp = 0;
  for (unsigned p : parities) maxp = std::max(maxp, p);
  for (unsigned p = 1; p <= maxp; p += 2) {
    for (std::size_t start = 0; start < z.nodes.size(); ++start) {
      if (parities[start] != p) continue;
      // reach start from start within the <= p subgraph
      std::vector<char> seen(z.nodes.size(), 0);
      std::queue<std::size_t> work;
      for (std::size_t c : z.nodes[start].children)
        if (parities[c] <= p && !seen[c]) {
          seen[c] = 1;
          work.push(c);
        }
      bool cycle = false;
      while (!work.empty() && !cycle) {
        std::size_t v = work.front();
        work.pop();
        if (v == start) {
          cycle = true;
          break;
        }
        for (std::size_t c : z.nodes[v].children)
          if (parities[c] <= p && !seen[c]) {
            seen[c] = 1;
            work.push(c);
          }
      }
      if (cycle || seen[start]) return false;
    }
  }
  return true;
}

bool check_annotation(const Model& m, const RegularRun& z, const Annotation& a,
                      const ExtentMap& ext) {
  const Rat bound = m.semiring.bound;
  for (std::size_t i = 0; i < z.nodes.size(); ++i) {
    const RunNode& n = z.nodes[i];
    if (ext.at(n.state).is_inf()) return false;
    if (a.levels[i] < ext.at(n.state).finite_value()) return false;

    auto w = node_weight(m, z, n);
    if (!w || w->is_inf()) return false;
    Rat cost = w->finite_value();
    for (std::size_t c : n.children) cost = cost + a.levels[c];
    if (cost > bound) return false;
    const Value& r = m.states[n.state].offset;
    if (!r.is_inf() && a.levels[i] + r.finite_value() < cost) return false;
  }
  return true;
}

RunFile parse_run(const Model& m, std::string_view text) {
  struct RawNode {
    std::string id;
    std::string state;
    std::string symbol;
    std::vector<std::string> children;
    std::size_t line;
  };
  std::vector<RawNode> raw;
  std::map<std::string, std::size_t> by_id;
  std::optional<std::string> root;
  std::map<std::string, Rat> levels;
  std::size_t root_line = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "node") {
      RawNode n;
      n.line = lineno;
      std::string spec;
      if (!(ls >> n.id >> n.state >> spec))
        throw ParseError(lineno, "node line needs id, state and transition");
      auto paren = spec.find('(');
      if (paren == std::string::npos || spec.back() != ')')
        throw ParseError(lineno, "malformed transition '" + spec + "'");
      n.symbol = spec.substr(0, paren);
      std::string inner = spec.substr(paren + 1, spec.size() - paren - 2);
      std::size_t pos = 0;
      while (pos < inner.size()) {
        auto comma = inner.find(',', pos);
        n.children.push_back(inner.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (by_id.count(n.id)) throw ParseError(lineno, "duplicate node '" + n.id + "'");
      by_id[n.id] = raw.size();
      raw.push_back(std::move(n));
    } else if (head == "root") {
      std::string id;
      if (!(ls >> id)) throw ParseError(lineno, "root line needs a node id");
      root = id;
      root_line = lineno;
    } else if (head == "level") {
      std::string id, v;
      if (!(ls >> id >> v)) throw ParseError(lineno, "level line needs id and value");
      auto r = Rat::parse(v);
      if (!r || r->is_negative())
        throw ParseError(lineno, "bad level '" + v + "'");
      levels[id] = *r;
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!root) throw ParseError(lineno, "missing root line");
  if (!by_id.count(*root)) throw ParseError(root_line, "unknown root node '" + *root + "'");

  RunFile out;
  for (const RawNode& n : raw) {
    RunNode node;
    node.id = n.id;
    auto qi = m.state_index(n.state);
    if (!qi) throw ParseError(n.line, "unknown state '" + n.state + "'");
    node.state = *qi;
    auto si = m.symbol_index(n.symbol);
    if (!si) throw ParseError(n.line, "unknown symbol '" + n.symbol + "'");
    node.symbol = *si;
    if (n.children.size() != m.signature[*si].arity)
      throw ParseError(n.line, "symbol '" + n.symbol + "' expects " +
                                   std::to_string(m.signature[*si].arity) +
                                   " children");
    for (const std::string& c : n.children) {
      auto it = by_id.find(c);
      if (it == by_id.end())
        throw ParseError(n.line, "unknown child node '" + c + "'");
      node.children.push_back(it->second);
    }
    out.run.nodes.push_back(std::move(node));
  }
  out.run.root = by_id.at(*root);

  // every node reachable from the root
  std::vector<char> seen(out.run.nodes.size(), 0);
  std::queue<std::size_t> work;
  seen[out.run.root] = 1;
  work.push(out.run.root);
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop();
    for (std::size_t c : out.run.nodes[v].children)
      if (!seen[c]) {
        seen[c] = 1;
        work.push(c);
      }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw ParseError(raw[i].line, "node '" + raw[i].id + "' unreachable from root");

  if (!levels.empty()) {
    Annotation a;
    a.levels.resize(out.run.nodes.size());
    for (const RunNode& n : out.run.nodes) {
      auto it = levels.find(n.id);
      if (it == levels.end())
        throw ParseError(lineno, "annotation misses node '" + n.id + "'");
      a.levels[by_id.at(n.id)] = it->second;
    }
    out.levels = std::move(a);
  }
  return out;
}

std::string render_run(const Model& m, const RegularRun& z, const Annotation* a) {
  std::ostringstream out;
  for (const RunNode& n : z.nodes) {
    out << "node " << n.id << " " << m.states[n.state].name << " "
        << m.signature[n.symbol].name << "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out << ",";
      out << z.nodes[n.children[i]].id;
    }
    out << ")\n";
  }
  out << "root " << z.nodes[z.root].id << "\n";
  if (a)
    for (std::size_t i = 0; i < z.nodes.size(); ++i)
      out << "level " << z.nodes[i].id << " " << a->levels[i].str() << "\n";
  return out.str();
}

Unfolded unfold(const Model& m, const StrategyPlayer& player, StateId q0,
                const Rat& mem0, const Adversary* adversary,
                std::size_t max_nodes) {
  const bool game = !is_automaton(m);
  if (game && !adversary)
    throw std::invalid_argument("game unfolding needs an adversary");

  Unfolded out;
  std::map<std::pair<StateId, Rat>, std::size_t> exact;
  // move actually played per node, for the rational fold rule
  std::vector<std::pair<std::size_t, std::size_t>> played;
  std::vector<Rat> mem_of;

  struct Pending {
    std::size_t node;
    std::vector<std::pair<StateId, Rat>> successors;
  };
  std::deque<Pending> pending;

  std::function<std::size_t(StateId, const Rat&)> obtain =
      [&](StateId q, const Rat& mem) -> std::size_t {
    auto hit = exact.find({q, mem});
    if (hit != exact.end()) return hit->second;
    if (!mem.is_integer() && !game) {
      // fold onto a node that plays the same move with no more memory
      std::optional<std::size_t> forced;
      StrategyStep would = player.step(q, mem, forced);
      for (std::size_t i = 0; i < out.run.nodes.size(); ++i)
        if (out.run.nodes[i].state == q && mem_of[i] <= mem &&
            played[i] == std::make_pair(would.option, would.transition))
          return i;
    }
    if (out.run.nodes.size() >= max_nodes)
      throw std::runtime_error("unfold exceeded its node budget");
    std::optional<std::size_t> forced;
    if (game) {
      std::vector<std::size_t> options(m.states[q].options.size());
      std::iota(options.begin(), options.end(), 0);
      forced = (*adversary)(q, mem, options);
      if (*forced >= m.states[q].options.size())
        throw std::invalid_argument("adversary chose a non-existent option");
    }
    StrategyStep st = player.step(q, mem, forced);
    const Transition& t =
        m.distributions[m.states[q].options[st.option]].entries[st.transition];
    std::size_t id = out.run.nodes.size();
    RunNode node;
    node.id = "n" + std::to_string(id);
    node.state = q;
    node.symbol = t.symbol;
    out.run.nodes.push_back(std::move(node));
    out.ann.levels.push_back(mem);
    played.emplace_back(st.option, st.transition);
    mem_of.push_back(mem);
    exact[{q, mem}] = id;
    out.trace.emplace_back(q, mem);
    pending.push_back({id, std::move(st.successors)});
    return id;
  };

  out.run.root = obtain(q0, mem0);
  while (!pending.empty()) {
    Pending p = std::move(pending.front());
    pending.pop_front();
    for (auto& [q, mem] : p.successors) {
      std::size_t child = obtain(q, mem);  // may reallocate the node vector
      out.run.nodes[p.node].children.push_back(child);
    }
  }
  return out;
}

}  // namespace raps
