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
#include "raps/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace raps {

namespace {

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
      continue;
    }
    // punctuation tokens the dist/trans syntax needs
    if (c == '{' || c == '}' || c == ';' || c == '(' || c == ')' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
      out.push_back(std::string(1, c));
      continue;
    }
    cur.push_back(c);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Cursor over the token list of a single line.
struct Cursor {
  const std::vector<std::string>& toks;
  std::size_t pos = 0;
  std::size_t line;

  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : toks[pos];
  }
  std::string take(const char* what) {
    if (done()) throw ParseError(line, std::string("expected ") + what);
    return toks[pos++];
  }
  void expect(const std::string& t) {
    std::string got = take(t.c_str());
    if (got != t)
      throw ParseError(line, "expected '" + t + "', got '" + got + "'");
  }
  bool accept(const std::string& t) {
    if (!done() && toks[pos] == t) {
      ++pos;
      return true;
    }
    return false;
  }
};

struct PendingTrans {
  StateId source;
  Transition tr;
  std::size_t line;
};

enum class Section { kSemiring, kSig, kDist, kState, kTrans };

}  // namespace

std::optional<StateId> Model::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Model::dist_index(std::string_view name) const {
  for (std::size_t i = 0; i < distributions.size(); ++i)
    if (distributions[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Model::symbol_index(std::string_view name) const {
  for (std::size_t i = 0; i < signature.size(); ++i)
    if (signature[i].name == name) return i;
  return std::nullopt;
}

unsigned Model::max_parity() const {
  unsigned m = 1;
  for (const State& s : states) m = std::max(m, s.parity);
  return m;
}

std::vector<StateId> Model::states_with_parity(unsigned k) const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].parity == k) out.push_back(i);
  return out;
}

long long Model::value_granularity() const {
  long long l = 1;
  auto fold = [&l](const Value& v) {
    if (!v.is_inf() && v.kind().is_tropical())
      l = std::lcm(l, v.finite_value().den());
  };
  for (const Distribution& d : distributions)
    for (const Transition& t : d.entries) fold(t.weight);
  for (const State& s : states) fold(s.offset);
  return l;
}

bool is_automaton(const Model& m) {
  return std::all_of(m.states.begin(), m.states.end(),
                     [](const State& s) { return s.options.size() == 1; });
}

bool is_buchi(const Model& m) {
  bool has_even = false;
  for (const State& s : m.states) {
    if (s.parity > 2) return false;
    has_even |= s.parity == 2;
  }
  return has_even;
}

std::optional<std::string> validate_model(const Model& m) {
  if (m.semiring.is_tropical() && m.semiring.bound < Rat(1))
    return "semiring bound must be >= 1";

  std::set<std::string> names;
  for (const Symbol& s : m.signature)
    if (!names.insert(s.name).second)
      return "duplicate symbol '" + s.name + "'";
  names.clear();
  for (const Distribution& d : m.distributions)
    if (!names.insert(d.name).second)
      return "duplicate distribution '" + d.name + "'";
  names.clear();
  for (const State& s : m.states)
    if (!names.insert(s.name).second) return "duplicate state '" + s.name + "'";

  for (const Distribution& d : m.distributions) {
    if (d.entries.empty()) return "distribution '" + d.name + "' is empty";
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
      const Transition& t = d.entries[i];
      if (t.symbol >= m.signature.size())
        return "distribution '" + d.name + "' uses an unknown symbol";
      if (t.successors.size() != m.signature[t.symbol].arity)
        return "distribution '" + d.name + "': arity mismatch for symbol '" +
               m.signature[t.symbol].name + "'";
      for (StateId q : t.successors)
        if (q >= m.states.size())
          return "distribution '" + d.name + "' references an unknown state";
      if (!(t.weight.kind() == m.semiring))
        return "distribution '" + d.name + "': weight of foreign semiring kind";
      if (t.weight.is_zero())
        return "distribution '" + d.name + "': zero-weight transition";
      for (std::size_t j = 0; j < i; ++j)
        if (t.same_key(d.entries[j]))
          return "distribution '" + d.name + "': duplicate transition key";
    }
  }

  for (const State& s : m.states) {
    if (s.parity < 1) return "state '" + s.name + "' has parity 0";
    if (!(s.offset.kind() == m.semiring))
      return "state '" + s.name + "': offset of foreign semiring kind";
    if (s.options.empty()) return "state '" + s.name + "' has no options";
    for (std::size_t d : s.options)
      if (d >= m.distributions.size())
        return "state '" + s.name + "' references an unknown distribution";
  }
  return std::nullopt;
}

namespace {

Transition parse_transition_body(const Model& m, Cursor& c) {
  Transition t;
  std::string sym = c.take("symbol");
  auto si = m.symbol_index(sym);
  if (!si) throw ParseError(c.line, "unknown symbol '" + sym + "'");
  t.symbol = *si;
  c.expect("(");
  if (!c.accept(")")) {
    while (true) {
      std::string q = c.take("successor state");
      auto qi = m.state_index(q);
      if (!qi) throw ParseError(c.line, "unknown state '" + q + "'");
      t.successors.push_back(*qi);
      if (c.accept(")")) break;
      c.expect(",");
    }
  }
  if (t.successors.size() != m.signature[t.symbol].arity)
    throw ParseError(c.line, "symbol '" + sym + "' expects " +
                                 std::to_string(m.signature[t.symbol].arity) +
                                 " successors, got " +
                                 std::to_string(t.successors.size()));
  return t;
}

Value parse_weight(const Model& m, Cursor& c, const char* what) {
  std::string w = c.take(what);
  try {
    return parse_value(m.semiring, w);
  } catch (const std::invalid_argument& e) {
    throw ParseError(c.line, std::string(what) + ": " + e.what());
  }
}

std::string fresh_dist_name(const Model& m, const std::string& state) {
  std::string name = "t_" + state;
  while (m.dist_index(name)) name = "_" + name;
  return name;
}

}  // namespace

Model parse_model(std::string_view text) {
  Model m;
  bool have_semiring = false;
  Section at = Section::kSemiring;
  std::vector<PendingTrans> pending;
  // Raw dist lines are parsed in a second pass, once states are known.
  std::vector<std::pair<std::size_t, std::vector<std::string>>> dist_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto advance_to = [&](Section want, std::size_t line) {
    if (static_cast<int>(want) < static_cast<int>(at))
      throw ParseError(line, "section out of order (expected semiring, sig, "
                             "dist, state, trans)");
    at = want;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    Cursor c{toks, 0, lineno};
    std::string head = c.take("directive");

    if (head == "semiring") {
      if (have_semiring) throw ParseError(lineno, "duplicate semiring line");
      advance_to(Section::kSemiring, lineno);
      std::string kind = c.take("semiring kind");
      if (kind == "boolean") {
        m.semiring = Kind::boolean();
      } else if (kind == "tropical-bounded" ||
                 kind == "tropical-rational-bounded") {
        auto b = Rat::parse(c.take("bound"));
        if (!b || *b < Rat(1) || (kind == "tropical-bounded" && !b->is_integer()))
          throw ParseError(lineno, "bad semiring bound");
        m.semiring = kind == "tropical-bounded" ? Kind::tropical_nat(b->num())
                                                : Kind::tropical_rat(*b);
      } else {
        throw ParseError(lineno, "unknown semiring kind '" + kind + "'");
      }
      have_semiring = true;
    } else if (head == "sig") {
      advance_to(Section::kSig, lineno);
      while (!c.done()) {
        std::string decl = c.take("symbol declaration");
        auto slash = decl.find('/');
        if (slash == std::string::npos)
          throw ParseError(lineno, "symbol declaration must be name/arity");
        std::string name = decl.substr(0, slash);
        auto ar = Rat::parse(decl.substr(slash + 1));
        if (!is_ident(name) || !ar || !ar->is_integer() || ar->is_negative())
          throw ParseError(lineno, "bad symbol declaration '" + decl + "'");
        if (m.symbol_index(name))
          throw ParseError(lineno, "duplicate symbol '" + name + "'");
        m.signature.push_back({name, static_cast<std::size_t>(ar->num())});
      }
    } else if (head == "dist") {
      advance_to(Section::kDist, lineno);
      dist_lines.emplace_back(lineno, toks);
      std::string name = c.take("distribution name");
      if (!is_ident(name))
        throw ParseError(lineno, "bad distribution name '" + name + "'");
      if (m.dist_index(name))
        throw ParseError(lineno, "duplicate distribution '" + name + "'");
      m.distributions.push_back({name, {}});
    } else if (head == "state") {
      advance_to(Section::kState, lineno);
      State s;
      s.name = c.take("state name");
      if (!is_ident(s.name))
        throw ParseError(lineno, "bad state name '" + s.name + "'");
      if (m.state_index(s.name))
        throw ParseError(lineno, "duplicate state '" + s.name + "'");
      c.expect("parity");
      auto p = Rat::parse(c.take("parity"));
      if (!p || !p->is_integer() || p->num() < 1)
        throw ParseError(lineno, "parity must be a natural >= 1");
      s.parity = static_cast<unsigned>(p->num());
      c.expect("offset");
      if (!have_semiring) throw ParseError(lineno, "semiring line missing");
      s.offset = parse_weight(m, c, "offset");
      if (c.accept("options")) {
        while (!c.done()) {
          std::string d = c.take("distribution name");
          auto di = m.dist_index(d);
          if (!di) throw ParseError(lineno, "unknown distribution '" + d + "'");
          s.options.push_back(*di);
        }
        if (s.options.empty())
          throw ParseError(lineno, "empty options clause");
      }
      m.states.push_back(std::move(s));
    } else if (head == "trans") {
      advance_to(Section::kTrans, lineno);
      pending.push_back({});  // resolved below
      pending.back().line = lineno;
      std::string q = c.take("source state");
      auto qi = m.state_index(q);
      if (!qi) throw ParseError(lineno, "unknown state '" + q + "'");
      pending.back().source = *qi;
      pending.back().tr = parse_transition_body(m, c);
      pending.back().tr.weight = parse_weight(m, c, "weight");
      if (pending.back().tr.weight.is_zero())
        throw ParseError(lineno, "transition weight is the semiring zero");
      if (!c.done()) throw ParseError(lineno, "trailing tokens");
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!have_semiring) throw ParseError(1, "semiring line missing");

  // Second pass: distribution bodies (successor states are known by now).
  for (auto& [line, toks] : dist_lines) {
    Cursor c{toks, 0, line};
    c.expect("dist");
    std::string name = c.take("name");
    Distribution& d = m.distributions[*m.dist_index(name)];
    c.expect("{");
    while (true) {
      Value w = parse_weight(m, c, "weight");
      if (w.is_zero())
        throw ParseError(line, "transition weight is the semiring zero");
      Transition t = parse_transition_body(m, c);
      t.weight = w;
      for (const Transition& prev : d.entries)
        if (prev.same_key(t))
          throw ParseError(line, "duplicate transition key in dist '" + name + "'");
      d.entries.push_back(std::move(t));
      if (c.accept("}")) break;
      c.expect(";");
    }
    if (!c.done()) throw ParseError(line, "trailing tokens");
  }

  // Shorthand trans lines: one anonymous singleton distribution per source.
  std::map<StateId, std::size_t> anon;
  for (PendingTrans& p : pending) {
    auto it = anon.find(p.source);
    if (it == anon.end()) {
      m.distributions.push_back(
          {fresh_dist_name(m, m.states[p.source].name), {}});
      it = anon.emplace(p.source, m.distributions.size() - 1).first;
      m.states[p.source].options.push_back(it->second);
    }
    Distribution& d = m.distributions[it->second];
    for (const Transition& prev : d.entries)
      if (prev.same_key(p.tr))
        throw ParseError(p.line, "duplicate transition key for state '" +
                                     m.states[p.source].name + "'");
    d.entries.push_back(std::move(p.tr));
  }

  if (auto err = validate_model(m)) throw ParseError(lineno, *err);

  bool has_even = std::any_of(m.states.begin(), m.states.end(),
                              [](const State& s) { return s.parity % 2 == 0; });
  if (!m.states.empty() && !has_even)
    m.warnings.push_back(
        "no even-parity state: no accepting run exists, every extent is the "
        "semiring zero");
  return m;
}

Model parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string render_model(const Model& m) {
  std::ostringstream out;
  out << "semiring " << m.semiring.str() << "\n";
  for (const Symbol& s : m.signature)
    out << "sig " << s.name << "/" << s.arity << "\n";
  for (const Distribution& d : m.distributions) {
    out << "dist " << d.name << " { ";
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
      const Transition& t = d.entries[i];
      if (i) out << "; ";
      out << t.weight.str() << " " << m.signature[t.symbol].name << "(";
      for (std::size_t j = 0; j < t.successors.size(); ++j) {
        if (j) out << ",";
        out << m.states[t.successors[j]].name;
      }
      out << ")";
    }
    out << " }\n";
  }
  for (const State& s : m.states) {
    out << "state " << s.name << " parity " << s.parity << " offset "
        << s.offset.str() << " options";
    for (std::size_t d : s.options) out << " " << m.distributions[d].name;
    out << "\n";
  }
  return out.str();
}

bool models_equal(const Model& a, const Model& b) {
  if (!(a.semiring == b.semiring)) return false;
  if (a.signature.size() != b.signature.size()) return false;
  for (std::size_t i = 0; i < a.signature.size(); ++i)
    if (a.signature[i].name != b.signature[i].name ||
        a.signature[i].arity != b.signature[i].arity)
      return false;
  if (a.distributions.size() != b.distributions.size()) return false;
  for (std::size_t i = 0; i < a.distributions.size(); ++i) {
    const Distribution& da = a.distributions[i];
    const Distribution& db = b.distributions[i];
    if (da.name != db.name || da.entries.size() != db.entries.size())
      return false;
    for (std::size_t j = 0; j < da.entries.size(); ++j) {
      if (!da.entries[j].same_key(db.entries[j]) ||
          !(da.entries[j].weight == db.entries[j].weight))
        return false;
    }
  }
  if (a.states.size() != b.states.size()) return false;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const State& sa = a.states[i];
    const State& sb = b.states[i];
    if (sa.name != sb.name || sa.parity != sb.parity ||
        !(sa.offset == sb.offset) || sa.options != sb.options)
      return false;
  }
  return true;
}

}  // namespace raps
