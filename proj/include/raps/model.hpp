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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "raps/semiring.hpp"

namespace raps {

using StateId = std::size_t;

struct ParseError : std::runtime_error {
  ParseError(std::size_t line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
  std::size_t line;
};

struct Symbol {
  std::string name;
  std::size_t arity = 0;
};

/// One weighted branching step: symbol plus one successor per arity slot.
/// The weight is never the semiring zero (zero entries are simply absent).
struct Transition {
  std::size_t symbol = 0;
  std::vector<StateId> successors;
  Value weight;

  bool same_key(const Transition& o) const {
    return symbol == o.symbol && successors == o.successors;
  }
};

struct Distribution {
  std::string name;
  std::vector<Transition> entries;  // finite, nonempty, keys pairwise distinct
};

struct State {
  std::string name;
  unsigned parity = 1;                // >= 1
  Value offset;
  std::vector<std::size_t> options;   // indices into Model::distributions, nonempty
};

/// A weighted parity game with offsetting. Automata are the special case
/// where every state has exactly one option. Declaration order of states,
/// distributions and transitions is preserved and acts as the tie-breaking
/// order everywhere downstream.
class Model {
 public:
  Kind semiring;
  std::vector<Symbol> signature;
  std::vector<Distribution> distributions;
  std::vector<State> states;
  std::vector<std::string> warnings;

  std::optional<StateId> state_index(std::string_view name) const;
  std::optional<std::size_t> dist_index(std::string_view name) const;
  std::optional<std::size_t> symbol_index(std::string_view name) const;

  unsigned max_parity() const;
  std::vector<StateId> states_with_parity(unsigned k) const;
  /// Least common multiple of all weight/offset denominators (1 for the
  /// natural kinds); bounds the fixpoint chain lengths for rational models.
  long long value_granularity() const;
};

/// Parses the line-based model format; throws ParseError on lexical, syntax
/// and semantic violations (dangling states, arity mismatches, weights
/// outside {0..B}, parity 0, ...).
Model parse_model(std::string_view text);
Model parse_model_file(const std::string& path);

/// Canonical rendering; parse_model(render_model(m)) reproduces m exactly.
std::string render_model(const Model& m);

/// Structural consistency check used by parse_model and the generators.
/// Returns an error description, or nothing when the model is valid.
std::optional<std::string> validate_model(const Model& m);

/// True iff every state has exactly one option.
bool is_automaton(const Model& m);

/// True iff every parity is 1 or 2 and at least one state is even.
bool is_buchi(const Model& m);

bool models_equal(const Model& a, const Model& b);

}  // namespace raps
