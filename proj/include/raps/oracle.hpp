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
#include <vector>

#include "raps/extent.hpp"
#include "raps/model.hpp"
#include "raps/resource_game.hpp"

namespace raps {

struct BlowupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ground truth by an independent method: solves the capped initial-credit
/// game over all levels {0..B} (no extent pruning) and returns the least
/// winning level per state, infinity when none. Throws BlowupError when
/// |Q| * (B+1) exceeds `max_state_configs`.
ExtentMap oracle_extent_credit(const Model& m,
                               std::size_t max_state_configs = 100000);

struct EnumerateResult {
  Value best;                  // least accepting run value found
  bool exhaustive = false;     // all presentations within the budget seen
  std::size_t runs_seen = 0;
};

/// Enumerates canonical regular-run presentations with at most `max_nodes`
/// nodes (nodes in discovery order, children either existing nodes or the
/// next fresh one), keeps the least accepting value. A sound upper bound on
/// the extent; exact whenever some optimal run fits the budget.
EnumerateResult enumerate_runs(const Model& m, StateId q0,
                               std::size_t max_nodes,
                               std::size_t work_cap = 200000);
Value oracle_extent_enumerate(const Model& m, StateId q0,
                              std::size_t max_nodes);

/// Winner of the underlying unweighted parity game per model state; the
/// boolean extent must be 1 exactly on the existential region.
std::vector<Winner> oracle_boolean_winners(const Model& m);

/// Size envelope for the seeded generator. Profiles keep the state space
/// small enough for the exhaustive oracles.
struct RandomProfile {
  std::string name;
  KindTag kind = KindTag::kTropicalNat;
  std::size_t max_states = 6;
  std::size_t max_options = 1;      // > 1 turns states into game states
  std::size_t max_transitions = 3;  // per distribution
  long long max_weight = 4;
  long long max_offset = 4;
  long long min_bound = 4;
  long long max_bound = 32;
  unsigned max_parity = 2;
  std::size_t max_arity = 1;  // 2 adds binary branching
  bool terminal = true;       // include an arity-0 symbol sometimes
};

/// Known profiles: buchi-automaton, buchi-game, parity3-automaton, boolean.
RandomProfile profile_by_name(const std::string& name);

/// Deterministic pseudo-random valid model; identical across platforms.
Model random_model(unsigned long long seed, const RandomProfile& profile);

struct OracleReport {
  struct Line {
    unsigned long long seed;
    std::string state;
    std::string expected;
    std::string got;
    bool ok;
  };
  std::vector<Line> lines;
  std::size_t seeds_total = 0;
  std::size_t seeds_ok = 0;
  std::vector<unsigned long long> failed_seeds;

  bool all_ok() const { return seeds_ok == seeds_total; }
  /// "seed state expected got status" lines plus an "N/N ok" summary.
  std::string render() const;
};

/// Runs every seed in [first, last] through the solvers and the matching
/// oracle and compares exactly.
OracleReport oracle_batch(unsigned long long first, unsigned long long last,
                          const RandomProfile& profile);

}  // namespace raps
