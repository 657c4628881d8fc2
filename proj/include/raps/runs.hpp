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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "raps/extent.hpp"
#include "raps/model.hpp"
#include "raps/strategy.hpp"

namespace raps {

/// A regular presentation of a possibly infinite run tree: each node picks
/// one transition of its state, children point back into the node list.
struct RunNode {
  std::string id;
  StateId state = 0;
  std::size_t symbol = 0;
  std::vector<std::size_t> children;
};

struct RegularRun {
  std::vector<RunNode> nodes;
  std::size_t root = 0;
};

/// Resource levels per node, exact rationals in the redistribution mode.
struct Annotation {
  std::vector<Rat> levels;
};

/// Fixpoint value of the run: iterates the one-step operator from the
/// lattice top over the finite node set until stable. A graph that is not a
/// run of the model values to the semiring zero; `warning` receives a note
/// when that happens.
Value run_value(const Model& m, const RegularRun& z,
                std::string* warning = nullptr);

/// True iff no reachable cycle has an odd maximal state parity; terminated
/// branches impose no constraint.
bool is_accepting(const Model& m, const RegularRun& z);

/// True iff every node level is at least the extent of its state and every
/// edge satisfies the resource-game move inequality.
bool check_annotation(const Model& m, const RegularRun& z, const Annotation& a,
                      const ExtentMap& ext);

struct RunFile {
  RegularRun run;
  std::optional<Annotation> levels;
};

/// Line format: "node <id> <state> <symbol>(<child>,...)", one "root <id>"
/// line, optional "level <id> <n|p/q>" lines covering every node.
RunFile parse_run(const Model& m, std::string_view text);
std::string render_run(const Model& m, const RegularRun& z,
                       const Annotation* a = nullptr);

/// Chooses an option index at a game state; consulted once per distinct
/// configuration during unfolding.
using Adversary =
    std::function<std::size_t(StateId q, const Rat& mem,
                              const std::vector<std::size_t>& options)>;

struct Unfolded {
  RegularRun run;
  Annotation ann;
  std::vector<std::pair<StateId, Rat>> trace;  // discovery order
};

/// Unfolds a strategy into a regular run plus its annotation, reusing nodes
/// when the exact (state, memory) configuration recurs. Non-integer
/// memories additionally fold onto an existing node that plays the same
/// move with no more memory, which keeps tree-shaped carry-over unfoldings
/// finite. Throws UndefinedStrategyError when the strategy runs out of
/// moves, std::runtime_error when max_nodes is exceeded.
Unfolded unfold(const Model& m, const StrategyPlayer& player, StateId q0,
                const Rat& mem0, const Adversary* adversary = nullptr,
                std::size_t max_nodes = 100000);

}  // namespace raps
