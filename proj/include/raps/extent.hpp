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

#include <map>
#include <string>
#include <vector>

#include "raps/model.hpp"

namespace raps {

/// Per-state solution of the nested equational system, indexed by StateId.
struct ExtentMap {
  std::vector<Value> values;

  const Value& at(StateId q) const { return values[q]; }
  bool operator==(const ExtentMap& o) const = default;
  /// One "state=value" line per state, in declaration order.
  std::string render(const Model& m) const;
};

/// One right-hand-side evaluation: the infimum over the state's options of
/// the semiring sum, over each option's transitions, of
/// weight * current(q_1) * ... * current(q_n), residuated by the offset.
/// For automata the infimum over the single option is the identity.
Value one_step_value(const Model& m, StateId q, const std::vector<Value>& current);

/// Solves the nested system with clean block restarts: mu blocks (odd
/// parities) start at the semiring zero, nu blocks (even parities) at the
/// semiring one, innermost block first. Works for every provided kind.
ExtentMap extent_generic(const Model& m);

/// One strict update of the shared extent table during the recursive
/// solver: state, its new (pre-offset) level, the witnessing option and
/// transition, and the successor levels read from the round snapshot.
struct ExtentUpdate {
  StateId state = 0;
  long long level = 0;
  std::size_t option = 0;
  std::size_t transition = 0;
  std::vector<long long> successor_levels;
  long long round = 0;  // 1-based round of the recording loop
};

/// Chronological updates of the last innermost (parity-1) solver call;
/// this is what seeds the resource sub-game and the strategy synthesis.
struct UpdateTrace {
  std::vector<ExtentUpdate> updates;
};

/// Round counters of the repeat-until-stable loops, per parity class.
struct FixpointStats {
  std::map<unsigned, long long> max_rounds;
  std::map<unsigned, long long> class_size;

  /// Worst observed rounds never exceed B * |Q_k| + 1 for any class k.
  bool within_budget(long long bound_b) const;
};

struct RecursiveResult {
  ExtentMap extents;
  UpdateTrace trace;
  FixpointStats stats;
};

/// The recursive solver specialised to the natural bounded tropical kind:
/// a single shared value table, one `old` snapshot per round, Jacobi
/// updates within the active parity class, and the per-update witnesses
/// recorded. For games each state takes the worst option. Throws
/// std::invalid_argument for non tropical-bounded models.
RecursiveResult extent_recursive(const Model& m);

}  // namespace raps
