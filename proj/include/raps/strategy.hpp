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
#include <optional>
#include <vector>

#include "raps/extent.hpp"
#include "raps/model.hpp"
#include "raps/resource_game.hpp"

namespace raps {

struct UndefinedStrategyError : std::runtime_error {
  UndefinedStrategyError(std::string what_, StateId state_, Rat memory_)
      : std::runtime_error(std::move(what_)), state(state_), memory(memory_) {}
  StateId state;
  Rat memory;
};

/// One recorded strategy move: an option of the state, a transition inside
/// it, and the resource levels handed to the successors (the `old` snapshot
/// values at witness time).
struct Move {
  std::size_t option = 0;      // index into the state's options
  std::size_t transition = 0;  // index into the distribution's entries
  std::vector<long long> levels;

  bool operator==(const Move& o) const = default;
};

/// Two moves per odd state (toward acceptance at the threshold, toward
/// resource accumulation at the extent) plus one move per even state.
struct ReducedStrategy {
  struct OddEntry {
    long long theta = 0;
    Move acceptor;
    std::optional<Move> base;  // absent when the threshold is the extent
  };
  struct EvenEntry {
    long long level = 0;  // the state's extent
    Move sigma;
  };
  std::map<StateId, OddEntry> odd;
  std::map<StateId, EvenEntry> even;
};

struct SynthResult {
  ReducedStrategy strategy;
  ExtentMap extents;
  UpdateTrace trace;
  FixpointStats stats;  // rounds of the odd re-computation loop
};

/// The attractor/good-for-energy synthesis loop: fixes even-state values
/// and witnesses, resets odd states, and re-runs the innermost solver; the
/// first strict update of a state sets its acceptor move and threshold,
/// every later one overwrites its base move. Games take the worst option.
/// Throws UnsupportedError for non-Buchi models.
SynthResult synthesize_strategy(const Model& m);

/// A strategy on a finite sub-game: one move per (state, level) pair. For
/// games the completion tables additionally store, per (state, option), the
/// option's witnessing move at the state's first and last update rounds;
/// simulation plays these when the adversary deviates from the recorded
/// option (they are exactly the per-option sub-game moves the update rounds
/// induce, so they are always affordable at the threshold/extent levels).
struct SkeletonStrategy {
  std::map<std::pair<StateId, long long>, Move> entries;
  std::map<std::pair<StateId, std::size_t>, Move> acceptor_completion;
  std::map<std::pair<StateId, std::size_t>, Move> base_completion;

  bool defined(StateId q, long long level) const {
    return entries.count({q, level}) > 0;
  }
  /// Levels recorded for q, ascending.
  std::vector<long long> domain(StateId q) const;
  /// Largest recorded level of q that is <= mem, if any.
  std::optional<long long> level_at(StateId q, const Rat& mem) const;
};

/// Fills the completion tables by replaying the update trace round by
/// round. Even states complete from the final value table.
void attach_completions(const Model& m, const UpdateTrace& trace,
                        SkeletonStrategy& s);

struct Skeletons {
  SkeletonStrategy full;     // one entry per recorded update + even states
  SkeletonStrategy reduced;  // acceptor/base/even entries only
};

/// Reconstructs both skeleton forms from the update trace and the reduced
/// strategy; throws std::invalid_argument when they disagree (they must
/// originate from the same model).
Skeletons skeleton_of(const Model& m, const ReducedStrategy& reduced,
                      const UpdateTrace& trace);

/// Builds the reduced skeleton without a trace (e.g. from a strategy file):
/// acceptor entries sit at the threshold, base and even entries at the
/// state's extent.
SkeletonStrategy reduced_skeleton(const Model& m, const ReducedStrategy& s,
                                  const ExtentMap& ext);

/// Decides the no-redundancy property: no strategy-conform path moves from
/// a non-accepting (q,n) to (q,n') with n' < n without an even-parity
/// configuration in between. Conform paths follow recorded moves exactly;
/// successors outside the domain end the path.
bool no_redundancy(const Model& m, const SkeletonStrategy& s);

/// Equal shares surplus/k, summing exactly to the surplus. k = 0 is a
/// usage error (terminating moves discard their surplus instead).
std::vector<Rat> distribute_carryover(const Rat& surplus, std::size_t k);

/// One strategy decision: the move to play and the successor memories.
struct StrategyStep {
  std::size_t option = 0;
  std::size_t transition = 0;
  std::vector<std::pair<StateId, Rat>> successors;
};

/// Interface unfolding works against. `forced_option` carries the
/// adversary's choice in games and is empty for automata.
class StrategyPlayer {
 public:
  virtual ~StrategyPlayer() = default;
  virtual StrategyStep step(StateId q, const Rat& mem,
                            std::optional<std::size_t> forced_option) const = 0;
};

/// Plays skeleton entries verbatim: defined exactly on the skeleton domain,
/// successor memories are the stored levels.
class MemoryFullPlayer : public StrategyPlayer {
 public:
  MemoryFullPlayer(const Model& m, const SkeletonStrategy& s);
  StrategyStep step(StateId q, const Rat& mem,
                    std::optional<std::size_t> forced_option) const override;

 private:
  const Model& m_;
  const SkeletonStrategy& s_;
};

/// Plays the entry at the largest recorded level not exceeding the current
/// memory and carries the surplus forward (split equally across branches).
/// When the adversary deviates from the recorded option, the move is
/// completed on the fly: at the threshold the option's cheapest transition
/// into even states, below it the option's extent-cheapest transition.
class CarryOverPlayer : public StrategyPlayer {
 public:
  CarryOverPlayer(const Model& m, const SkeletonStrategy& s);
  StrategyStep step(StateId q, const Rat& mem,
                    std::optional<std::size_t> forced_option) const override;

 private:
  const Model& m_;
  const SkeletonStrategy& s_;
  std::vector<long long> theta_;  // max skeleton level per state
  std::vector<long long> ext_;    // min skeleton level per state
};

/// Def-shaped helpers over the players (automaton forms).
std::vector<std::pair<StateId, Rat>> next_memory_full(const Model& m,
                                                      const SkeletonStrategy& s,
                                                      StateId q, const Rat& mem);
StrategyStep next_carry_over(const Model& m, const SkeletonStrategy& s,
                             StateId q, const Rat& mem);

/// Memoryless worst-case opponent: per universal configuration, the first
/// move (in construction order) staying inside the universal winning
/// region, otherwise the move with the least slack against the extents.
struct AdversaryPolicy {
  std::map<std::size_t, std::size_t> choice;  // config id -> target id
};
AdversaryPolicy adversary_policy(const ResourceGame& g,
                                 const std::vector<Winner>& winners,
                                 const ExtentMap& ext);

/// Strategy file rendering: one line per state with entries,
///   q theta=<n> acceptor=<dist>:<sym>(<succ>:<lvl>,...) base=<move>|none
///   q sigma=<dist>:<sym>(...)
std::string render_strategy(const Model& m, const ReducedStrategy& s);
ReducedStrategy parse_strategy(const Model& m, std::string_view text);

}  // namespace raps
