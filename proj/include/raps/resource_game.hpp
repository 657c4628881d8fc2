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

#include <optional>
#include <string>
#include <vector>

#include "raps/extent.hpp"
#include "raps/model.hpp"

namespace raps {

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One position of the derived standard parity game. Automata use the
/// state/branch layers; games additionally alternate through the option
/// layer, where the offset has already been applied to the level.
struct Config {
  enum class Tag { kState, kOption, kBranch };
  Tag tag = Tag::kState;
  StateId state = 0;                        // kState, kOption
  std::size_t dist = 0;                     // kOption
  long long level = 0;                      // kState, kOption
  std::size_t symbol = 0;                   // kBranch
  std::vector<std::pair<StateId, long long>> parts;  // kBranch

  auto key() const { return std::tie(tag, state, dist, level, symbol, parts); }
  bool operator<(const Config& o) const { return key() < o.key(); }
  bool operator==(const Config& o) const { return key() == o.key(); }
  std::string str(const Model& m) const;
};

struct ResourceGame {
  const Model* model = nullptr;
  std::vector<Config> configs;
  std::vector<bool> exists_owner;
  std::vector<unsigned> parity;
  std::vector<std::vector<std::size_t>> moves;

  std::size_t size() const { return configs.size(); }
  std::optional<std::size_t> find(const Config& c) const;
  std::optional<std::size_t> find_state(StateId q, long long level) const;
  /// One "owner parity config -> targets" line per config.
  std::string dump() const;
};

/// The resource game of a model: state configs carry levels from ext(q) up
/// to B (states with infinite extent are excluded), existential moves
/// respect n + r(q) >= w + n_1 + ... + n_m with the combined requirement
/// w + sum n_i staying within the bound.
ResourceGame build_resource_game(const Model& m, const ExtentMap& ext);

/// Same construction with a caller-chosen minimum level per state; entries
/// equal to kNoLevel exclude the state. Levels {0..B} everywhere turn this
/// into the capped initial-credit game the oracle solves.
inline constexpr long long kNoLevel = -1;
ResourceGame build_leveled_game(const Model& m,
                                const std::vector<long long>& min_levels);

/// The sub-game induced by the last inner solver call: state configs are
/// the recorded updates plus (q, ext(q)) for even states, moves are those
/// of the full game with both endpoints inside.
ResourceGame build_subgame(const Model& m, const UpdateTrace& trace,
                           const ExtentMap& ext);

enum class Winner { kExists, kForall };

/// Exact winning regions by the attractor recursion. Finite plays ending in
/// a stuck universal position are existential wins and vice versa.
std::vector<Winner> zielonka_solve(const ResourceGame& g);

}  // namespace raps
