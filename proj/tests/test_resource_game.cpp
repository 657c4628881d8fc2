#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "raps/extent.hpp"
#include "raps/model.hpp"
#include "raps/resource_game.hpp"

using namespace raps;

namespace {

long long lv(const Value& v) { return v.finite_value().num(); }

// Structural checks every constructed game must satisfy: strict layer
// alternation and the move inequality n + r(q) >= w + sum n_i with the
// combined requirement within the bound.
void check_game_invariants(const Model& m, const ResourceGame& g) {
  const long long bound = m.semiring.bound.num();
  const bool game = !is_automaton(m);
  auto cheapest_weight = [&](const Distribution& dist, const Config& br) {
    long long need = bound + 1;
    for (const Transition& tr : dist.entries) {
      if (tr.symbol != br.symbol) continue;
      bool match = tr.successors.size() == br.parts.size();
      for (std::size_t j = 0; match && j < br.parts.size(); ++j)
        match = tr.successors[j] == br.parts[j].first;
      if (match) need = std::min(need, lv(tr.weight));
    }
    return need;
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Config& c = g.configs[i];
    for (std::size_t t : g.moves[i]) {
      const Config& d = g.configs[t];
      // automata alternate owners strictly; games interpose the universal
      // option layer, so the layer cycle is what alternates
      if (!game) CHECK(g.exists_owner[i] != g.exists_owner[t]);
      switch (c.tag) {
        case Config::Tag::kState: {
          long long r = m.states[c.state].offset.is_inf()
                            ? bound
                            : lv(m.states[c.state].offset);
          long long budget = std::min(bound, c.level + r);
          if (game) {
            REQUIRE(d.tag == Config::Tag::kOption);
            CHECK(d.state == c.state);
            CHECK(d.level == budget);
          } else {
            REQUIRE(d.tag == Config::Tag::kBranch);
            long long need =
                cheapest_weight(m.distributions[m.states[c.state].options[0]], d);
            REQUIRE(need <= bound);
            long long total = need;
            for (auto& [q, n] : d.parts) total += n;
            CHECK(total <= budget);
          }
          break;
        }
        case Config::Tag::kOption: {
          REQUIRE(d.tag == Config::Tag::kBranch);
          long long need = cheapest_weight(m.distributions[c.dist], d);
          REQUIRE(need <= bound);
          long long total = need;
          for (auto& [q, n] : d.parts) total += n;
          CHECK(total <= c.level);
          break;
        }
        case Config::Tag::kBranch: {
          REQUIRE(d.tag == Config::Tag::kState);
          bool found = false;
          for (auto& [q, n] : c.parts)
            found |= q == d.state && n == d.level;
          CHECK(found);
          break;
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("loop automaton resource game has the expected moves") {
  Model m = parse_model(kLoopAutomaton);
  ExtentMap ext = extent_generic(m);
  ResourceGame g = build_resource_game(m, ext);
  check_game_invariants(m, g);

  StateId x = m.state_index("x").value();
  StateId y = m.state_index("y").value();
  StateId y1 = m.state_index("y1").value();
  StateId y2 = m.state_index("y2").value();
  (void)y1;

  auto has_word_move = [&](StateId from, long long n, StateId to, long long k) {
    auto src = g.find_state(from, n);
    REQUIRE(src.has_value());
    for (std::size_t b : g.moves[*src]) {
      const Config& br = g.configs[b];
      if (br.parts.size() == 1 && br.parts[0] == std::make_pair(to, k))
        return true;
    }
    return false;
  };

  CHECK(has_word_move(y, 6, x, 1));
  CHECK(has_word_move(y, 6, y1, 5));
  CHECK(has_word_move(y2, 2, y, 6));
  // no configuration exists below the extent
  CHECK(!g.find_state(y, 0).has_value());
  CHECK(!g.find_state(x, 0).has_value());
}

TEST_CASE("game resource game applies offsets on the universal move") {
  Model m = parse_model(kTwoOptionGame);
  ExtentMap ext = extent_generic(m);
  ResourceGame g = build_resource_game(m, ext);
  check_game_invariants(m, g);

  StateId y1 = m.state_index("y1").value();
  std::size_t gdist = m.dist_index("g").value();
  auto src = g.find_state(y1, 1);
  REQUIRE(src.has_value());
  CHECK(!g.exists_owner[*src]);
  bool found = false;
  for (std::size_t t : g.moves[*src]) {
    const Config& oc = g.configs[t];
    REQUIRE(oc.tag == Config::Tag::kOption);
    CHECK(g.exists_owner[t]);
    if (oc.dist == gdist && oc.level == 2) found = true;
  }
  CHECK(found);
}

TEST_CASE("sub-game contains exactly the update and even-extent configs") {
  Model m = parse_model(kLoopAutomaton);
  RecursiveResult r = extent_recursive(m);
  ResourceGame sub = build_subgame(m, r.trace, r.extents);
  check_game_invariants(m, sub);

  StateId x = m.state_index("x").value();
  StateId y = m.state_index("y").value();
  StateId y1 = m.state_index("y1").value();
  StateId y2 = m.state_index("y2").value();

  std::set<std::pair<StateId, long long>> got;
  for (const Config& c : sub.configs)
    if (c.tag == Config::Tag::kState) got.insert({c.state, c.level});
  std::set<std::pair<StateId, long long>> want = {
      {x, 1},  {y, 1},  {y, 2},  {y, 4},  {y, 6},
      {y1, 0}, {y1, 2}, {y1, 4}, {y2, 0}, {y2, 2}};
  CHECK(got == want);

  // of the two full-game moves from (y,6) toward (x,1) and (y1,5), only the
  // first survives: (y1,5) is not an update config
  auto y6 = sub.find_state(y, 6);
  REQUIRE(y6.has_value());
  bool to_x1 = false;
  bool to_y15 = false;
  for (std::size_t b : sub.moves[*y6]) {
    const Config& br = sub.configs[b];
    to_x1 |= br.parts == std::vector<std::pair<StateId, long long>>{{x, 1}};
    to_y15 |= br.parts == std::vector<std::pair<StateId, long long>>{{y1, 5}};
  }
  CHECK(to_x1);
  CHECK(!to_y15);
}

TEST_CASE("sub-game construction needs a Buchi model") {
  Model m = parse_model("semiring tropical-bounded 4\nsig step/1\n"
                        "state a parity 1 offset 0\nstate b parity 2 offset 0\n"
                        "state c parity 3 offset 0\n"
                        "trans a step(b) 1\ntrans b step(c) 1\ntrans c step(a) 0\n");
  RecursiveResult r = extent_recursive(m);
  CHECK_THROWS_AS(build_subgame(m, r.trace, r.extents), UnsupportedError);
}

TEST_CASE("zielonka finds the existential region of the sub-game") {
  Model m = parse_model(kLoopAutomaton);
  RecursiveResult r = extent_recursive(m);
  ResourceGame sub = build_subgame(m, r.trace, r.extents);
  std::vector<Winner> win = zielonka_solve(sub);
  for (StateId q = 0; q < m.states.size(); ++q) {
    auto id = sub.find_state(q, r.extents.at(q).finite_value().num());
    REQUIRE(id.has_value());
    CHECK(win[*id] == Winner::kExists);
  }
}

TEST_CASE("probe configurations below the extent are universal wins") {
  Model m = parse_model(kLoopAutomaton);
  std::vector<long long> zeros(m.states.size(), 0);
  ResourceGame g = build_leveled_game(m, zeros);
  check_game_invariants(m, g);
  std::vector<Winner> win = zielonka_solve(g);

  ExtentMap ext = extent_generic(m);
  for (StateId q = 0; q < m.states.size(); ++q) {
    long long e = ext.at(q).finite_value().num();
    for (long long n = 0; n <= m.semiring.bound.num(); ++n) {
      auto id = g.find_state(q, n);
      REQUIRE(id.has_value());
      CHECK(win[*id] == (n >= e ? Winner::kExists : Winner::kForall));
    }
  }
}

TEST_CASE("zielonka on tiny hand-built games") {
  Model m = parse_model(kLoopAutomaton);
  ResourceGame g;
  g.model = &m;

  SUBCASE("even self-loop is an existential win") {
    g.configs = {Config{Config::Tag::kState, 0, 0, 0, 0, {}}};
    g.exists_owner = {true};
    g.parity = {2};
    g.moves = {{0}};
    CHECK(zielonka_solve(g)[0] == Winner::kExists);
  }
  SUBCASE("stuck existential position loses, stuck universal one wins") {
    g.configs = {Config{Config::Tag::kState, 0, 0, 0, 0, {}},
                 Config{Config::Tag::kBranch, 0, 0, 0, 0, {}}};
    g.exists_owner = {true, false};
    g.parity = {1, 1};
    g.moves = {{}, {}};
    auto win = zielonka_solve(g);
    CHECK(win[0] == Winner::kForall);
    CHECK(win[1] == Winner::kExists);
  }
}

TEST_CASE("dump is deterministic and line-oriented") {
  Model m = parse_model(kLoopAutomaton);
  RecursiveResult r = extent_recursive(m);
  ResourceGame sub = build_subgame(m, r.trace, r.extents);
  std::string d1 = sub.dump();
  std::string d2 = build_subgame(m, r.trace, r.extents).dump();
  CHECK(d1 == d2);
  CHECK(d1.find("E 2 (x,1) ->") != std::string::npos);
}
