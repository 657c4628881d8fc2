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
#include "raps/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "raps/extent.hpp"
#include "raps/model.hpp"
#include "raps/oracle.hpp"
#include "raps/prng.hpp"
#include "raps/resource_game.hpp"
#include "raps/runs.hpp"
#include "raps/strategy.hpp"

namespace raps {

namespace {

constexpr int kOk = 0;
constexpr int kDisagreement = 1;
constexpr int kParse = 2;
constexpr int kUnsupported = 3;
constexpr int kStrategyUndefined = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_warnings(const Model& m, std::ostream& err) {
  for (const std::string& w : m.warnings) err << "warning: " << w << "\n";
}

int cmd_check(const std::string& model_file, std::istream&, std::ostream& out,
              std::ostream& err) {
  Model m = parse_model(slurp(model_file));
  print_warnings(m, err);
  std::size_t transitions = 0;
  for (const Distribution& d : m.distributions) transitions += d.entries.size();
  out << "states=" << m.states.size()
      << " distributions=" << m.distributions.size()
      << " transitions=" << transitions
      << " automaton=" << (is_automaton(m) ? 1 : 0)
      << " buchi=" << (is_buchi(m) ? 1 : 0) << " semiring=" << m.semiring.str()
      << "\n";
  return kOk;
}

int cmd_extent(const std::string& model_file, const std::string& engine,
               std::ostream& out, std::ostream& err) {
  Model m = parse_model(slurp(model_file));
  print_warnings(m, err);
  if (engine == "generic") {
    out << extent_generic(m).render(m);
  } else if (engine == "fig1") {
    out << extent_recursive(m).extents.render(m);
  } else {
    err << "unknown engine '" << engine << "'\n";
    return kUnsupported;
  }
  return kOk;
}

int cmd_synth(const std::string& model_file, const std::string& out_file,
              std::ostream& out, std::ostream& err) {
  Model m = parse_model(slurp(model_file));
  print_warnings(m, err);
  SynthResult r = synthesize_strategy(m);
  std::ofstream f(out_file);
  if (!f) throw std::runtime_error("cannot write '" + out_file + "'");
  f << render_strategy(m, r.strategy);
  for (StateId q = 0; q < m.states.size(); ++q) {
    auto it = r.strategy.odd.find(q);
    if (it != r.strategy.odd.end())
      out << m.states[q].name << " theta=" << it->second.theta << "\n";
  }
  return kOk;
}

int cmd_value(const std::string& model_file, const std::string& run_file,
              std::ostream& out, std::ostream& err) {
  Model m = parse_model(slurp(model_file));
  print_warnings(m, err);
  RunFile rf = parse_run(m, slurp(run_file));
  std::string warning;
  Value v = run_value(m, rf.run, &warning);
  if (!warning.empty()) err << "warning: " << warning << "\n";
  out << "value=" << v.str() << "\n";
  out << "accepting=" << (is_accepting(m, rf.run) ? 1 : 0) << "\n";
  if (rf.levels) {
    ExtentMap ext = extent_generic(m);
    out << "annotation="
        << (check_annotation(m, rf.run, *rf.levels, ext) ? "ok" : "bad")
        << "\n";
  }
  return kOk;
}

struct AdversarySetup {
  Adversary fn;
  // kept alive for the closure
  std::shared_ptr<ResourceGame> game;
  std::shared_ptr<AdversaryPolicy> policy;
};

AdversarySetup make_adversary(const Model& m, const ExtentMap& ext,
                              const std::string& kind, std::istream& in,
                              std::ostream& err) {
  AdversarySetup setup;
  if (kind == "worst") {
    setup.game = std::make_shared<ResourceGame>(build_resource_game(m, ext));
    auto winners = zielonka_solve(*setup.game);
    setup.policy = std::make_shared<AdversaryPolicy>(
        adversary_policy(*setup.game, winners, ext));
    auto game = setup.game;
    auto policy = setup.policy;
    const Model* model = &m;
    long long bound = m.semiring.bound.num();
    setup.fn = [game, policy, model, bound](
                   StateId q, const Rat& mem,
                   const std::vector<std::size_t>& options) -> std::size_t {
      long long lvl = mem.is_integer() ? std::min(bound, mem.num())
                                       : std::min(bound, mem.num() / mem.den());
      auto cfg = game->find_state(q, lvl);
      if (!cfg || !policy->choice.count(*cfg)) return 0;
      const Config& target = game->configs[policy->choice.at(*cfg)];
      for (std::size_t oi : options)
        if (model->states[q].options[oi] == target.dist) return oi;
      return 0;
    };
    return setup;
  }
  if (kind.rfind("random:", 0) == 0) {
    auto seed = Rat::parse(kind.substr(7));
    if (!seed || !seed->is_integer() || seed->is_negative())
      throw std::runtime_error("bad adversary seed in '" + kind + "'");
    // memoryless per state, fixed up front
    auto choices = std::make_shared<std::vector<std::size_t>>();
    Prng rng(static_cast<unsigned long long>(seed->num()));
    for (const State& s : m.states)
      choices->push_back(rng.below(s.options.size()));
    setup.fn = [choices](StateId q, const Rat&,
                         const std::vector<std::size_t>&) {
      return (*choices)[q];
    };
    return setup;
  }
  if (kind == "interactive") {
    const Model* model = &m;
    std::istream* input = &in;
    std::ostream* prompt = &err;
    setup.fn = [model, input, prompt](
                   StateId q, const Rat& mem,
                   const std::vector<std::size_t>& options) -> std::size_t {
      while (true) {
        (*prompt) << "state " << model->states[q].name << " mem " << mem.str()
                  << ", pick an option:\n";
        for (std::size_t oi : options)
          (*prompt) << "  [" << oi << "] "
                    << model->distributions[model->states[q].options[oi]].name
                    << "\n";
        (*prompt) << "choice> " << std::flush;
        std::string line;
        if (!std::getline(*input, line))
          throw std::runtime_error("no interactive input left");
        auto pick = Rat::parse(line);
        if (pick && pick->is_integer() && !pick->is_negative() &&
            static_cast<std::size_t>(pick->num()) < options.size())
          return static_cast<std::size_t>(pick->num());
        (*prompt) << "invalid choice\n";
      }
    };
    return setup;
  }
  throw std::runtime_error("unknown adversary '" + kind + "'");
}

int cmd_simulate(const std::string& model_file, const std::string& strat_file,
                 const std::string& from, const std::string& mem,
                 long long steps, const std::string& adversary_kind,
                 std::istream& in, std::ostream& out, std::ostream& err) {
  Model m = parse_model(slurp(model_file));
  print_warnings(m, err);
  ReducedStrategy red = parse_strategy(m, slurp(strat_file));
  ExtentMap ext = extent_generic(m);
  SkeletonStrategy sk = reduced_skeleton(m, red, ext);
  CarryOverPlayer player(m, sk);

  auto q0 = m.state_index(from);
  if (!q0) {
    err << "unknown state '" << from << "'\n";
    return kParse;
  }
  auto mem0 = Rat::parse(mem);
  if (!mem0 || mem0->is_negative()) {
    err << "bad memory '" << mem << "'\n";
    return kParse;
  }

  Adversary adv;
  AdversarySetup setup;
  if (!is_automaton(m)) {
    setup = make_adversary(m, ext, adversary_kind, in, err);
    adv = setup.fn;
  }

  Unfolded u = unfold(m, player, *q0, *mem0, adv ? &adv : nullptr);
  long long shown = 0;
  for (auto& [q, lvl] : u.trace) {
    if (shown++ >= steps) break;
    out << m.states[q].name << " " << lvl.str() << "\n";
  }
  Value v = run_value(m, u.run);
  out << (is_accepting(m, u.run) ? "ACCEPTING" : "NOT-ACCEPTING")
      << " value=" << v.str() << "\n";
  return kOk;
}

int cmd_oracle_check(const std::string& seeds, const std::string& profile_name,
                     std::ostream& out, std::ostream& err) {
  auto dots = seeds.find("..");
  if (dots == std::string::npos) {
    err << "seeds must be given as a..b\n";
    return kParse;
  }
  auto a = Rat::parse(seeds.substr(0, dots));
  auto b = Rat::parse(seeds.substr(dots + 2));
  if (!a || !b || !a->is_integer() || !b->is_integer() || a->is_negative() ||
      b->is_negative()) {
    err << "seeds must be given as a..b\n";
    return kParse;
  }
  RandomProfile profile = profile_by_name(profile_name);
  OracleReport report =
      oracle_batch(static_cast<unsigned long long>(a->num()),
                   static_cast<unsigned long long>(b->num()), profile);
  out << report.render();
  if (!report.all_ok()) {
    err << "disagreeing seeds:";
    for (auto s : report.failed_seeds) err << " " << s;
    err << "\n";
    return kDisagreement;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"resource-aware parity solver"};
  app.require_subcommand(1);

  std::string model_file, run_file, strat_file, out_file;
  std::string engine = "generic";
  std::string from, mem = "0";
  std::string adversary = "worst";
  std::string seeds, profile = "buchi-automaton";
  long long steps = 10000;

  auto* check = app.add_subcommand("check", "parse and validate a model");
  check->add_option("model", model_file)->required();

  auto* extent = app.add_subcommand("extent", "print per-state extents");
  extent->add_option("model", model_file)->required();
  extent->add_option("--engine", engine)
      ->check(CLI::IsMember({"generic", "fig1"}));

  auto* synth = app.add_subcommand("synth", "synthesize a reduced strategy");
  synth->add_option("model", model_file)->required();
  synth->add_option("--out", out_file)->required();

  auto* value = app.add_subcommand("value", "evaluate a regular run");
  value->add_option("model", model_file)->required();
  value->add_option("run", run_file)->required();

  auto* simulate = app.add_subcommand("simulate", "play a strategy");
  simulate->add_option("model", model_file)->required();
  simulate->add_option("strategy", strat_file)->required();
  simulate->add_option("--from", from)->required();
  simulate->add_option("--mem", mem)->required();
  simulate->add_option("--steps", steps);
  simulate->add_option("--adversary", adversary);

  auto* play = app.add_subcommand("play", "interactive simulation");
  play->add_option("model", model_file)->required();
  play->add_option("strategy", strat_file)->required();
  play->add_option("--from", from)->required();
  play->add_option("--mem", mem)->required();
  play->add_option("--steps", steps);

  auto* oracle = app.add_subcommand("oracle-check", "compare against oracles");
  oracle->add_option("--seeds", seeds)->required();
  oracle->add_option("--profile", profile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*check) return cmd_check(model_file, in, out, err);
    if (*extent) return cmd_extent(model_file, engine, out, err);
    if (*synth) return cmd_synth(model_file, out_file, out, err);
    if (*value) return cmd_value(model_file, run_file, out, err);
    if (*simulate)
      return cmd_simulate(model_file, strat_file, from, mem, steps, adversary,
                          in, out, err);
    if (*play)
      return cmd_simulate(model_file, strat_file, from, mem, steps,
                          "interactive", in, out, err);
    if (*oracle) return cmd_oracle_check(seeds, profile, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const UndefinedStrategyError& e) {
    err << "error: " << e.what() << "\n";
    return kStrategyUndefined;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}

}  // namespace raps
