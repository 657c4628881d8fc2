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
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "raps/extent.hpp"
#include "raps/model.hpp"
#include "raps/oracle.hpp"
#include "raps/prng.hpp"
#include "raps/resource_game.hpp"
#include "raps/runs.hpp"
#include "raps/strategy.hpp"

namespace py = pybind11;
using namespace raps;

namespace {

std::map<std::string, std::string> extent_dict(const Model& m,
                                               const ExtentMap& e) {
  std::map<std::string, std::string> out;
  for (StateId q = 0; q < m.states.size(); ++q)
    out[m.states[q].name] = e.at(q).str();
  return out;
}

// Simulation driven by a reduced strategy in its file form.
py::dict simulate(const Model& m, const std::string& strategy_text,
                  const std::string& from, const std::string& mem,
                  const std::string& adversary_spec) {
  ReducedStrategy red = parse_strategy(m, strategy_text);
  ExtentMap ext = extent_generic(m);
  SkeletonStrategy sk = reduced_skeleton(m, red, ext);
  CarryOverPlayer player(m, sk);

  auto q0 = m.state_index(from);
  if (!q0) throw std::invalid_argument("unknown state '" + from + "'");
  auto mem0 = Rat::parse(mem);
  if (!mem0 || mem0->is_negative())
    throw std::invalid_argument("bad memory '" + mem + "'");

  Adversary adv;
  ResourceGame g;
  AdversaryPolicy policy;
  if (!is_automaton(m)) {
    if (adversary_spec == "worst") {
      g = build_resource_game(m, ext);
      auto winners = zielonka_solve(g);
      policy = adversary_policy(g, winners, ext);
      long long bound = m.semiring.bound.num();
      adv = [&m, &g, &policy, bound](StateId q, const Rat& memv,
                                     const std::vector<std::size_t>& options) {
        long long lvl = std::min(bound, memv.num() / memv.den());
        auto cfg = g.find_state(q, lvl);
        if (cfg && policy.choice.count(*cfg)) {
          const Config& target = g.configs[policy.choice.at(*cfg)];
          for (std::size_t oi : options)
            if (m.states[q].options[oi] == target.dist) return oi;
        }
        return std::size_t(0);
      };
    } else if (adversary_spec.rfind("random:", 0) == 0) {
      auto seed = Rat::parse(adversary_spec.substr(7));
      if (!seed) throw std::invalid_argument("bad adversary seed");
      auto choices = std::make_shared<std::vector<std::size_t>>();
      Prng rng(static_cast<unsigned long long>(seed->num()));
      for (const State& s : m.states)
        choices->push_back(rng.below(s.options.size()));
      adv = [choices](StateId q, const Rat&, const std::vector<std::size_t>&) {
        return (*choices)[q];
      };
    } else {
      throw std::invalid_argument("unknown adversary '" + adversary_spec + "'");
    }
  }

  Unfolded u = unfold(m, player, *q0, *mem0, adv ? &adv : nullptr);
  py::list trace;
  for (auto& [q, lvl] : u.trace)
    trace.append(py::make_tuple(m.states[q].name, lvl.str()));
  py::dict out;
  out["trace"] = trace;
  out["accepting"] = is_accepting(m, u.run);
  out["value"] = run_value(m, u.run).str();
  return out;
}

}  // namespace

PYBIND11_MODULE(_raps, mod) {
  mod.doc() = "solver for resource-aware Buchi/parity automata and games";

  py::register_exception<ParseError>(mod, "ModelParseError");
  py::register_exception<UnsupportedError>(mod, "UnsupportedError");
  py::register_exception<UndefinedStrategyError>(mod, "UndefinedStrategyError");

  py::class_<Model>(mod, "Model")
      .def_property_readonly("states",
                             [](const Model& m) {
                               std::vector<std::string> out;
                               for (const State& s : m.states)
                                 out.push_back(s.name);
                               return out;
                             })
      .def_property_readonly("warnings",
                             [](const Model& m) { return m.warnings; })
      .def_property_readonly("is_automaton",
                             [](const Model& m) { return is_automaton(m); })
      .def_property_readonly("is_buchi",
                             [](const Model& m) { return is_buchi(m); })
      .def("__str__", [](const Model& m) { return render_model(m); });

  mod.def("parse_model",
          [](const std::string& text) { return parse_model(text); },
          py::arg("text"), "parse the textual model format");
  mod.def("render_model", &render_model, py::arg("model"));

  mod.def(
      "extent",
      [](const Model& m, const std::string& engine) {
        if (engine == "generic") return extent_dict(m, extent_generic(m));
        if (engine == "fig1") return extent_dict(m, extent_recursive(m).extents);
        throw std::invalid_argument("unknown engine '" + engine + "'");
      },
      py::arg("model"), py::arg("engine") = "generic",
      "per-state extents as exact strings");

  mod.def(
      "synthesize",
      [](const Model& m) {
        SynthResult r = synthesize_strategy(m);
        py::dict out;
        out["strategy"] = render_strategy(m, r.strategy);
        py::dict thetas;
        for (auto& [q, entry] : r.strategy.odd)
          thetas[py::str(m.states[q].name)] = entry.theta;
        out["theta"] = thetas;
        out["extents"] = extent_dict(m, r.extents);
        return out;
      },
      py::arg("model"),
      "attractor/good-for-energy synthesis; returns the strategy file text");

  mod.def("simulate", &simulate, py::arg("model"), py::arg("strategy"),
          py::arg("start"), py::arg("memory"), py::arg("adversary") = "worst");

  mod.def(
      "run_value",
      [](const Model& m, const std::string& run_text) {
        RunFile rf = parse_run(m, run_text);
        py::dict out;
        out["value"] = run_value(m, rf.run).str();
        out["accepting"] = is_accepting(m, rf.run);
        if (rf.levels) {
          ExtentMap ext = extent_generic(m);
          out["annotation_ok"] = check_annotation(m, rf.run, *rf.levels, ext);
        }
        return out;
      },
      py::arg("model"), py::arg("run"),
      "value and acceptance of a regular run in its file form");

  mod.def(
      "oracle_extent",
      [](const Model& m) { return extent_dict(m, oracle_extent_credit(m)); },
      py::arg("model"), "extents via the initial-credit game oracle");

  mod.def(
      "random_model",
      [](unsigned long long seed, const std::string& profile) {
        return random_model(seed, profile_by_name(profile));
      },
      py::arg("seed"), py::arg("profile") = "buchi-automaton");

  mod.def(
      "oracle_check",
      [](unsigned long long first, unsigned long long last,
         const std::string& profile) {
        OracleReport r = oracle_batch(first, last, profile_by_name(profile));
        return py::make_tuple(r.all_ok(), r.render());
      },
      py::arg("first"), py::arg("last"),
      py::arg("profile") = "buchi-automaton");
}
