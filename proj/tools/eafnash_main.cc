// Copyright 2026 The eafnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 internal
// consistency failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "eafnash/eaf.h"
#include "eafnash/explain.h"
#include "eafnash/formats.h"
#include "eafnash/game.h"
#include "eafnash/game_framework.h"
#include "eafnash/nash_bridge.h"
#include "eafnash/service.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

// Raised for flag combinations that parse but make no sense together.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string input;
  std::string output;
};

void emit(const CommonOptions& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + common.output);
  out << text;
}

void emit_json(const CommonOptions& common, const eafnash::Json& j) {
  emit(common, j.dump(2) + "\n");
}

std::shared_ptr<const eafnash::Game> load_game(const std::string& path) {
  return std::make_shared<const eafnash::Game>(eafnash::load_game_file(path));
}

eafnash::SolveOptions solve_options(const std::string& engine) {
  eafnash::SolveOptions options;
  options.engine = eafnash::parse_engine(engine);
  options.brute_force_cap = eafnash::brute_force_cap_from_env();
  return options;
}

bool is_framework_file(const eafnash::Json& input) {
  return input.is_object() && input.contains("nodes");
}

int run_validate(const CommonOptions& common) {
  auto game = load_game(common.input);
  const auto counts = eafnash::argument_counts(*game);
  const eafnash::Json summary = {
      {"valid", true},
      {"players", game->num_players()},
      {"profiles", game->num_profiles()},
      {"counts", eafnash::counts_to_json(counts)},
  };
  emit_json(common, summary);
  return kExitOk;
}

int run_build(const CommonOptions& common, const std::string& format) {
  const eafnash::Json input =
      eafnash::parse_json_text(eafnash::read_file(common.input));
  // A framework file is re-emitted canonically, so build is idempotent.
  const eafnash::FrameworkDocument doc =
      is_framework_file(input)
          ? eafnash::framework_from_json(input)
          : eafnash::to_document(eafnash::assemble_framework(
                std::make_shared<const eafnash::Game>(eafnash::Game::validate(
                    eafnash::game_description_from_json(input)))));
  if (format == "dot") {
    emit(common, eafnash::framework_to_dot(doc));
  } else {
    emit_json(common, eafnash::framework_to_json(doc));
  }
  return kExitOk;
}

int run_solve(const CommonOptions& common, const std::string& semantics_flag,
              const std::string& engine, bool engine_given) {
  const eafnash::Semantics semantics = eafnash::parse_semantics(semantics_flag);
  const eafnash::Json input =
      eafnash::parse_json_text(eafnash::read_file(common.input));

  if (is_framework_file(input)) {
    // A bare framework has no game structure, so only the generic engine
    // applies.
    if (engine_given && engine != "generic") {
      throw UsageError("framework files can only be solved with --engine generic");
    }
    const auto doc = eafnash::framework_from_json(input);
    const auto extensions = eafnash::enumerate_extensions_bruteforce(
        doc.framework, semantics, eafnash::brute_force_cap_from_env());
    emit_json(common, {{"format", eafnash::kResultsFormat},
                       {"version", 1},
                       {"engine", "generic"},
                       {"semantics", eafnash::to_string(semantics)},
                       {"extensions",
                        eafnash::extensions_to_json(doc.framework, extensions)}});
    return kExitOk;
  }

  auto game = std::make_shared<const eafnash::Game>(
      eafnash::Game::validate(eafnash::game_description_from_json(input)));
  const auto gf = eafnash::assemble_framework(game);
  const auto report = eafnash::solve(gf, solve_options(engine));
  emit_json(common, eafnash::results_to_json(gf, report, semantics));
  return kExitOk;
}

int run_nash(const CommonOptions& common, bool check_oracle) {
  auto game = load_game(common.input);
  const auto gf = eafnash::assemble_framework(game);
  const auto nash = eafnash::nash_from_framework(gf);
  eafnash::Json profiles = eafnash::Json::array();
  for (const auto& s : nash) profiles.push_back(eafnash::profile_to_json(*game, s));
  eafnash::Json out = {{"nash", profiles}};
  if (check_oracle) {
    const auto oracle = eafnash::nash_equilibria_bruteforce(*game);
    if (oracle != nash) {
      eafnash::Json expected = eafnash::Json::array();
      for (const auto& s : oracle) expected.push_back(eafnash::profile_to_json(*game, s));
      throw eafnash::InternalConsistencyError(
          "framework equilibria " + profiles.dump() +
          " differ from the direct computation " + expected.dump());
    }
    out["oracle"] = {{"checked", true}, {"agrees", true}};
  }
  emit_json(common, out);
  return kExitOk;
}

int run_explain(const CommonOptions& common, const std::string& profile_flag,
                const std::string& format) {
  auto game = load_game(common.input);
  eafnash::StrategyProfile profile;
  try {
    profile = eafnash::parse_profile_flag(*game, profile_flag);
  } catch (const eafnash::GameError& e) {
    throw UsageError(std::string("--profile: ") + e.what());
  }
  const auto gf = eafnash::assemble_framework(game);
  const auto report = eafnash::solve(gf);
  const bool nash = std::find(report.nash.begin(), report.nash.end(), profile) !=
                    report.nash.end();
  const eafnash::ExplanationNode tree =
      nash ? eafnash::explain_nash(gf, report, profile)
           : eafnash::explain_not_nash(gf, profile);
  if (format == "json") {
    emit_json(common, eafnash::explanation_to_json(gf, tree));
  } else {
    emit(common, eafnash::render_tree(gf, tree));
  }
  return kExitOk;
}

int run_serve(const CommonOptions& common, const std::string& host, int port) {
  eafnash::ServiceOptions options;
  options.solve.brute_force_cap = eafnash::brute_force_cap_from_env();
  eafnash::Service service(load_game(common.input), options);
  std::cerr << "serving " << common.input << " on http://" << host << ":" << port
            << "\n";
  if (!eafnash::serve(service, host, port)) {
    throw UsageError("cannot listen on " + host + ":" + std::to_string(port));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria of normal-form games via extended argumentation"};
  app.require_subcommand(1);

  CommonOptions common;
  const auto add_common = [&common](CLI::App* sub, const char* what) {
    sub->add_option("input", common.input, what)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", common.output, "Write output to this file");
  };

  auto* validate = app.add_subcommand("validate", "Check a game file");
  add_common(validate, "Game file");

  auto* build = app.add_subcommand("build", "Export the game's argumentation framework");
  add_common(build, "Game or framework file");
  std::string build_format = "graph";
  build->add_option("--format", build_format, "graph (JSON) or dot")
      ->check(CLI::IsMember({"graph", "dot"}));

  auto* solve = app.add_subcommand("solve", "Enumerate extensions");
  add_common(solve, "Game file or framework file");
  std::string semantics = "preferred";
  std::string engine = "structured";
  solve->add_option("--semantics", semantics, "preferred or stable")
      ->check(CLI::IsMember({"preferred", "stable"}));
  auto* engine_opt = solve->add_option("--engine", engine, "structured or generic")
                         ->check(CLI::IsMember({"structured", "generic"}));

  auto* nash = app.add_subcommand("nash", "List pure Nash equilibria");
  add_common(nash, "Game file");
  bool check_oracle = false;
  nash->add_flag("--check-oracle", check_oracle,
                 "Cross-check against direct best-response marking");

  auto* explain = app.add_subcommand("explain", "Explain why a profile is (not) an equilibrium");
  add_common(explain, "Game file");
  std::string profile;
  std::string explain_format = "text";
  explain->add_option("--profile", profile, "Strategies in player order, e.g. stag,stag")
      ->required();
  explain->add_option("--format", explain_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  add_common(serve, "Game file");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "Interface to bind");
  serve->add_option("--port", port, "Port to listen on")->check(CLI::Range(1, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return run_validate(common);
    if (*build) return run_build(common, build_format);
    if (*solve) return run_solve(common, semantics, engine, engine_opt->count() > 0);
    if (*nash) return run_nash(common, check_oracle);
    if (*explain) return run_explain(common, profile, explain_format);
    if (*serve) return run_serve(common, host, port);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eafnash::CandidateCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eafnash::TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eafnash::FormatError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const eafnash::GameError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const eafnash::FrameworkError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const eafnash::InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
