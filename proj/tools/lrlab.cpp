// lrlab: Lieb-Robinson bound evaluation and exact-dynamics verification.
//
//   lrlab <check|constants|chains|bound|simulate|verify> --config <path>
//         [--lambda <x>] [--out <dir>]
//
// Exit codes: 0 pass, 1 failed invariant or runtime error, 2 usage or
// configuration error.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "lrlab/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lieb-Robinson bounds for commutator-bounded lattice Hamiltonians"};
  std::string command;
  std::string config_path;
  std::optional<double> lambda;
  std::optional<std::string> out;
  app.add_option("command", command, "check | constants | chains | bound | simulate | verify")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--lambda", lambda, "decay parameter override (default: xi)");
  app.add_option("--out", out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lrlab::kExitPass : lrlab::kExitUsage;
  }

  try {
    const lrlab::Command cmd = lrlab::parse_command(command);
    const lrlab::RunConfig cfg = lrlab::parse_config(config_path);
    lrlab::CommandOverrides overrides;
    if (lambda) {
      if (!(*lambda > 0.0)) throw lrlab::ConfigError("--lambda: must be positive");
      overrides.lambda = lambda;
    }
    if (out) overrides.out = *out;
    const lrlab::CommandResult result = lrlab::run_command(cmd, cfg, overrides);
    for (const auto& line : result.summary) std::cout << line << '\n';
    for (const auto& path : result.artifacts) std::cout << "wrote " << path.string() << '\n';
    return result.exit_code;
  } catch (const lrlab::ConfigError& e) {
    std::cerr << "lrlab: " << e.what() << '\n';
    return lrlab::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "lrlab: " << e.what() << '\n';
    return lrlab::kExitFail;
  }
}
