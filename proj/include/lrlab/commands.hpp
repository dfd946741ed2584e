#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lrlab/config.hpp"

namespace lrlab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

enum class Command { check, constants, chains, bound, simulate, verify };

/// Throws ConfigError for an unknown command name.
Command parse_command(const std::string& name);
std::string to_string(Command command);

struct CommandOverrides {
  std::optional<double> lambda;
  std::optional<std::filesystem::path> out;
};

struct CommandResult {
  int exit_code = kExitPass;
  std::vector<std::filesystem::path> artifacts;
  /// One short human-readable line per finding.
  std::vector<std::string> summary;
};

/// Runs one command and writes its artifacts:
///   check     -> validation.json
///   constants -> constants.json
///   chains    -> chains.csv
///   bound     -> bound.csv
///   simulate  -> sweep.csv
///   verify    -> verify.json, margins.csv
/// exit_code is kExitFail when a checked invariant fails. Library errors
/// propagate as exceptions.
CommandResult run_command(Command command, const RunConfig& cfg,
                          const CommandOverrides& overrides = {});

}  // namespace lrlab
