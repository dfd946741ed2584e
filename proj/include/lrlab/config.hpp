#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lrlab/bounds.hpp"
#include "lrlab/models.hpp"

namespace lrlab {

struct TimeGrid {
  double start = 0.0;
  double stop = 3.0;
  int points = 61;

  /// Evenly spaced samples including both ends.
  std::vector<double> samples() const;
};

struct ObservablePlacement {
  std::string op;
  std::vector<int> sites;
};

struct Tolerances {
  double series_tol = 1e-10;
  double velocity_threshold = 1e-3;
  double margin_slack = 1e-9;
  std::optional<int> chain_n_max;
};

/// A validated run configuration with defaults applied.
struct RunConfig {
  ModelParams model;
  std::optional<double> lambda;
  TimeGrid time_grid;
  /// Unset placements are filled by resolve_observables.
  std::optional<ObservablePlacement> p;
  std::optional<ObservablePlacement> q;
  std::filesystem::path output_dir = ".";
  Tolerances tolerances;
  std::vector<BoundMethod> methods{BoundMethod::closed_form, BoundMethod::series_exact_cn};
  BoundMethod bound_method = BoundMethod::closed_form;
  double bound_scale = 1.0;
  std::optional<int> max_initial_occupation;
};

/// Validates a parsed JSON document against the published schema rules.
/// Error messages start with the dotted path of the offending key.
RunConfig config_from_json(const nlohmann::json& doc);

/// Reads and validates a config file. Throws ConfigError for a missing or
/// unreadable file, malformed JSON or a schema violation.
RunConfig parse_config(const std::filesystem::path& path);

struct ResolvedObservables {
  LocalOperator p;
  std::vector<LocalOperator> q;
};

/// Builds O_P and the O_Q placements. Defaults: O_P is Z on site 0 for spin
/// models and p on the first mode for dicke_chain; O_Q is Z (spin sites) or
/// x (mode sites) on every site of the same kind as O_P's site at distance
/// greater than R from it.
ResolvedObservables resolve_observables(const TwoFamilyHamiltonian& h, const RunConfig& cfg);

}  // namespace lrlab
