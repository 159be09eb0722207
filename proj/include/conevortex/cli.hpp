#pragma once

// Run configuration and dispatch for the conevortex command-line tool.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "conevortex/errors.hpp"
#include "conevortex/scattering.hpp"
#include "conevortex/vortex.hpp"

namespace conevortex::cli {

inline const std::vector<std::string> kCommands = {"profile",  "observables", "classical",   "amplitude",
                                                   "cross-section", "sweep",  "specfun-eval"};

struct PhiGrid {
  int points = 721;
  double min = 0.0;
  double max = 6.283185307179586;

  std::vector<double> values() const;
};

struct ClassicalSettings {
  std::vector<double> impact_parameters;
  double extent = 10.0;
  int samples = 801;
};

struct RunConfig {
  std::string command;
  /// Complete document after defaults and overrides; echoed into every output.
  nlohmann::json document;

  scattering::ScatterConfig scatter;
  vortex::VortexParams vortex;
  vortex::GridSpec vortex_grid;
  vortex::SolverSettings solver;
  double newton_G = 0.0;

  PhiGrid phi;
  std::string regime = "auto";  // auto | long | exact | short | semifluxon
  scattering::Component component = scattering::Component::Total;
  ClassicalSettings classical;
  std::vector<double> nu;
  std::vector<double> x;

  std::string sweep_parameter;
  std::vector<double> sweep_values;
  std::vector<RunConfig> sub_runs;
};

/// The full default document; every accepted key appears here.
nlohmann::json default_document();

/// Strict parse: unknown keys and mistyped values throw ConfigError with the
/// key path; physical preconditions are checked by the owning module and
/// reported as ConfigError as well. `overrides` are `dotted.key=value`
/// strings, the value read as JSON when it parses and as a string otherwise.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

struct ExecResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  nlohmann::json error;  // null on success
};

int exit_code(ErrorKind kind) noexcept;

/// Runs the command and writes its artifacts under `out_dir`. Module errors
/// are caught and reported through the result.
ExecResult execute(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace conevortex::cli
