#pragma once

// Run configuration for the command-line front end. Every key is optional;
// unknown keys are rejected and the fully resolved document (defaults
// included) is echoed into each output file.

#include "qrw/render.hpp"
#include "qrw/walker.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qrw::cli {

struct RunConfig {
  WalkParams walk{0.0, 0.05, 2.0943951023931953, 6.283185307179586, 10};

  std::optional<QuadGrid> x_grid;
  QuadGrid p_grid = QuadGrid::default_p();
  Convention convention = Convention::paper;

  // probe
  double gt_p_over_pi = 1.5;
  std::optional<int> n_max;
  QuadGrid delta_grid{-4.0, 4.0, 161};
  std::uint64_t samples = 0;

  // damping; kt = kappa * t
  double kappa = 1.0;
  std::optional<std::vector<double>> times;

  // validate
  double g = 1.0;
  double gt = 0.1;
  std::vector<double> drive_ratios{5.0, 20.0, 50.0};
  int transform_draws = 20;
  std::vector<double> lindblad_kt{0.1, 0.5, 1.0};

  std::uint64_t seed = 0;

  QuadGrid resolved_x_grid() const;
  PhaseGrid phase_grid() const { return {resolved_x_grid(), p_grid}; }
  std::vector<double> resolved_times() const;

  /// Throws ConfigError on any invalid value.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Throws ConfigError on unknown keys or wrong types.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace qrw::cli
