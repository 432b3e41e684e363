#pragma once

// Subcommands of the qrw tool. Each one resolves the configuration, runs the
// library, and writes its files into the output directory.

#include "qrw/cli/config.hpp"
#include "qrw/cli/output.hpp"
#include "qrw/errors.hpp"

#include <exception>
#include <optional>
#include <string>
#include <vector>

namespace qrw::cli {

struct Options {
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  Format format = Format::csv;
  std::optional<Convention> convention;
  std::optional<std::uint64_t> seed;
};

struct CommandResult {
  std::vector<std::string> files;
  /// Nonzero when the command ran but one of its own checks failed.
  int exit_code = 0;
  std::string kind = "contract";
  std::string message;
};

/// Loads the config file (if any), applies flag overrides and validates.
RunConfig resolve(const Options& options);

CommandResult cmd_walk(const RunConfig& config, const Options& options);
CommandResult cmd_wigner(const RunConfig& config, const Options& options);
CommandResult cmd_homodyne(const RunConfig& config, const Options& options);
CommandResult cmd_decohere(const RunConfig& config, const Options& options);
CommandResult cmd_validate(const RunConfig& config, const Options& options);
CommandResult cmd_classical(const RunConfig& config, const Options& options);

/// Names: walk, wigner, homodyne, decohere, validate (alias validate-rwa), classical.
CommandResult run_command(const std::string& name, const Options& options);

/// 2 config, 3 numerical contract, 4 truncation / resolution.
int exit_code_for(ErrorKind kind);

/// Machine-readable error record for stderr.
nlohmann::json error_record(const std::string& kind, const std::string& message, int exit_code);
nlohmann::json error_record(const Error& error);

}  // namespace qrw::cli
