// qrw: command-line front end for the cavity random-walk library.

#include "qrw/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int fail(const nlohmann::json& record) {
  std::cerr << record.dump() << '\n';
  return record.at("exit_code").get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional cavity random walks: distributions, Wigner functions, readout and damping"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "csv";
  std::string convention;
  std::uint64_t seed = 0;
  qrw::cli::Options options;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", options.out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "ndjson"}))->capture_default_str();
  app.add_option("--convention", convention, "Coordinate convention")->check(CLI::IsMember({"paper", "standard"}));
  auto* seed_opt = app.add_option("--seed", seed, "Seed for the detection sampler and random draws");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"walk", "Conditional walk: P(x) and the coherent-state expansion"},
      {"wigner", "Wigner function of the conditional walk state"},
      {"homodyne", "Probe-atom readout as a function of the reference offset delta"},
      {"decohere", "Damped Wigner grids and diagnostics along a kappa t schedule"},
      {"validate", "Rotating-wave, spin-transform and damping self-checks"},
      {"classical", "Unconditioned binomial mixture compared with the conditional walk"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&chosen, n = name] { chosen = n; });
    if (name == "validate") sub->alias("validate-rwa");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(qrw::cli::error_record("config", e.what(), 2));
  }

  try {
    if (!config_path.empty()) options.config_path = config_path;
    options.format = qrw::cli::format_from_string(format);
    if (!convention.empty()) options.convention = qrw::convention_from_string(convention);
    if (seed_opt->count() > 0) options.seed = seed;

    const auto result = qrw::cli::run_command(chosen, options);
    for (const auto& f : result.files) std::cout << f << '\n';
    if (result.exit_code != 0) {
      return fail(qrw::cli::error_record(result.kind, result.message, result.exit_code));
    }
    return 0;
  } catch (const qrw::Error& e) {
    return fail(qrw::cli::error_record(e));
  } catch (const nlohmann::json::exception& e) {
    return fail(qrw::cli::error_record("config", e.what(), 2));
  } catch (const std::exception& e) {
    return fail(qrw::cli::error_record("internal", e.what(), 1));
  }
}
