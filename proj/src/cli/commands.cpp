#include "qrw/cli/commands.hpp"

#include "qrw/decoherence.hpp"
#include "qrw/hamiltonian.hpp"
#include "qrw/homodyne.hpp"
#include "qrw/render.hpp"
#include "qrw/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <random>

namespace qrw::cli {

namespace {

using nlohmann::json;

std::string output_path(const Options& options, const std::string& stem) {
  std::filesystem::path dir(options.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + options.out_dir + "'");
  return (dir / stem).string();
}

json base_meta(const std::string& command, const RunConfig& config) {
  return {{"command", command}, {"config", config.to_json()}};
}

Table distribution_table(const Distribution& d, json meta) {
  Table t{std::move(meta), {"x", "P"}, {}};
  t.rows.reserve(d.x.size());
  for (std::size_t i = 0; i < d.x.size(); ++i) t.rows.push_back({d.x[i], d.density[i]});
  return t;
}

Table wigner_table(const WignerGrid& w, json meta) {
  Table t{std::move(meta), {"x", "p", "W"}, {}};
  t.rows.reserve(static_cast<std::size_t>(w.values.size()));
  for (int i = 0; i < w.grid.x.points; ++i) {
    const double x = w.grid.x.at(i);
    for (int j = 0; j < w.grid.p.points; ++j) t.rows.push_back({x, w.grid.p.at(j), w.values(i, j)});
  }
  return t;
}

void add_stats(json& meta, const Distribution& d) {
  meta["peak_x"] = d.peak;
  meta["mean_x"] = d.mean;
  meta["variance_x"] = d.variance;
}

// Three components with complex centers; used for the channel check.
WalkerState channel_probe_state() {
  return normalize(WalkerState({{{0.6, 0.1}, {0.8, 0.3}},
                                {{-0.4, 0.5}, {-0.5, 0.2}},
                                {{0.3, -0.2}, {0.1, -0.9}}}));
}

std::string reduced(Fraction f) {
  const std::uint64_t d = std::gcd(f.num, f.den);
  return d == 0 ? "0/1" : std::to_string(f.num / d) + "/" + std::to_string(f.den / d);
}

}  // namespace

RunConfig resolve(const Options& options) {
  RunConfig config = options.config_path ? load_config(*options.config_path) : RunConfig{};
  if (options.convention) config.convention = *options.convention;
  if (options.seed) config.seed = *options.seed;
  config.validate();
  return config;
}

CommandResult cmd_walk(const RunConfig& config, const Options& options) {
  const WalkerState state = walk(config.walk);
  const Distribution d = position_distribution(state, config.resolved_x_grid(), config.convention);
  json meta = base_meta("walk", config);
  add_stats(meta, d);

  CommandResult result;
  result.files.push_back(output_path(options, "walk_px" + extension(options.format)));
  write_table(result.files.back(), distribution_table(d, meta), options.format);
  result.files.push_back(output_path(options, "walk_state.json"));
  write_json(result.files.back(), {{"meta", meta}, {"state", to_json(state)}});
  return result;
}

CommandResult cmd_wigner(const RunConfig& config, const Options& options) {
  const WalkerState state = walk(config.walk);
  const WignerGrid w = wigner_pure(state, config.phase_grid(), config.convention);
  json meta = base_meta("wigner", config);
  meta["min_w"] = w.min();
  meta["integral"] = w.integral;
  meta["max_imag"] = w.max_imag;

  CommandResult result;
  result.files.push_back(output_path(options, "wigner" + extension(options.format)));
  write_table(result.files.back(), wigner_table(w, meta), options.format);
  return result;
}

CommandResult cmd_homodyne(const RunConfig& config, const Options& options) {
  const WalkerState state = walk(config.walk);
  const double gt_p = config.gt_p_over_pi * std::numbers::pi;
  const auto scan = delta_scan(state, config.walk.alpha0, config.delta_grid, gt_p, config.n_max);
  json meta = base_meta("homodyne", config);
  // Coordinate position corresponding to delta under the chosen convention.
  meta["x_per_delta"] = config.convention == Convention::paper ? 1.0 : std::sqrt(2.0);

  Table t{{}, {"delta", "P_g", "n_max_used", "tail_mass", "status"}, {}};
  std::size_t failed = 0;
  for (const auto& p : scan) {
    t.rows.push_back({p.delta, p.ok ? Cell(p.p_g) : Cell(std::nan("")),
                      static_cast<std::int64_t>(p.n_max), p.tail_mass, p.ok ? "ok" : p.error});
    if (!p.ok) ++failed;
  }
  meta["failed_points"] = failed;
  CommandResult result;
  if (failed < scan.size()) {
    const double peak = scan_peak(scan);
    meta["peak_delta"] = peak;
    if (config.samples > 0) {
      const auto at = std::find_if(scan.begin(), scan.end(), [&](const ScanPoint& p) { return p.delta == peak; });
      const auto records = sample_detections(at->p_g, config.samples, config.seed);
      json dmeta = base_meta("homodyne", config);
      dmeta["delta"] = peak;
      dmeta["P_g"] = at->p_g;
      Table d{dmeta, {"index", "outcome"}, {}};
      for (const auto& r : records) d.rows.push_back({static_cast<std::int64_t>(r.index), r.ground ? "g" : "e"});
      result.files.push_back(output_path(options, "homodyne_detections" + extension(options.format)));
      write_table(result.files.back(), d, options.format);
    }
  } else {
    result.exit_code = exit_code_for(ErrorKind::domain);
    result.kind = "domain";
    result.message = "every delta point failed";
  }
  t.meta = meta;
  result.files.insert(result.files.begin(), output_path(options, "homodyne" + extension(options.format)));
  write_table(result.files.front(), t, options.format);
  return result;
}

CommandResult cmd_decohere(const RunConfig& config, const Options& options) {
  const WalkerState state = walk(config.walk);
  const PhaseGrid grid = config.phase_grid();
  const auto times = config.resolved_times();
  json meta = base_meta("decohere", config);

  CommandResult result;
  Table diag{{}, {"kt", "purity", "min_wigner", "peak_x", "mean_x", "variance_x"}, {}};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const DampSpec spec{config.kappa, times[i]};
    const CoherentDyadDensity rho = damp(state, spec);
    const WignerGrid w = wigner_density(rho, grid, config.convention);
    const Distribution d = position_distribution(rho, grid.x, config.convention);
    const double p = purity(rho);
    diag.rows.push_back({spec.kt(), p, w.min(), d.peak, d.mean, d.variance});

    json wmeta = meta;
    wmeta["kt"] = spec.kt();
    wmeta["purity"] = p;
    wmeta["min_w"] = w.min();
    wmeta["integral"] = w.integral;
    result.files.push_back(
        output_path(options, "decohere_wigner_" + std::to_string(i) + extension(options.format)));
    write_table(result.files.back(), wigner_table(w, wmeta), options.format);
  }
  diag.meta = meta;
  result.files.insert(result.files.begin(), output_path(options, "decohere" + extension(options.format)));
  write_table(result.files.front(), diag, options.format);
  return result;
}

CommandResult cmd_validate(const RunConfig& config, const Options& options) {
  if (!(config.g > 0.0)) throw ConfigError("validate.g must be > 0");
  Table t{base_meta("validate", config), {"check", "parameter", "value", "threshold", "pass"}, {}};
  std::vector<std::string> failures;
  auto record = [&](const std::string& check, Cell parameter, double value, Cell threshold,
                    std::optional<bool> pass) {
    t.rows.push_back({check, std::move(parameter), value, std::move(threshold),
                      pass ? std::string(*pass ? "yes" : "no") : std::string()});
    if (pass && !*pass) failures.push_back(check);
  };

  // Rotating-wave reduction against the full Hamiltonian from |g, 0>.
  const int dim = truncation_for(0.0);
  const FockVector psi0 = FockVector::basis(dim, Spin::g, 0);
  double previous = -1.0;
  bool monotone = true;
  for (double ratio : config.drive_ratios) {
    const DriveSpec spec{config.g, ratio * config.g};
    const double f = rwa_fidelity(spec, psi0, config.gt / config.g);
    record("rwa_fidelity", ratio, f, std::string(), std::nullopt);
    monotone = monotone && f >= previous;
    previous = f;
  }
  record("rwa_fidelity_non_decreasing", std::string(), monotone ? 1.0 : 0.0, std::string(), monotone);

  // Closed-form spin transforms against numeric conjugation.
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> mag(0.1, 5.0), phase(-std::numbers::pi, std::numbers::pi),
      time(0.0, 3.0);
  double residual = 0.0;
  for (int i = 0; i < config.transform_draws; ++i) {
    const Complex drive = std::polar(mag(rng), phase(rng));
    const double t = time(rng);
    residual = std::max(residual, (transformed_spin_plus(drive, t) -
                                   conjugated_spin_plus_numeric(drive, t)).cwiseAbs().maxCoeff());
    residual = std::max(residual, (transformed_spin_minus(drive, t) -
                                   conjugated_spin_minus_numeric(drive, t)).cwiseAbs().maxCoeff());
  }
  record("spin_transform_residual", static_cast<std::int64_t>(config.transform_draws), residual, 1e-10,
         residual < 1e-10);

  // Closed-form damping against the master equation.
  const WalkerState probe = channel_probe_state();
  for (double kt : config.lindblad_kt) {
    const double dev = lindblad_deviation(probe, kt);
    record("damping_vs_master_equation", kt, dev, 1e-6, dev < 1e-6);
  }

  CommandResult result;
  result.files.push_back(output_path(options, "validate" + extension(options.format)));
  write_table(result.files.back(), t, options.format);
  if (!failures.empty()) {
    result.exit_code = exit_code_for(ErrorKind::contract);
    result.message = "validation checks failed:";
    for (const auto& f : failures) result.message += " " + f;
  }
  return result;
}

CommandResult cmd_classical(const RunConfig& config, const Options& options) {
  const QuadGrid grid = config.resolved_x_grid();
  const WalkParams& w = config.walk;
  const CoherentDyadDensity mixture = classical_mixture(w.steps, w.alpha0, w.step);
  const Distribution classical = position_distribution(mixture, grid, config.convention);
  const Distribution quantum = position_distribution(walk(w), grid, config.convention);

  json meta = base_meta("classical", config);
  json weights = json::array();
  for (int p = -w.steps; p <= w.steps; p += 2) {
    if (w.steps <= 62) {
      const Fraction f = classical_weight(w.steps, p);
      weights.push_back({{"site", p}, {"weight", reduced(f)}});
    } else {
      weights.push_back({{"site", p}, {"weight", nullptr}});
    }
  }
  meta["weights"] = weights;
  double l1 = 0.0;
  for (std::size_t i = 0; i < classical.density.size(); ++i) l1 += std::abs(classical.density[i] - quantum.density[i]);
  meta["l1_quantum_vs_classical"] = l1 * grid.spacing();

  Table t{meta, {"x", "P_classical", "P_quantum"}, {}};
  for (std::size_t i = 0; i < classical.x.size(); ++i) {
    t.rows.push_back({classical.x[i], classical.density[i], quantum.density[i]});
  }
  CommandResult result;
  result.files.push_back(output_path(options, "classical" + extension(options.format)));
  write_table(result.files.back(), t, options.format);
  return result;
}

CommandResult run_command(const std::string& name, const Options& options) {
  const RunConfig config = resolve(options);
  if (name == "walk") return cmd_walk(config, options);
  if (name == "wigner") return cmd_wigner(config, options);
  if (name == "homodyne") return cmd_homodyne(config, options);
  if (name == "decohere") return cmd_decohere(config, options);
  if (name == "validate" || name == "validate-rwa") return cmd_validate(config, options);
  if (name == "classical") return cmd_classical(config, options);
  throw ConfigError("unknown command '" + name + "'");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
      return 2;
    case ErrorKind::truncation:
    case ErrorKind::resolution:
      return 4;
    default:
      return 3;
  }
}

json error_record(const std::string& kind, const std::string& message, int exit_code) {
  return {{"error", kind}, {"message", message}, {"exit_code", exit_code}};
}

json error_record(const Error& error) {
  json rec = error_record(std::string(to_string(error.kind())), error.what(), exit_code_for(error.kind()));
  if (const auto* t = dynamic_cast<const TruncationError*>(&error)) rec["tail_mass"] = t->tail_mass();
  if (const auto* i = dynamic_cast<const IntegrationError*>(&error)) rec["residual"] = i->residual();
  return rec;
}

}  // namespace qrw::cli
