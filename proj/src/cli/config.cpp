#include "qrw/cli/config.hpp"

#include "qrw/decoherence.hpp"
#include "qrw/errors.hpp"
#include "qrw/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace qrw::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<std::int64_t>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& item : v) {
    if (!item.is_number()) throw ConfigError(where + "." + key + " must be an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

QuadGrid parse_grid(const json& obj, QuadGrid base, const std::string& where) {
  reject_unknown(obj, where, {"min", "max", "points"});
  if (obj.contains("min")) base.min = number(obj, "min", where);
  if (obj.contains("max")) base.max = number(obj, "max", where);
  if (obj.contains("points")) base.points = static_cast<int>(integer(obj, "points", where));
  return base;
}

json grid_json(const QuadGrid& g) { return {{"min", g.min}, {"max", g.max}, {"points", g.points}}; }

void validate_grid(const QuadGrid& g, const std::string& where) {
  try {
    g.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

QuadGrid RunConfig::resolved_x_grid() const {
  return x_grid.value_or(QuadGrid::default_x(walk.steps, walk.step));
}

std::vector<double> RunConfig::resolved_times() const {
  if (times) return *times;
  if (walk.steps >= 1 && walk.step > 0.0) return fig4_schedule(walk.steps, walk.step);
  return {0.0};
}

void RunConfig::validate() const {
  walk.validate();
  validate_grid(resolved_x_grid(), "x_grid");
  validate_grid(p_grid, "p_grid");
  validate_grid(delta_grid, "probe.delta_grid");
  if (!(gt_p_over_pi > 0.0) || !std::isfinite(gt_p_over_pi)) {
    throw ConfigError("probe.gt_p_over_pi must be > 0");
  }
  if (n_max && *n_max < 0) throw ConfigError("probe.n_max must be >= 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ConfigError("damping.kappa must be >= 0");
  for (double t : resolved_times()) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("damping.times must be >= 0");
  }
  if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("validate.g must be >= 0");
  if (!(gt > 0.0) || !std::isfinite(gt)) throw ConfigError("validate.gt must be > 0");
  for (double r : drive_ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("validate.drive_ratios must be > 0");
  }
  if (transform_draws < 0) throw ConfigError("validate.transform_draws must be >= 0");
  for (double kt : lindblad_kt) {
    if (!(kt >= 0.0) || !std::isfinite(kt)) throw ConfigError("validate.lindblad_kt must be >= 0");
  }
}

json RunConfig::to_json() const {
  json out;
  out["walk"] = {{"alpha0", complex_to_json(walk.alpha0)}, {"l", walk.step},
                 {"theta", walk.theta},                    {"phi", walk.phi},
                 {"N", walk.steps}};
  out["x_grid"] = grid_json(resolved_x_grid());
  out["p_grid"] = grid_json(p_grid);
  out["convention"] = to_string(convention);
  out["probe"] = {{"gt_p_over_pi", gt_p_over_pi},
                  {"n_max", n_max ? json(*n_max) : json("auto")},
                  {"delta_grid", grid_json(delta_grid)},
                  {"samples", samples}};
  out["damping"] = {{"kappa", kappa}, {"times", resolved_times()}};
  out["validate"] = {{"g", g},
                     {"gt", gt},
                     {"drive_ratios", drive_ratios},
                     {"transform_draws", transform_draws},
                     {"lindblad_kt", lindblad_kt}};
  out["seed"] = seed;
  return out;
}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  reject_unknown(doc, "config",
                 {"walk", "x_grid", "p_grid", "convention", "probe", "damping", "validate", "seed"});

  if (doc.contains("walk")) {
    const auto& w = doc.at("walk");
    reject_unknown(w, "walk", {"alpha0", "l", "theta", "phi", "N"});
    if (w.contains("alpha0")) c.walk.alpha0 = complex_from_json(w.at("alpha0"));
    if (w.contains("l")) c.walk.step = number(w, "l", "walk");
    if (w.contains("theta")) c.walk.theta = number(w, "theta", "walk");
    if (w.contains("phi")) c.walk.phi = number(w, "phi", "walk");
    if (w.contains("N")) c.walk.steps = static_cast<int>(integer(w, "N", "walk"));
  }
  if (doc.contains("x_grid")) {
    c.x_grid = parse_grid(doc.at("x_grid"), QuadGrid::default_x(c.walk.steps, c.walk.step), "x_grid");
  }
  if (doc.contains("p_grid")) c.p_grid = parse_grid(doc.at("p_grid"), c.p_grid, "p_grid");
  if (doc.contains("convention")) {
    if (!doc.at("convention").is_string()) throw ConfigError("convention must be a string");
    c.convention = convention_from_string(doc.at("convention").get<std::string>());
  }
  if (doc.contains("probe")) {
    const auto& p = doc.at("probe");
    reject_unknown(p, "probe", {"gt_p_over_pi", "n_max", "delta_grid", "samples"});
    if (p.contains("gt_p_over_pi")) c.gt_p_over_pi = number(p, "gt_p_over_pi", "probe");
    if (p.contains("n_max") && !(p.at("n_max").is_string() && p.at("n_max") == "auto")) {
      c.n_max = static_cast<int>(integer(p, "n_max", "probe"));
    }
    if (p.contains("delta_grid")) {
      c.delta_grid = parse_grid(p.at("delta_grid"), c.delta_grid, "probe.delta_grid");
    }
    if (p.contains("samples")) {
      const auto n = integer(p, "samples", "probe");
      if (n < 0) throw ConfigError("probe.samples must be >= 0");
      c.samples = static_cast<std::uint64_t>(n);
    }
  }
  if (doc.contains("damping")) {
    const auto& d = doc.at("damping");
    reject_unknown(d, "damping", {"kappa", "times"});
    if (d.contains("kappa")) c.kappa = number(d, "kappa", "damping");
    if (d.contains("times")) c.times = numbers(d, "times", "damping");
  }
  if (doc.contains("validate")) {
    const auto& v = doc.at("validate");
    reject_unknown(v, "validate", {"g", "gt", "drive_ratios", "transform_draws", "lindblad_kt"});
    if (v.contains("g")) c.g = number(v, "g", "validate");
    if (v.contains("gt")) c.gt = number(v, "gt", "validate");
    if (v.contains("drive_ratios")) c.drive_ratios = numbers(v, "drive_ratios", "validate");
    if (v.contains("transform_draws")) {
      c.transform_draws = static_cast<int>(integer(v, "transform_draws", "validate"));
    }
    if (v.contains("lindblad_kt")) c.lindblad_kt = numbers(v, "lindblad_kt", "validate");
  }
  if (doc.contains("seed")) {
    const auto s = integer(doc, "seed", "config");
    if (s < 0) throw ConfigError("seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace qrw::cli
