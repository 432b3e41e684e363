#include "qrw/serialize.hpp"

#include "qrw/errors.hpp"

namespace qrw {

namespace {

std::vector<Complex> complex_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("expected an array under '") + key + "'");
  }
  std::vector<Complex> out;
  for (const auto& item : j.at(key)) out.push_back(complex_from_json(item));
  return out;
}

}  // namespace

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("expected a number or an [re, im] pair, got " + j.dump());
}

nlohmann::json to_json(const WalkerState& state) {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& c : state.components()) {
    weights.push_back(complex_to_json(c.weight));
    centers.push_back(complex_to_json(c.center));
  }
  return {{"weights", weights}, {"centers", centers}, {"normalized", state.normalized()}};
}

WalkerState walker_from_json(const nlohmann::json& j) {
  const auto weights = complex_list(j, "weights");
  const auto centers = complex_list(j, "centers");
  if (weights.size() != centers.size()) throw ConfigError("weights and centers differ in length");
  std::vector<WalkerComponent> comps;
  for (std::size_t i = 0; i < weights.size(); ++i) comps.push_back({weights[i], centers[i]});
  const bool normalized = j.contains("normalized") && j.at("normalized").get<bool>();
  return WalkerState(std::move(comps), normalized);
}

nlohmann::json to_json(const CoherentDyadDensity& rho) {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json bras = nlohmann::json::array();
  nlohmann::json kets = nlohmann::json::array();
  for (const auto& d : rho.dyads()) {
    weights.push_back(complex_to_json(d.weight));
    bras.push_back(complex_to_json(d.bra));
    kets.push_back(complex_to_json(d.ket));
  }
  return {{"weights", weights}, {"bras", bras}, {"kets", kets}};
}

CoherentDyadDensity density_from_json(const nlohmann::json& j) {
  const auto weights = complex_list(j, "weights");
  const auto bras = complex_list(j, "bras");
  const auto kets = complex_list(j, "kets");
  if (weights.size() != bras.size() || weights.size() != kets.size()) {
    throw ConfigError("weights, bras and kets differ in length");
  }
  std::vector<Dyad> dyads;
  for (std::size_t i = 0; i < weights.size(); ++i) dyads.push_back({weights[i], bras[i], kets[i]});
  return CoherentDyadDensity(std::move(dyads));
}

}  // namespace qrw
