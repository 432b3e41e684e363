#pragma once

// JSON round-trip for walker states and dyad densities. Complex numbers are
// [re, im] pairs.

#include "qrw/walker.hpp"

#include <json.hpp>

namespace qrw {

nlohmann::json complex_to_json(Complex z);
/// Accepts a number or an [re, im] pair; throws ConfigError otherwise.
Complex complex_from_json(const nlohmann::json& j);

/// {"weights": [[re, im], ...], "centers": [[re, im], ...], "normalized": bool}
nlohmann::json to_json(const WalkerState& state);
WalkerState walker_from_json(const nlohmann::json& j);

/// {"weights": [...], "bras": [...], "kets": [...]}
nlohmann::json to_json(const CoherentDyadDensity& rho);
CoherentDyadDensity density_from_json(const nlohmann::json& j);

}  // namespace qrw
