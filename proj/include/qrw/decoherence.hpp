#pragma once

// Photon loss acting on walker states, in closed form on coherent dyads:
//
//   |a><b|  ->  <b|a>^{1 - e^{-kt}} |a e^{-kt/2}><b e^{-kt/2}|
//
// plus the first-order short-time form, lifetime and purity diagnostics.

#include "qrw/walker.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrw {

struct DampSpec {
  double kappa = 0.0;
  double t = 0.0;

  double kt() const { return kappa * t; }
  /// kappa = 1, t = kt.
  static DampSpec from_kt(double kt);
  /// Throws ConfigError for negative or non-finite values.
  void validate() const;
};

/// Exact damped density of a pure walker state. The power of the overlap is
/// taken on its analytic exponent, (1 - e^{-kt}) (b* a - |a|^2/2 - |b|^2/2),
/// so no branch choice arises. Trace renormalized to 1.
CoherentDyadDensity damp(const WalkerState& state, const DampSpec& spec);

/// Short-time form: dyad (ket a, bra b) keeps its undamped amplitudes and
/// picks up e^{-kt |a - b|^2 / 2}. For walk components a - b = 2 (m - n) l,
/// which is e^{-2 kt l^2 (m - n)^2}. Not renormalized.
CoherentDyadDensity damp_small_kt(const WalkerState& state, const DampSpec& spec);

/// Non-empty when kt is outside the short-time regime (kt > 0.1).
std::optional<std::string> small_kt_warning(const DampSpec& spec);

/// T_N = 1 / (kappa 2 N^2 l^2). Throws DomainError unless N >= 1, l > 0, kappa > 0.
double coherence_lifetime(int steps, double step, double kappa);

/// {0, 1/(4 N^2 l^2), 1/(2 N^2 l^2), 2/(N^2 l^2)}.
std::vector<double> fig4_schedule(int steps, double step);

/// Tr rho^2 / (Tr rho)^2 from the truncated Fock matrix (cutoff from the
/// largest amplitude).
double purity(const CoherentDyadDensity& rho);

/// max |w_a - w_b| / max |w_b| over dyads paired by position, as produced
/// by damp and damp_small_kt from the same state. Throws ContractError when
/// the lists differ in length.
double relative_weight_deviation(const CoherentDyadDensity& a, const CoherentDyadDensity& b);

/// max |rho_closed - rho_lindblad| between the truncated Fock matrix of
/// damp(state, kt) and the field master equation integrated from the same
/// pure state with kappa = 1 for time kt.
double lindblad_deviation(const WalkerState& state, double kt,
                          const IntegratorOptions& options = {});

}  // namespace qrw
