#pragma once

// Hamiltonians of a resonantly driven two-level atom coupled to one cavity
// mode (hbar = 1):
//
//   full         H      = -i g (S+ a - a^dag S-) + (S+ E + S- E*)
//   drive frame  Hbar(t) = -i g (S+(t) a - S-(t) a^dag),  S+-(t) = e^{iht} S+- e^{-iht}
//   effective    H_eff  = g Sx (a - a^dag)/i + 2|E| Sx
//
// with h = S+ E + S- E*. H_eff is the rotating-wave reduction of Hbar for
// large |E|.

#include "qrw/fock.hpp"

namespace qrw {

enum class PhasePolicy {
  /// The effective Hamiltonian needs E*^2/|E|^2 = 1 with E > 0.
  require_real,
  /// Absorb arg(E) into the atomic and field phases (S+ -> e^{i eta} S+,
  /// a -> e^{-i eta} a) and record eta.
  rotate_atom,
};

struct DriveSpec {
  double g = 1.0;
  Complex drive{0.0, 0.0};
  PhasePolicy phase_policy = PhasePolicy::require_real;

  double drive_abs() const { return std::abs(drive); }
  /// Phase rotation eta = arg(E) absorbed by rotate_atom; 0 for E = 0.
  double phase_rotation() const;
  /// Throws ConfigError for g < 0 or non-finite values.
  void validate() const;
};

/// Drive term h = S+ E + S- E*.
FockOperator h_drive(const DriveSpec& spec, int dim);

FockOperator h_full(const DriveSpec& spec, int dim);

/// Drive-frame Hamiltonian at time t, from the closed-form spin transforms.
FockOperator h_transformed(const DriveSpec& spec, double t, int dim);

/// Throws ContractError under require_real unless E is real and positive
/// (or zero).
FockOperator h_effective(const DriveSpec& spec, int dim);

/// Closed-form e^{iht} S+ e^{-iht} on the spin space (2 x 2):
///   S+ cos^2 + (E*^2/|E|^2) sin^2 S- - (2i E*/|E|) Sz sin cos,  argument |E| t.
ComplexMatrix transformed_spin_plus(Complex drive, double t);
ComplexMatrix transformed_spin_minus(Complex drive, double t);

/// Same conjugations computed numerically from the propagator of h.
ComplexMatrix conjugated_spin_plus_numeric(Complex drive, double t);
ComplexMatrix conjugated_spin_minus_numeric(Complex drive, double t);

/// Fidelity between evolutions of psi0 for time t under h_full and
/// h_effective. Requires |E| > 0.
double rwa_fidelity(const DriveSpec& spec, const FockVector& psi0, double t,
                    const IntegratorOptions& options = {});

}  // namespace qrw
