#include "qrw/hamiltonian.hpp"

#include "qrw/errors.hpp"

#include <cmath>
#include <sstream>

namespace qrw {

namespace {

constexpr Complex kI{0.0, 1.0};

// E/|E|, taken as 1 for a switched-off drive.
Complex unit_phase(Complex drive) {
  const double mag = std::abs(drive);
  return mag == 0.0 ? Complex{1.0, 0.0} : drive / mag;
}

ComplexMatrix spin_drive(Complex drive) {
  return drive * ops::spin_plus() + std::conj(drive) * ops::spin_minus();
}

FockOperator jaynes_cummings(double g, const ComplexMatrix& spin_plus_like, int dim) {
  // -i g (X a - X^dag a^dag)
  const ComplexMatrix a = ops::field_annihilation(dim);
  const FockOperator xa = FockOperator::kron(spin_plus_like, a);
  return (xa - xa.adjoint()) * (-kI * g);
}

}  // namespace

double DriveSpec::phase_rotation() const { return drive == 0.0 ? 0.0 : std::arg(drive); }

void DriveSpec::validate() const {
  if (!std::isfinite(g) || !std::isfinite(drive.real()) || !std::isfinite(drive.imag())) {
    throw ConfigError("drive parameters must be finite");
  }
  if (g < 0.0) throw ConfigError("coupling g must be >= 0");
}

FockOperator h_drive(const DriveSpec& spec, int dim) {
  spec.validate();
  return FockOperator::kron(spin_drive(spec.drive), ops::field_identity(dim));
}

FockOperator h_full(const DriveSpec& spec, int dim) {
  spec.validate();
  return jaynes_cummings(spec.g, ops::spin_plus(), dim) + h_drive(spec, dim);
}

ComplexMatrix transformed_spin_plus(Complex drive, double t) {
  const double mag = std::abs(drive);
  const Complex u = unit_phase(drive);
  const double c = std::cos(mag * t);
  const double s = std::sin(mag * t);
  return ops::spin_plus() * (c * c) + (std::conj(u) * std::conj(u) * s * s) * ops::spin_minus() -
         (2.0 * kI * std::conj(u) * s * c) * ops::spin_z();
}

ComplexMatrix transformed_spin_minus(Complex drive, double t) {
  const double mag = std::abs(drive);
  const Complex u = unit_phase(drive);
  const double c = std::cos(mag * t);
  const double s = std::sin(mag * t);
  return ops::spin_minus() * (c * c) + (u * u * s * s) * ops::spin_plus() +
         (2.0 * kI * u * s * c) * ops::spin_z();
}

namespace {

ComplexMatrix conjugate_numeric(Complex drive, double t, const ComplexMatrix& op) {
  // e^{iht} = propagator of h at time -t.
  const ComplexMatrix forward = unitary_propagator(spin_drive(drive), -t);
  return forward * op * forward.adjoint();
}

}  // namespace

ComplexMatrix conjugated_spin_plus_numeric(Complex drive, double t) {
  return conjugate_numeric(drive, t, ops::spin_plus());
}

ComplexMatrix conjugated_spin_minus_numeric(Complex drive, double t) {
  return conjugate_numeric(drive, t, ops::spin_minus());
}

FockOperator h_transformed(const DriveSpec& spec, double t, int dim) {
  spec.validate();
  return jaynes_cummings(spec.g, transformed_spin_plus(spec.drive, t), dim);
}

FockOperator h_effective(const DriveSpec& spec, int dim) {
  spec.validate();
  const double eta = spec.phase_rotation();
  if (spec.phase_policy == PhasePolicy::require_real && std::abs(eta) > 1e-12) {
    std::ostringstream msg;
    msg << "effective Hamiltonian requires a real positive drive (E*^2/|E|^2 = 1 with "
           "arg E = 0); got arg E = "
        << eta << " rad. Rotate the drive phase to 0 or use PhasePolicy::rotate_atom";
    throw ContractError(msg.str());
  }
  // Rotated spin x = h / (2|E|) and rotated field a~ = e^{-i eta} a.
  const Complex u = std::polar(1.0, eta);
  const ComplexMatrix sx = 0.5 * (u * ops::spin_plus() + std::conj(u) * ops::spin_minus());
  const ComplexMatrix a = std::polar(1.0, -eta) * ops::field_annihilation(dim);
  const ComplexMatrix quadrature = (a - a.adjoint()) / kI;
  return FockOperator::kron(sx, quadrature) * Complex(spec.g) +
         FockOperator::kron(sx, ops::field_identity(dim)) * Complex(2.0 * spec.drive_abs());
}

double rwa_fidelity(const DriveSpec& spec, const FockVector& psi0, double t,
                    const IntegratorOptions& options) {
  if (spec.drive_abs() <= 0.0) throw DomainError("rwa_fidelity requires |E| > 0");
  const int dim = psi0.dim();
  const FockVector exact = evolve_schrodinger(h_full(spec, dim), psi0, t, options);
  const FockVector reduced = evolve_schrodinger(h_effective(spec, dim), psi0, t, options);
  return fidelity(exact, reduced) / (exact.norm() * exact.norm() * reduced.norm() *
                                     reduced.norm());
}

}  // namespace qrw
