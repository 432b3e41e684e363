#pragma once

// Truncated Fock (x) spin-1/2 linear algebra plus brute-force Schrodinger and
// Lindblad integrators. Everything else in the library is checked against
// these.
//
// Index layout is fixed library-wide: spin outer, Fock inner, so the
// amplitude of |s, n> lives at s * dim + n with s = 0 for |g> and s = 1 for
// |e>.

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace qrw {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Spin : int { g = 0, e = 1 };

inline constexpr int kSpinDim = 2;

/// Largest coherent-state tail probability tolerated by any truncation.
inline constexpr double kTruncationTolerance = 1e-10;

/// Fock cutoff from the rule dim >= |alpha|^2 + 8|alpha| + 16.
int truncation_for(double alpha_max);

struct SpinState {
  Complex g{1.0, 0.0};
  Complex e{0.0, 0.0};
};

class FockVector {
 public:
  FockVector(int dim, ComplexVector amplitudes);

  static FockVector product(const SpinState& spin, const ComplexVector& field);
  static FockVector basis(int dim, Spin spin, int n);

  int dim() const noexcept { return dim_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Complex at(Spin spin, int n) const;
  double norm() const { return amplitudes_.norm(); }

  /// Unnormalized field state conditioned on the given spin.
  ComplexVector field(Spin spin) const;

 private:
  int dim_;
  ComplexVector amplitudes_;
};

class FockOperator {
 public:
  FockOperator(int dim, ComplexMatrix matrix);

  static FockOperator zero(int dim);
  static FockOperator identity(int dim);
  /// spin (x) field; either factor may be the identity.
  static FockOperator kron(const ComplexMatrix& spin, const ComplexMatrix& field);

  int dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  FockOperator adjoint() const;
  /// max |M - M^dagger|.
  double hermiticity_defect() const;
  FockVector apply(const FockVector& v) const;

  FockOperator operator+(const FockOperator& rhs) const;
  FockOperator operator-(const FockOperator& rhs) const;
  FockOperator operator*(const FockOperator& rhs) const;
  FockOperator operator*(Complex s) const;

 private:
  int dim_;
  ComplexMatrix matrix_;
};

inline FockOperator operator*(Complex s, const FockOperator& op) { return op * s; }

/// max |A B - B A|.
double commutator_norm(const FockOperator& a, const FockOperator& b);

namespace ops {

ComplexMatrix field_annihilation(int dim);
ComplexMatrix field_identity(int dim);
ComplexMatrix spin_plus();
ComplexMatrix spin_minus();
ComplexMatrix spin_x();
ComplexMatrix spin_z();

FockOperator a(int dim);
FockOperator a_dag(int dim);
FockOperator s_plus(int dim);
FockOperator s_minus(int dim);
FockOperator s_x(int dim);
FockOperator s_z(int dim);

}  // namespace ops

/// Field-only amplitudes <n|alpha>, n < dim. Throws TruncationError when the
/// discarded tail exceeds kTruncationTolerance; otherwise renormalizes to the
/// truncated norm.
ComplexVector coherent_vector(Complex alpha, int dim);

/// Tail probability sum_{n >= dim} |<n|alpha>|^2.
double coherent_tail(Complex alpha, int dim);

/// exp(-i H t) for Hermitian H via its eigendecomposition.
ComplexMatrix unitary_propagator(const ComplexMatrix& hamiltonian, double t);

using HamiltonianFn = std::function<ComplexMatrix(double)>;

struct IntegratorOptions {
  int initial_steps = 32;
  /// Stop once doubling the step count moves the result by less than this.
  double tolerance = 1e-10;
  int max_steps = 1 << 20;
};

/// RK4 with step doubling. Throws IntegrationError carrying the last
/// doubling residual when max_steps is hit.
FockVector evolve_schrodinger(const HamiltonianFn& hamiltonian, const FockVector& psi0,
                              double t, const IntegratorOptions& options = {});
FockVector evolve_schrodinger(const FockOperator& hamiltonian, const FockVector& psi0,
                              double t, const IntegratorOptions& options = {});

/// Field-only master equation
///   drho/dt = -i[H, rho] - kappa/2 (a^dag a rho - 2 a rho a^dag + rho a^dag a).
/// hamiltonian may be empty (no coherent part). Throws IntegrationError on
/// non-convergence or when the trace drifts by more than 1e-8.
ComplexMatrix evolve_lindblad(const ComplexMatrix& rho0, double kappa, double t,
                              const ComplexMatrix& hamiltonian = {},
                              const IntegratorOptions& options = {});

double fidelity(const FockVector& a, const FockVector& b);
double fidelity(const ComplexVector& a, const ComplexVector& b);

}  // namespace qrw
