#include "qrw/fock.hpp"

#include "qrw/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <utility>

namespace qrw {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_dim(int dim) {
  if (dim < 1) {
    throw DomainError("Fock dimension must be >= 1, got " + std::to_string(dim));
  }
}

// log of the Poisson weight |<n|alpha>|^2 with mean lambda = |alpha|^2.
double log_poisson(double lambda, int n) {
  if (lambda == 0.0) return n == 0 ? 0.0 : -INFINITY;
  return -lambda + n * std::log(lambda) - std::lgamma(n + 1.0);
}

// Generic fixed-step RK4 on y' = f(t, y); State supports +, scalar *.
template <typename State, typename Rhs>
State rk4(const Rhs& rhs, State y, double t_end, int steps) {
  const double h = t_end / steps;
  for (int k = 0; k < steps; ++k) {
    const double t0 = k * h;
    State k1 = rhs(t0, y);
    State k2 = rhs(t0 + 0.5 * h, State(y + (0.5 * h) * k1));
    State k3 = rhs(t0 + 0.5 * h, State(y + (0.5 * h) * k2));
    State k4 = rhs(t0 + h, State(y + h * k3));
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

template <typename State, typename Rhs>
State integrate_with_doubling(const Rhs& rhs, const State& y0, double t,
                              const IntegratorOptions& options, const char* what) {
  if (t == 0.0) return y0;
  int steps = std::max(1, options.initial_steps);
  State previous = rk4(rhs, y0, t, steps);
  double residual = INFINITY;
  while (true) {
    steps *= 2;
    if (steps > options.max_steps) {
      std::ostringstream msg;
      msg << what << ": no convergence within " << options.max_steps
          << " steps, residual " << residual;
      throw IntegrationError(msg.str(), residual);
    }
    State current = rk4(rhs, y0, t, steps);
    residual = (current - previous).cwiseAbs().maxCoeff();
    if (residual < options.tolerance) return current;
    previous = std::move(current);
  }
}

}  // namespace

int truncation_for(double alpha_max) {
  const double a = std::abs(alpha_max);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 16.0));
}

// ---------------------------------------------------------------------------
// FockVector

FockVector::FockVector(int dim, ComplexVector amplitudes)
    : dim_(dim), amplitudes_(std::move(amplitudes)) {
  require_dim(dim);
  if (amplitudes_.size() != kSpinDim * dim) {
    throw DomainError("FockVector amplitude length must be 2 * dim");
  }
}

FockVector FockVector::product(const SpinState& spin, const ComplexVector& field) {
  const int dim = static_cast<int>(field.size());
  ComplexVector v(kSpinDim * dim);
  v.head(dim) = spin.g * field;
  v.tail(dim) = spin.e * field;
  return FockVector(dim, std::move(v));
}

FockVector FockVector::basis(int dim, Spin spin, int n) {
  require_dim(dim);
  if (n < 0 || n >= dim) throw DomainError("Fock index out of range");
  ComplexVector v = ComplexVector::Zero(kSpinDim * dim);
  v(static_cast<int>(spin) * dim + n) = 1.0;
  return FockVector(dim, std::move(v));
}

Complex FockVector::at(Spin spin, int n) const {
  return amplitudes_(static_cast<int>(spin) * dim_ + n);
}

ComplexVector FockVector::field(Spin spin) const {
  return amplitudes_.segment(static_cast<int>(spin) * dim_, dim_);
}

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(int dim, ComplexMatrix matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
  require_dim(dim);
  if (matrix_.rows() != kSpinDim * dim || matrix_.cols() != kSpinDim * dim) {
    throw DomainError("FockOperator matrix must be (2 dim) x (2 dim)");
  }
}

FockOperator FockOperator::zero(int dim) {
  return FockOperator(dim, ComplexMatrix::Zero(kSpinDim * dim, kSpinDim * dim));
}

FockOperator FockOperator::identity(int dim) {
  return FockOperator(dim, ComplexMatrix::Identity(kSpinDim * dim, kSpinDim * dim));
}

FockOperator FockOperator::kron(const ComplexMatrix& spin, const ComplexMatrix& field) {
  const int dim = static_cast<int>(field.rows());
  ComplexMatrix m(kSpinDim * dim, kSpinDim * dim);
  for (int s1 = 0; s1 < kSpinDim; ++s1) {
    for (int s2 = 0; s2 < kSpinDim; ++s2) {
      m.block(s1 * dim, s2 * dim, dim, dim) = spin(s1, s2) * field;
    }
  }
  return FockOperator(dim, std::move(m));
}

FockOperator FockOperator::adjoint() const { return FockOperator(dim_, matrix_.adjoint()); }

double FockOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

FockVector FockOperator::apply(const FockVector& v) const {
  if (v.dim() != dim_) throw DomainError("dimension mismatch in FockOperator::apply");
  return FockVector(dim_, matrix_ * v.amplitudes());
}

FockOperator FockOperator::operator+(const FockOperator& rhs) const {
  return FockOperator(dim_, matrix_ + rhs.matrix_);
}

FockOperator FockOperator::operator-(const FockOperator& rhs) const {
  return FockOperator(dim_, matrix_ - rhs.matrix_);
}

FockOperator FockOperator::operator*(const FockOperator& rhs) const {
  return FockOperator(dim_, matrix_ * rhs.matrix_);
}

FockOperator FockOperator::operator*(Complex s) const { return FockOperator(dim_, matrix_ * s); }

double commutator_norm(const FockOperator& a, const FockOperator& b) {
  const ComplexMatrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return c.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Elementary operators

namespace ops {

ComplexMatrix field_annihilation(int dim) {
  require_dim(dim);
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix field_identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

// Basis (|g>, |e>).
ComplexMatrix spin_plus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(1, 0) = 1.0;
  return s;
}

ComplexMatrix spin_minus() { return spin_plus().adjoint(); }

ComplexMatrix spin_x() { return 0.5 * (spin_plus() + spin_minus()); }

ComplexMatrix spin_z() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = -0.5;
  s(1, 1) = 0.5;
  return s;
}

FockOperator a(int dim) {
  return FockOperator::kron(ComplexMatrix::Identity(2, 2), field_annihilation(dim));
}

FockOperator a_dag(int dim) { return a(dim).adjoint(); }

FockOperator s_plus(int dim) { return FockOperator::kron(spin_plus(), field_identity(dim)); }

FockOperator s_minus(int dim) { return s_plus(dim).adjoint(); }

FockOperator s_x(int dim) { return FockOperator::kron(spin_x(), field_identity(dim)); }

FockOperator s_z(int dim) { return FockOperator::kron(spin_z(), field_identity(dim)); }

}  // namespace ops

// ---------------------------------------------------------------------------
// Coherent states

double coherent_tail(Complex alpha, int dim) {
  require_dim(dim);
  const double lambda = std::norm(alpha);
  if (lambda == 0.0) return 0.0;
  double tail = 0.0;
  for (int n = dim;; ++n) {
    const double term = std::exp(log_poisson(lambda, n));
    tail += term;
    if (n > lambda && term < 1e-30 * std::max(tail, 1e-300)) break;
    if (n > dim + 100000) break;
  }
  return tail;
}

ComplexVector coherent_vector(Complex alpha, int dim) {
  require_dim(dim);
  const double tail = coherent_tail(alpha, dim);
  if (tail > kTruncationTolerance) {
    std::ostringstream msg;
    msg << "coherent state |alpha| = " << std::abs(alpha) << " needs more than " << dim
        << " Fock levels (tail mass " << tail << ", need dim >= "
        << truncation_for(std::abs(alpha)) << ")";
    throw TruncationError(msg.str(), tail);
  }
  ComplexVector v = ComplexVector::Zero(dim);
  const double lambda = std::norm(alpha);
  if (lambda == 0.0) {
    v(0) = 1.0;
    return v;
  }
  const double phase = std::arg(alpha);
  for (int n = 0; n < dim; ++n) {
    v(n) = std::polar(std::exp(0.5 * log_poisson(lambda, n)), n * phase);
  }
  return v / v.norm();
}

// ---------------------------------------------------------------------------
// Integrators

ComplexMatrix unitary_propagator(const ComplexMatrix& hamiltonian, double t) {
  const double defect = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * std::max(1.0, hamiltonian.cwiseAbs().maxCoeff())) {
    throw ContractError("unitary_propagator needs a Hermitian generator");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hamiltonian);
  const ComplexVector phases =
      (eig.eigenvalues().cast<Complex>() * (-kI * t)).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

FockVector evolve_schrodinger(const HamiltonianFn& hamiltonian, const FockVector& psi0,
                              double t, const IntegratorOptions& options) {
  const auto rhs = [&](double time, const ComplexVector& psi) -> ComplexVector {
    return -kI * (hamiltonian(time) * psi);
  };
  ComplexVector out =
      integrate_with_doubling(rhs, psi0.amplitudes(), t, options, "evolve_schrodinger");
  return FockVector(psi0.dim(), std::move(out));
}

FockVector evolve_schrodinger(const FockOperator& hamiltonian, const FockVector& psi0,
                              double t, const IntegratorOptions& options) {
  if (hamiltonian.dim() != psi0.dim()) {
    throw DomainError("dimension mismatch in evolve_schrodinger");
  }
  const ComplexMatrix& h = hamiltonian.matrix();
  const auto rhs = [&](double, const ComplexVector& psi) -> ComplexVector {
    return -kI * (h * psi);
  };
  ComplexVector out =
      integrate_with_doubling(rhs, psi0.amplitudes(), t, options, "evolve_schrodinger");
  return FockVector(psi0.dim(), std::move(out));
}

ComplexMatrix evolve_lindblad(const ComplexMatrix& rho0, double kappa, double t,
                              const ComplexMatrix& hamiltonian,
                              const IntegratorOptions& options) {
  if (kappa < 0.0) throw DomainError("damping rate kappa must be >= 0");
  if (rho0.rows() != rho0.cols()) throw DomainError("density matrix must be square");
  const int dim = static_cast<int>(rho0.rows());
  const bool has_h = hamiltonian.size() != 0;
  if (has_h && (hamiltonian.rows() != dim || hamiltonian.cols() != dim)) {
    throw DomainError("Hamiltonian and density matrix dimensions differ");
  }
  if (kappa == 0.0 && !has_h) return rho0;

  const ComplexMatrix a = ops::field_annihilation(dim);
  const ComplexMatrix a_dag = a.adjoint();
  const ComplexMatrix number = a_dag * a;
  const auto rhs = [&](double, const ComplexMatrix& rho) -> ComplexMatrix {
    ComplexMatrix d = -0.5 * kappa * (number * rho + rho * number - 2.0 * a * rho * a_dag);
    if (has_h) d += -kI * (hamiltonian * rho - rho * hamiltonian);
    return d;
  };
  ComplexMatrix rho = integrate_with_doubling(rhs, rho0, t, options, "evolve_lindblad");
  const double drift = std::abs(rho.trace() - rho0.trace());
  if (drift > 1e-8) {
    std::ostringstream msg;
    msg << "evolve_lindblad: trace drifted by " << drift;
    throw IntegrationError(msg.str(), drift);
  }
  return rho;
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DomainError("fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

double fidelity(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw DomainError("fidelity: dimension mismatch");
  return fidelity(a.amplitudes(), b.amplitudes());
}

}  // namespace qrw
