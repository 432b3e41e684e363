#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library except for plain types.

#include "qrw/walker.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline Matrix annihilation(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// <n|alpha> from the closed form, no renormalization.
inline Vector coherent(Complex alpha, int dim) {
  Vector v(dim);
  for (int n = 0; n < dim; ++n) {
    const double log_mag = -std::norm(alpha) / 2 - 0.5 * std::lgamma(n + 1.0);
    v(n) = n == 0 ? Complex(std::exp(log_mag)) : std::exp(log_mag) * std::pow(alpha, n);
  }
  return v;
}

/// exp(-i H t) for Hermitian H.
inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd ev = es.eigenvalues();
  Vector phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::polar(1.0, -ev(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// D(beta) = exp(beta a^dag - beta^* a) on a truncated space; only reliable
/// well below the cutoff.
inline Matrix displacement(Complex beta, int dim) {
  const Matrix a = annihilation(dim);
  const Matrix gen = beta * a.adjoint() - std::conj(beta) * a;
  const Matrix herm = Complex(0.0, 1.0) * gen;  // exp(gen) = exp(-i * herm)
  return expm_hermitian(herm, 1.0);
}

/// Field vector of sum_m w_m |alpha_m>.
inline Vector superposition(const qrw::WalkerState& s, int dim) {
  Vector v = Vector::Zero(dim);
  for (const auto& c : s.components()) v += c.weight * coherent(c.center, dim);
  return v;
}

/// One atom in c1|g> + c2|e> evolves with the field under
/// g Sx (a - a^dag)/i + 2|E| Sx for time t and is found in |g>.
/// Spin outer, Fock inner; Sx = (|g><e| + |e><g|)/2.
inline Vector effective_step(const Vector& field, Complex c1, Complex c2, double g, double drive,
                             double t) {
  const int dim = static_cast<int>(field.size());
  const Matrix a = annihilation(dim);
  const Matrix quad = (a - a.adjoint()) / Complex(0.0, 1.0);
  const Matrix field_part = g * quad + 2.0 * drive * Matrix::Identity(dim, dim);
  Matrix h = Matrix::Zero(2 * dim, 2 * dim);
  h.block(0, dim, dim, dim) = 0.5 * field_part;
  h.block(dim, 0, dim, dim) = 0.5 * field_part;
  Vector psi(2 * dim);
  psi.head(dim) = c1 * field;
  psi.tail(dim) = c2 * field;
  const Vector out = expm_hermitian(h, t) * psi;
  return out.head(dim);
}

/// Tr rho^2 from the quartic Gram sum over dyads.
inline double quartic_purity(const qrw::CoherentDyadDensity& rho) {
  auto ov = [](Complex bra, Complex ket) {
    return std::exp(std::conj(bra) * ket - std::norm(bra) / 2 - std::norm(ket) / 2);
  };
  Complex tr = 0, sq = 0;
  for (const auto& d : rho.dyads()) {
    tr += d.weight * ov(d.bra, d.ket);
    for (const auto& e : rho.dyads()) sq += d.weight * e.weight * ov(d.bra, e.ket) * ov(e.bra, d.ket);
  }
  return sq.real() / std::norm(tr);
}

/// Exact binomial coefficients by Pascal's rule.
inline std::vector<std::uint64_t> pascal_row(int n) {
  std::vector<std::uint64_t> row{1};
  for (int k = 1; k <= n; ++k) {
    std::vector<std::uint64_t> next(k + 1, 1);
    for (int j = 1; j < k; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row;
}

/// Random superposition with `count` components, real centers in [-r, r]
/// when `real_centers`, otherwise complex within the same box.
inline qrw::WalkerState random_state(std::mt19937_64& rng, int count, double r, bool real_centers) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<qrw::WalkerComponent> comps;
  for (int i = 0; i < count; ++i) {
    const Complex w(u(rng), u(rng));
    const Complex c(r * u(rng), real_centers ? 0.0 : r * u(rng));
    comps.push_back({w, c});
  }
  return qrw::normalize(qrw::WalkerState(comps));
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
