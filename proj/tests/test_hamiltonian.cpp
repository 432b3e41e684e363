#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qrw/errors.hpp"
#include "qrw/hamiltonian.hpp"

#include <numbers>

using namespace qrw;

namespace {

constexpr Complex I{0.0, 1.0};

// -i g (S+ a - a^dag S-) with S+ = |e><g|, built element by element.
ComplexMatrix jc_by_hand(double g, int dim) {
  ComplexMatrix h = ComplexMatrix::Zero(2 * dim, 2 * dim);
  for (int n = 1; n < dim; ++n) {
    const double s = std::sqrt(static_cast<double>(n));
    h(dim + n - 1, n) += -I * g * s;  // |e, n-1><g, n|
    h(n, dim + n - 1) += I * g * s;   // |g, n><e, n-1|
  }
  return h;
}

}  // namespace

TEST_CASE("all Hamiltonians are Hermitian") {
  const int dim = 12;
  const DriveSpec spec{0.8, {1.3, 0.4}, PhasePolicy::rotate_atom};
  CHECK(h_full(spec, dim).hermiticity_defect() < 1e-14);
  CHECK(h_transformed(spec, 0.37, dim).hermiticity_defect() < 1e-14);
  CHECK(h_effective(spec, dim).hermiticity_defect() < 1e-14);
}

TEST_CASE("switched-off drive leaves the resonant coupling") {
  const int dim = 9;
  CHECK(oracle::max_abs(h_full(DriveSpec{1.4, 0.0}, dim).matrix() - jc_by_hand(1.4, dim)) < 1e-15);
}

TEST_CASE("decoupled cavity is block diagonal in photon number") {
  const int dim = 6;
  const ComplexMatrix h = h_full(DriveSpec{0.0, {0.7, 0.2}}, dim).matrix();
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n < dim; ++n)
      for (int r = 0; r < 2; ++r)
        for (int m = 0; m < dim; ++m)
          if (m != n) CHECK(std::abs(h(s * dim + n, r * dim + m)) == 0.0);
}

TEST_CASE("two-photon-level matrix expanded by hand") {
  // |g0>, |g1>, |e0>, |e1> for g = 1, E = 1.
  ComplexMatrix ref(4, 4);
  ref << 0, 0, 1, 0,
         0, 0, I, 1,
         1, -I, 0, 0,
         0, 1, 0, 0;
  CHECK(oracle::max_abs(h_full(DriveSpec{1.0, 1.0}, 2).matrix() - ref) < 1e-15);
}

TEST_CASE("drive-frame Hamiltonian at t = 0 drops the drive") {
  const int dim = 8;
  const DriveSpec spec{1.1, {0.9, -0.3}};
  CHECK(oracle::max_abs(h_transformed(spec, 0.0, dim).matrix() - jc_by_hand(1.1, dim)) < 1e-15);
}

TEST_CASE("quarter period turns S+ into the phased S-") {
  const Complex drive{0.6, 0.8};
  const double t = std::numbers::pi / 2 / std::abs(drive);
  const Complex u = drive / std::abs(drive);
  const ComplexMatrix expected = std::conj(u) * std::conj(u) * ops::spin_minus();
  CHECK(oracle::max_abs(transformed_spin_plus(drive, t) - expected) < 1e-15);
}

TEST_CASE("drive-frame Hamiltonian equals numeric conjugation") {
  const int dim = 10;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const DriveSpec spec{std::abs(u(rng)) + 0.1, {u(rng), u(rng)}};
    const double t = std::abs(u(rng));
    const ComplexMatrix rot = oracle::expm_hermitian(h_drive(spec, dim).matrix(), -t);
    const ComplexMatrix conj = rot * jc_by_hand(spec.g, dim) * rot.adjoint();
    CHECK(oracle::max_abs(h_transformed(spec, t, dim).matrix() - conj) < 1e-10);
  }
}

TEST_CASE("spin transforms match numeric conjugation for random drives") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> mag(0.05, 6.0), phase(-3.2, 3.2), time(0.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex drive = std::polar(mag(rng), phase(rng));
    const double t = time(rng);
    const ComplexMatrix hp = drive * ops::spin_plus() + std::conj(drive) * ops::spin_minus();
    const ComplexMatrix rot = oracle::expm_hermitian(hp, -t);
    CHECK(oracle::max_abs(transformed_spin_plus(drive, t) - rot * ops::spin_plus() * rot.adjoint()) < 1e-10);
    CHECK(oracle::max_abs(transformed_spin_minus(drive, t) - rot * ops::spin_minus() * rot.adjoint()) < 1e-10);
    CHECK(oracle::max_abs(transformed_spin_plus(drive, t) - conjugated_spin_plus_numeric(drive, t)) < 1e-10);
    CHECK(oracle::max_abs(transformed_spin_minus(drive, t) - conjugated_spin_minus_numeric(drive, t)) < 1e-10);
  }
}

TEST_CASE("effective Hamiltonian commutes with the drive term") {
  const int dim = 14;
  const DriveSpec spec{1.0, 2.5};
  const FockOperator heff = h_effective(spec, dim);
  CHECK(commutator_norm(heff, h_drive(spec, dim)) < 1e-12);
  const FockOperator sx = ops::s_x(dim);
  CHECK(commutator_norm(heff - sx * Complex(2.0 * spec.drive_abs()), sx) < 1e-12);

  const DriveSpec rotated{1.0, std::polar(2.5, 0.7), PhasePolicy::rotate_atom};
  CHECK(commutator_norm(h_effective(rotated, dim), h_drive(rotated, dim)) < 1e-12);
}

TEST_CASE("no coupling leaves only the spin term") {
  const int dim = 5;
  const DriveSpec spec{0.0, 1.7};
  const ComplexMatrix expected = FockOperator::kron(ops::spin_x(), ops::field_identity(dim)).matrix() * 3.4;
  CHECK(oracle::max_abs(h_effective(spec, dim).matrix() - expected) == 0.0);
}

TEST_CASE("complex drive needs an explicit phase policy") {
  const DriveSpec spec{1.0, {1.0, 1.0}};
  try {
    h_effective(spec, 6);
    FAIL("expected a contract error");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("arg E") != std::string::npos);
  }
  CHECK_NOTHROW(h_effective(DriveSpec{1.0, 2.0}, 6));
  CHECK(DriveSpec{1.0, {0.0, 2.0}, PhasePolicy::rotate_atom}.phase_rotation() ==
        doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS((DriveSpec{-1.0, 1.0}.validate()), ConfigError);
}

TEST_CASE("spin-x eigenstates displace the field in opposite directions") {
  const double g = 1.0, drive = 3.0, t = 0.9, alpha = 0.4;
  const int dim = truncation_for(alpha + g * t);
  const FockOperator heff = h_effective(DriveSpec{g, drive}, dim);
  const ComplexVector field = coherent_vector(alpha, dim);
  for (const double sign : {1.0, -1.0}) {
    const SpinState spin{1.0 / std::sqrt(2.0), sign / std::sqrt(2.0)};
    const FockVector out = evolve_schrodinger(heff, FockVector::product(spin, field), t);
    const FockVector expected = FockVector::product(spin, coherent_vector(alpha + sign * g * t / 2, dim));
    CHECK(fidelity(out, expected) > 1.0 - 1e-8);
  }
}

TEST_CASE("rotating-wave fidelity") {
  const int dim = truncation_for(0.0);
  const FockVector psi0 = FockVector::basis(dim, Spin::g, 0);
  CHECK(rwa_fidelity(DriveSpec{1.0, 5.0}, psi0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  double previous = 0.0;
  for (double ratio : {5.0, 20.0, 50.0}) {
    const double f = rwa_fidelity(DriveSpec{1.0, ratio}, psi0, 0.1);
    CHECK(f >= previous);
    previous = f;
  }
  CHECK(previous >= 0.99);
  CHECK_THROWS_AS(rwa_fidelity(DriveSpec{1.0, 0.0}, psi0, 0.1), DomainError);
}
