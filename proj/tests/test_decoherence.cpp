#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qrw/decoherence.hpp"
#include "qrw/errors.hpp"
#include "qrw/fock.hpp"

#include <numbers>

using namespace qrw;

namespace {

constexpr double kPi = std::numbers::pi;

WalkParams reference_walk() { return {0.0, 0.05, 2 * kPi / 3, 2 * kPi, 10}; }

double max_weight_gap(const CoherentDyadDensity& a, const CoherentDyadDensity& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.dyads()[i];
    const auto& y = b.dyads()[i];
    worst = std::max({worst, std::abs(x.weight - y.weight), std::abs(x.bra - y.bra),
                      std::abs(x.ket - y.ket)});
  }
  return worst;
}

}  // namespace

TEST_CASE("no loss leaves the pure density") {
  std::mt19937_64 rng(3);
  const WalkerState s = oracle::random_state(rng, 3, 1.5, false);
  const auto rho = damp(s, DampSpec::from_kt(0.0));
  const auto pure = CoherentDyadDensity::from_pure(s);
  const int dim = truncation_for(s.max_amplitude());
  CHECK(oracle::max_abs(to_density_matrix(rho, dim) - to_density_matrix(pure, dim)) < 1e-12);
}

TEST_CASE("long times reach the vacuum") {
  const WalkerState s = walk({0.0, 0.4, kPi / 3, 0.0, 4});
  const auto rho = damp(s, DampSpec::from_kt(60.0));
  const ComplexMatrix m = to_density_matrix(rho, 6);
  CHECK(std::abs(m(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(m.trace() - 1.0) < 1e-12);
}

TEST_CASE("closed form agrees with the master equation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const WalkerState s = oracle::random_state(rng, 3, 1.2, false);
    CHECK(lindblad_deviation(s, 0.3) < 1e-6);
  }
}

TEST_CASE("kappa and t enter only through their product") {
  const WalkerState s = walk({0.0, 0.3, kPi / 4, 0.0, 3});
  const auto a = damp(s, {2.0, 0.25});
  const auto b = damp(s, {0.5, 1.0});
  CHECK(max_weight_gap(a, b) < 1e-14);
}

TEST_CASE("damped density is a valid state") {
  std::mt19937_64 rng(5);
  for (double kt : {0.05, 0.5, 2.0}) {
    const WalkerState s = oracle::random_state(rng, 4, 1.5, false);
    const auto rho = damp(s, DampSpec::from_kt(kt));
    CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
    CHECK(rho.hermiticity_defect() < 1e-12);
    const ComplexMatrix m = to_density_matrix(rho, truncation_for(s.max_amplitude()));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("short-time form") {
  const WalkerState s = walk(reference_walk());
  const auto zero = damp_small_kt(s, DampSpec::from_kt(0.0));
  CHECK(max_weight_gap(zero, CoherentDyadDensity::from_pure(s)) == 0.0);

  const auto rho = damp_small_kt(s, DampSpec::from_kt(0.05));
  const auto pure = CoherentDyadDensity::from_pure(s);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const auto& d = rho.dyads()[i];
    if (d.bra == d.ket) CHECK(d.weight == pure.dyads()[i].weight);
    const double gap = std::norm(d.ket - d.bra);
    CHECK(std::abs(d.weight - pure.dyads()[i].weight * std::exp(-0.025 * gap)) <
          1e-15 * (1 + std::abs(d.weight)));
  }

  CHECK_FALSE(small_kt_warning(DampSpec::from_kt(0.1)).has_value());
  CHECK(small_kt_warning(DampSpec::from_kt(0.2)).has_value());

  const double dev = relative_weight_deviation(damp_small_kt(s, DampSpec::from_kt(0.01)),
                                               damp(s, DampSpec::from_kt(0.01)));
  CHECK(dev < 1e-3);
  CHECK_THROWS_AS(relative_weight_deviation(zero, damp(WalkerState::coherent(0.0), {})),
                  ContractError);
}

TEST_CASE("coherence lifetime") {
  CHECK(coherence_lifetime(10, 0.05, 1.0) == 2.0);
  CHECK(std::abs(coherence_lifetime(4, 0.25, 2.0) - 0.25) < 1e-15);
  CHECK_THROWS_AS(coherence_lifetime(0, 0.05, 1.0), DomainError);
  CHECK_THROWS_AS(coherence_lifetime(10, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(coherence_lifetime(10, 0.05, 0.0), DomainError);
}

TEST_CASE("snapshot schedule") {
  const auto t = fig4_schedule(10, 0.05);
  REQUIRE(t.size() == 4);
  const double want[] = {0.0, 1.0, 2.0, 8.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(t[i] - want[i]) < 1e-12);
  CHECK_THROWS_AS(fig4_schedule(0, 0.05), DomainError);
}

TEST_CASE("purity") {
  std::mt19937_64 rng(8);
  const WalkerState s = oracle::random_state(rng, 3, 1.0, false);
  CHECK(std::abs(purity(CoherentDyadDensity::from_pure(s)) - 1.0) < 1e-10);

  const auto mix = classical_mixture(1, 0.0, 5.0);
  CHECK(std::abs(purity(mix) - 0.5) < 1e-10);

  double previous = 1.0 + 1e-12;
  const WalkerState cat = normalize(WalkerState(std::vector<WalkerComponent>{{1.0, 1.5}, {1.0, -1.5}}));
  for (double kt : {0.0, 0.1, 0.2, 0.4}) {
    const auto rho = damp(cat, DampSpec::from_kt(kt));
    const double p = purity(rho);
    CHECK(std::abs(p - oracle::quartic_purity(rho)) < 1e-9);
    CHECK(p <= previous);
    previous = p;
  }
}

TEST_CASE("invalid damping parameters") {
  CHECK_THROWS_AS(damp(WalkerState::coherent(0.0), {-1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(damp(WalkerState::coherent(0.0), {1.0, std::nan("")}), ConfigError);
}
