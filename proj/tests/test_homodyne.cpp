#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qrw/errors.hpp"
#include "qrw/homodyne.hpp"
#include "qrw/render.hpp"

#include <numbers>

using namespace qrw;

namespace {

constexpr double kPi = std::numbers::pi;

WalkParams reference_walk() { return {0.0, 0.05, 2 * kPi / 3, 2 * kPi, 10}; }

const QuadGrid kDelta{-4.0, 4.0, 161};

}  // namespace

TEST_CASE("vacuum without reference field") {
  const auto f = displaced_fock_amplitudes(WalkerState::coherent(0.0), 0.0);
  CHECK(std::abs(f.amplitudes(0) - 1.0) < 1e-15);
  for (Eigen::Index n = 1; n < f.amplitudes.size(); ++n) CHECK(std::abs(f.amplitudes(n)) == 0.0);
}

TEST_CASE("reference field cancels a coherent state") {
  const Complex alpha{1.1, -0.6};
  const auto f = displaced_fock_amplitudes(WalkerState::coherent(alpha), -alpha);
  CHECK(std::abs(std::abs(f.amplitudes(0)) - 1.0) < 1e-14);
  CHECK(std::abs(f.norm_squared - 1.0) < 1e-12);
}

TEST_CASE("displaced amplitudes match the matrix displacement") {
  const WalkerState s = walk({0.0, 0.4, kPi / 4, 0.0, 1});
  const int dim = 80;
  const oracle::Vector psi = oracle::superposition(s, dim);
  for (const Complex beta : {Complex(0.0), Complex(0.8, -0.3), Complex(-1.5, 0.2)}) {
    const auto f = displaced_fock_amplitudes(s, beta);
    const oracle::Vector ref = oracle::displacement(beta, dim) * psi;
    for (Eigen::Index n = 0; n < f.amplitudes.size(); ++n) {
      CHECK(std::abs(std::norm(f.amplitudes(n)) - std::norm(ref(n))) < 1e-10);
    }
    CHECK(std::abs(f.norm_squared - 1.0) < 1e-8);
    CHECK(f.tail_mass < kHomodyneTailTolerance);
  }
}

TEST_CASE("reference walk state keeps unit norm after displacement") {
  const WalkerState s = walk(reference_walk());
  for (double delta : {-3.0, 0.0, 1.8, 4.0}) {
    const auto f = displaced_fock_amplitudes(s, delta);
    CHECK(std::abs(f.norm_squared - 1.0) < 1e-8);
  }
}

TEST_CASE("insufficient cutoff is reported with its tail") {
  try {
    displaced_fock_amplitudes(WalkerState::coherent(0.0), 3.0, 4);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.tail_mass() > kHomodyneTailTolerance);
  }
  const auto scan = delta_scan(WalkerState::coherent(0.0), 0.0, QuadGrid{-3.0, 3.0, 7}, kPi, 3);
  CHECK_FALSE(scan.front().ok);
  CHECK(scan.front().error.find("truncation") == 0);
  CHECK(scan[3].ok);
}

TEST_CASE("probe probability values") {
  ComplexVector vac = ComplexVector::Zero(5);
  vac(0) = 1.0;
  for (double gt : {0.3, 1.5 * kPi, 7.0}) CHECK(probe_ground_probability(vac, gt) == 1.0);
  ComplexVector one = ComplexVector::Zero(5);
  one(1) = 1.0;
  CHECK(probe_ground_probability(one, kPi / 2) < 1e-30);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexVector v(12);
    for (auto& x : v) x = {nd(rng), nd(rng)};
    v /= v.norm();
    const double p = probe_ground_probability(v, 4.0 * std::abs(nd(rng)));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("vacuum scan peaks at zero offset") {
  for (double gtp : {0.5, 1.5, 2.5}) {
    const auto scan = delta_scan(WalkerState::coherent(0.0), 0.0, kDelta, gtp * kPi);
    CHECK(std::abs(scan_peak(scan)) <= kDelta.spacing() + 1e-12);
    for (const auto& p : scan) {
      CHECK(p.ok);
      CHECK(p.p_g >= 0.0);
      CHECK(p.p_g <= 1.0);
    }
  }
}

TEST_CASE("reference walk state scan peaks opposite to the walker") {
  const WalkerState s = walk(reference_walk());
  const auto scan = delta_scan(s, 0.0, kDelta, 1.5 * kPi);
  const Distribution d = position_distribution(s, QuadGrid::default_x(10, 0.05), Convention::paper);
  CHECK(std::abs(scan_peak(scan) + d.peak) <= 2 * kDelta.spacing());
  CHECK(scan_peak(scan) > 1.0);
}

TEST_CASE("unconditioned mixture scan is symmetric") {
  const CoherentDyadDensity mix = classical_mixture(4, 0.0, 0.3);
  std::vector<double> total(kDelta.points, 0.0);
  for (const auto& d : mix.dyads()) {
    const auto scan = delta_scan(WalkerState::coherent(d.ket), 0.0, kDelta, 1.5 * kPi);
    for (int i = 0; i < kDelta.points; ++i) total[i] += d.weight.real() * scan[i].p_g;
  }
  for (int i = 0; i < kDelta.points; ++i) CHECK(std::abs(total[i] - total[kDelta.points - 1 - i]) < 1e-12);
}

TEST_CASE("scan peak sharpens as the probe interaction grows") {
  double previous = std::numeric_limits<double>::infinity();
  for (double gtp : {0.5, 1.5, 2.5}) {
    const double width = scan_half_width(delta_scan(WalkerState::coherent(0.0), 0.0, kDelta, gtp * kPi));
    INFO("gt_p = " << gtp << " pi, half width = " << width);
    CHECK(width < previous);
    previous = width;
  }
}

TEST_CASE("seeded detection records") {
  const auto a = sample_detections(0.3, 20000, 42);
  const auto b = sample_detections(0.3, 20000, 42);
  REQUIRE(a.size() == b.size());
  std::size_t ground = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ground == b[i].ground);
    ground += a[i].ground;
  }
  CHECK(std::abs(static_cast<double>(ground) / a.size() - 0.3) < 0.02);
  CHECK_THROWS_AS(sample_detections(1.5, 3, 1), DomainError);
}

TEST_CASE("probe parameters") {
  CHECK_THROWS_AS((ProbeSpec{0.0, 0.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ProbeSpec{0.0, 1.0, -1}.validate()), ConfigError);
  CHECK(default_n_max(WalkerState::coherent(1.0), 1.0) == 36);
}
