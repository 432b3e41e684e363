#pragma once

// Coordinate-space and phase-space views of walker states: wavefunction,
// position distribution P(x), the cross-term-free distribution, and Wigner
// functions (closed-form dyad kernels plus a direct quadrature check).

#include "qrw/walker.hpp"

#include <string>
#include <vector>

namespace qrw {

/// How a coherent amplitude maps to a coordinate-space packet.
///   paper:    center x = alpha (alpha must be real), width exp[-(x - alpha)^2 / 2]
///   standard: x = sqrt(2) Re alpha, p = sqrt(2) Im alpha
enum class Convention { paper, standard };

std::string to_string(Convention c);
/// Throws ConfigError for unknown names.
Convention convention_from_string(const std::string& name);

struct QuadGrid {
  double min = -6.0;
  double max = 6.0;
  int points = 2048;

  double spacing() const { return (max - min) / (points - 1); }
  double at(int i) const { return min + i * spacing(); }
  std::vector<double> values() const;
  /// Throws ConfigError unless min < max and points >= 2.
  void validate() const;

  bool operator==(const QuadGrid& o) const {
    return min == o.min && max == o.max && points == o.points;
  }

  /// x in [-6 - N l, 6 + N l], 2048 points.
  static QuadGrid default_x(int steps, double step);
  /// p in [-6, 6], 512 points.
  static QuadGrid default_p();
};

struct PhaseGrid {
  QuadGrid x;
  QuadGrid p = QuadGrid::default_p();
};

/// Grid-sum tolerance for normalization self-checks.
inline constexpr double kGridNormTolerance = 1e-6;

struct Distribution {
  std::vector<double> x;
  std::vector<double> density;
  double peak = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

/// psi(x) = sum_m w_m psi_{alpha_m}(x), normalized so sum |psi|^2 dx = 1.
/// Throws ConventionError for complex centers under Convention::paper and
/// ResolutionError when the grid misses more than 1e-6 of the norm.
ComplexVector wavefunction(const WalkerState& state, const QuadGrid& grid, Convention conv);

/// Single packet psi_alpha(x), unit norm on the real line.
Complex packet(Complex alpha, double x, Convention conv);

Distribution position_distribution(const WalkerState& state, const QuadGrid& grid,
                                   Convention conv);
Distribution position_distribution(const CoherentDyadDensity& rho, const QuadGrid& grid,
                                   Convention conv);

/// sum_m |w_m|^2 |psi_m(x)|^2, normalized.
Distribution position_distribution_diagonal(const WalkerState& state, const QuadGrid& grid,
                                            Convention conv);

/// sum |P(x) - |psi_center(x)|^2| dx; the packet is the initial Gaussian
/// moved to `center` (coordinate units).
double l1_distance_to_packet(const Distribution& dist, double center);

/// Summary statistics of an already normalized density on `x`.
Distribution summarize(std::vector<double> x, std::vector<double> density);

struct WignerGrid {
  PhaseGrid grid;
  /// values(i, j) = W(x_i, p_j).
  Eigen::MatrixXd values;
  /// sum W dx dp.
  double integral = 0.0;
  /// Largest |Im W| seen during assembly.
  double max_imag = 0.0;

  double min() const { return values.minCoeff(); }
  /// Integral of W over p at each x.
  std::vector<double> x_marginal() const;
};

/// Closed-form Wigner function of a pure superposition. Throws
/// ResolutionError when the grid integral misses 1 by more than 1e-6.
WignerGrid wigner_pure(const WalkerState& state, const PhaseGrid& grid, Convention conv);

/// W(x, p) = (1/pi) int e^{2ipy} psi(x - y) psi*(x + y) dy by direct
/// summation on the x grid. psi must be sampled on grid.x and decay below
/// 1e-8 at both edges (DomainError otherwise).
WignerGrid wigner_numeric_oracle(const ComplexVector& psi, const PhaseGrid& grid);

/// Wigner function of a dyad density. Throws ContractError when the dyads
/// are not Hermitian.
WignerGrid wigner_density(const CoherentDyadDensity& rho, const PhaseGrid& grid,
                          Convention conv);

}  // namespace qrw
