#pragma once

// Homodyne-style readout of the walker: a reference field beta is injected,
// the displaced Fock amplitudes F_n are formed, and a probe atom tuned to the
// vacuum reports P_g = sum_n |F_n|^2 cos^2(g t_p sqrt(n)).
// Amplitudes are operator quantities; no coordinate convention enters here.

#include "qrw/render.hpp"
#include "qrw/walker.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qrw {

/// Largest tolerated probability beyond the Fock cutoff.
inline constexpr double kHomodyneTailTolerance = 1e-8;

struct ProbeSpec {
  Complex beta{0.0, 0.0};
  /// Probe interaction strength g t_p in radians.
  double gt_p = 1.5 * 3.14159265358979323846;
  /// Unset: pick from the truncation rule.
  std::optional<int> n_max;

  /// Throws ConfigError unless gt_p > 0 and n_max (if set) >= 0.
  void validate() const;
};

struct DisplacedAmplitudes {
  /// F_0 .. F_{n_max}.
  ComplexVector amplitudes;
  int n_max = 0;
  /// sum of |F_n|^2 beyond n_max.
  double tail_mass = 0.0;
  double norm_squared = 0.0;
};

/// Cutoff (|beta| + r)^2 + 8 (|beta| + r) + 16 with r the largest |alpha_m|.
int default_n_max(const WalkerState& state, Complex beta);

/// F_n = sum_m w_m e^{(beta alpha_m^* - beta^* alpha_m)/2} <n|beta + alpha_m>
/// for the normalized state. Throws TruncationError when the tail beyond
/// n_max exceeds 1e-8.
DisplacedAmplitudes displaced_fock_amplitudes(const WalkerState& state, Complex beta,
                                              std::optional<int> n_max = std::nullopt);

/// sum_n |F_n|^2 cos^2(gt_p sqrt(n)), clamped to [0, 1].
double probe_ground_probability(const ComplexVector& amplitudes, double gt_p);

struct ScanPoint {
  double delta = 0.0;
  double p_g = 0.0;
  int n_max = 0;
  double tail_mass = 0.0;
  bool ok = true;
  std::string error;
};

/// P_g(delta) with beta = -alpha0 + delta at every grid point. Points that
/// fail are marked (ok = false) and the scan continues.
std::vector<ScanPoint> delta_scan(const WalkerState& state, Complex alpha0,
                                  const QuadGrid& delta_grid, double gt_p,
                                  std::optional<int> n_max = std::nullopt);

/// delta of the largest P_g among valid points. Throws DomainError when no
/// point is valid.
double scan_peak(const std::vector<ScanPoint>& scan);

/// Half width of the central peak, measured from the argmax to the first
/// crossing (linear interpolation) of the level halfway between the largest
/// and smallest P_g; the smaller of the two sides.
double scan_half_width(const std::vector<ScanPoint>& scan);

struct Detection {
  std::uint64_t index;
  bool ground;
};

/// Synthetic probe records drawn with probability p_g; deterministic in seed.
std::vector<Detection> sample_detections(double p_g, std::uint64_t count, std::uint64_t seed);

}  // namespace qrw
