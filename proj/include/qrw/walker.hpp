#pragma once

// Field states of the cavity random walker as weighted superpositions of
// coherent states, sum_m w_m |alpha_m>, and mixed states built from coherent
// dyads, sum_d w_d |ket_d><bra_d|.

#include "qrw/fock.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qrw {

/// Centers closer than this are treated as the same coherent state.
inline constexpr double kMergeTolerance = 1e-12;

struct WalkerComponent {
  Complex weight;
  Complex center;
};

class WalkerState {
 public:
  /// Components with coinciding centers are merged by weight addition.
  explicit WalkerState(std::vector<WalkerComponent> components, bool normalized = false);

  static WalkerState coherent(Complex alpha);

  const std::vector<WalkerComponent>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  bool normalized() const noexcept { return normalized_; }

  std::vector<Complex> centers() const;
  double max_amplitude() const;
  /// sum_m |w_m|; the ratio to the state norm measures how much the
  /// components cancel.
  double weight_l1() const;

 private:
  std::vector<WalkerComponent> components_;
  bool normalized_;
};

/// One term w |ket><bra|.
struct Dyad {
  Complex weight;
  Complex bra;
  Complex ket;
};

class CoherentDyadDensity {
 public:
  explicit CoherentDyadDensity(std::vector<Dyad> dyads);

  /// |psi><psi| expanded over component pairs (ket m, bra n), m-major.
  static CoherentDyadDensity from_pure(const WalkerState& state);

  const std::vector<Dyad>& dyads() const noexcept { return dyads_; }
  std::size_t size() const noexcept { return dyads_.size(); }

  /// Tr rho = sum_d w_d <bra_d|ket_d>.
  Complex trace() const;
  /// Largest mismatch between a dyad and its Hermitian partner (w*, ket, bra);
  /// infinite when a partner is missing.
  double hermiticity_defect() const;
  double max_amplitude() const;

  CoherentDyadDensity scaled(Complex factor) const;

 private:
  std::vector<Dyad> dyads_;
};

enum class Outcome { g, e };

struct WalkParams {
  Complex alpha0{0.0, 0.0};
  /// l = g t / 2; real.
  double step = 0.0;
  /// c-/c+ = tan(theta).
  double theta = 0.0;
  double phi = 0.0;
  int steps = 0;

  /// Builds l = g t / 2 and phi from the physical couplings.
  static WalkParams from_drive(Complex alpha0, double g, double t, double drive_abs,
                               double theta, int steps);

  /// Throws ConfigError / DomainError on invalid values.
  void validate() const;
};

/// Coherent overlap <beta|gamma> = exp(beta* gamma - |beta|^2/2 - |gamma|^2/2).
Complex gram_overlap(Complex beta, Complex gamma);

/// Gram_{mn} = <center_m|center_n>.
ComplexMatrix gram_matrix(const std::vector<Complex>& centers);

/// w^dagger Gram w (long double accumulation).
double gram_norm_squared(const WalkerState& state);

/// phi = (|E| + g Im(alpha) / 2) t.
double phi_of(double drive_abs, double g, Complex alpha0, double t);

/// Atom amplitudes (c1, c2) with (c1 - c2)/(c1 + c2) = tan(theta), normalized.
std::pair<Complex, Complex> atom_amplitudes(double theta);

/// Field state after one atom prepared in c1|g> + c2|e> crosses the cavity
/// for interaction strength gt and is detected in `outcome`. Each component
/// (w, c) spawns w c+ e^{-i phi}/2 at c + gt/2 and +-w c- e^{i phi}/2 at
/// c - gt/2 (minus for outcome e). Result is unnormalized; throws
/// MeasurementImpossible when it has zero norm.
WalkerState single_step(const WalkerState& field, Complex c1, Complex c2, double gt, double phi,
                        Outcome outcome);

/// Closed-form conditional state after `steps` atoms all detected in |g>:
/// C sum_m binom(N, m) e^{i (N - 2m) phi} tan(theta)^{N-m} |alpha0 - (N - 2m) l>.
WalkerState walk(const WalkParams& params);

WalkerState normalize(const WalkerState& state);

/// 1 - |<a|b>|^2 / (<a|a><b|b>), computed in the coherent representation.
double gram_distance(const WalkerState& a, const WalkerState& b);

/// Exact binomial weight binom(N, (N - p)/2) / 2^N of site p.
struct Fraction {
  std::uint64_t num;
  std::uint64_t den;
};
Fraction classical_weight(int steps, int site);

/// Unconditioned field after `steps` atoms prepared in |e>: diagonal dyads at
/// alpha0 + p l, p = -N, -N+2, ..., N.
CoherentDyadDensity classical_mixture(int steps, Complex alpha0, double step);

/// Fock amplitudes of sum_m w_m |alpha_m>, n < dim.
ComplexVector to_fock(const WalkerState& state, int dim);

/// Truncated Fock matrix of a dyad density (long double accumulation).
ComplexMatrix to_density_matrix(const CoherentDyadDensity& rho, int dim);

}  // namespace qrw
