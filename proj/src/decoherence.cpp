#include "qrw/decoherence.hpp"

#include "precise.hpp"
#include "qrw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrw {

using detail::XComplex;
using detail::XReal;

DampSpec DampSpec::from_kt(double kt) { return {1.0, kt}; }

void DampSpec::validate() const {
  if (!std::isfinite(kappa) || kappa < 0.0) throw ConfigError("kappa must be finite and >= 0");
  if (!std::isfinite(t) || t < 0.0) throw ConfigError("t must be finite and >= 0");
}

CoherentDyadDensity damp(const WalkerState& state, const DampSpec& spec) {
  spec.validate();
  const WalkerState psi = state.normalized() ? state : normalize(state);
  const XReal kt = spec.kt();
  const XReal s = -std::expm1(-kt);
  const double shrink = std::exp(-static_cast<double>(kt) / 2.0);

  std::vector<XComplex> weights;
  std::vector<Dyad> dyads;
  weights.reserve(psi.size() * psi.size());
  dyads.reserve(psi.size() * psi.size());
  XComplex trace = 0;
  for (const auto& m : psi.components()) {
    for (const auto& n : psi.components()) {
      const XComplex ket = detail::widen(m.center);
      const XComplex bra = detail::widen(n.center);
      const XComplex w = detail::widen(m.weight) * std::conj(detail::widen(n.weight)) *
                         std::exp(s * detail::overlap_exponent(bra, ket));
      const Dyad d{{}, n.center * shrink, m.center * shrink};
      trace += w * detail::overlap(detail::widen(d.bra), detail::widen(d.ket));
      weights.push_back(w);
      dyads.push_back(d);
    }
  }
  const XReal norm = trace.real();
  for (std::size_t i = 0; i < dyads.size(); ++i) dyads[i].weight = detail::narrow(weights[i] / norm);
  return CoherentDyadDensity(std::move(dyads));
}

CoherentDyadDensity damp_small_kt(const WalkerState& state, const DampSpec& spec) {
  spec.validate();
  const WalkerState psi = state.normalized() ? state : normalize(state);
  const double kt = spec.kt();
  std::vector<Dyad> dyads;
  dyads.reserve(psi.size() * psi.size());
  for (const auto& m : psi.components()) {
    for (const auto& n : psi.components()) {
      const double gap = std::norm(m.center - n.center);
      dyads.push_back({m.weight * std::conj(n.weight) * std::exp(-kt * gap / 2.0), n.center,
                       m.center});
    }
  }
  return CoherentDyadDensity(std::move(dyads));
}

std::optional<std::string> small_kt_warning(const DampSpec& spec) {
  if (spec.kt() <= 0.1) return std::nullopt;
  std::ostringstream msg;
  msg << "kt = " << spec.kt() << " exceeds 0.1; the short-time damping form is unreliable here";
  return msg.str();
}

double coherence_lifetime(int steps, double step, double kappa) {
  if (steps < 1) throw DomainError("coherence lifetime needs N >= 1");
  if (!(step > 0.0)) throw DomainError("coherence lifetime needs l > 0");
  if (!(kappa > 0.0)) throw DomainError("coherence lifetime needs kappa > 0");
  const double reach = steps * step;
  return 1.0 / (2.0 * kappa * reach * reach);
}

std::vector<double> fig4_schedule(int steps, double step) {
  if (steps < 1 || !(step > 0.0)) throw DomainError("schedule needs N >= 1 and l > 0");
  const double reach = steps * step;
  const double unit = 1.0 / (reach * reach);
  return {0.0, unit / 4.0, unit / 2.0, 2.0 * unit};
}

double purity(const CoherentDyadDensity& rho) {
  const int dim = truncation_for(rho.max_amplitude());
  const ComplexMatrix m = to_density_matrix(rho, dim);
  XReal sq = 0;
  XComplex tr = 0;
  for (int j = 0; j < dim; ++j) {
    tr += detail::widen(m(j, j));
    for (int k = 0; k < dim; ++k) sq += std::norm(detail::widen(m(j, k)));
  }
  return static_cast<double>(sq / std::norm(tr));
}

double relative_weight_deviation(const CoherentDyadDensity& a, const CoherentDyadDensity& b) {
  if (a.size() != b.size()) throw ContractError("dyad lists differ in length");
  double scale = 0.0;
  for (const auto& d : b.dyads()) scale = std::max(scale, std::abs(d.weight));
  if (!(scale > 0.0)) throw ContractError("reference density has no weight");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.dyads()[i].weight - b.dyads()[i].weight));
  }
  return worst / scale;
}

double lindblad_deviation(const WalkerState& state, double kt, const IntegratorOptions& options) {
  const WalkerState psi = state.normalized() ? state : normalize(state);
  const int dim = truncation_for(psi.max_amplitude());
  const ComplexVector v = to_fock(psi, dim);
  const ComplexMatrix rho0 = v * v.adjoint() / v.squaredNorm();
  const ComplexMatrix oracle = evolve_lindblad(rho0, 1.0, kt, {}, options);
  const ComplexMatrix closed = to_density_matrix(damp(psi, DampSpec::from_kt(kt)), dim);
  return (closed - oracle).cwiseAbs().maxCoeff();
}

}  // namespace qrw
