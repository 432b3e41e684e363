#include "qrw/walker.hpp"

#include "precise.hpp"
#include "qrw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace qrw {

using detail::XComplex;
using detail::XReal;

namespace {

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= kMergeTolerance; }

std::vector<WalkerComponent> merge_components(std::vector<WalkerComponent> raw) {
  std::vector<WalkerComponent> merged;
  merged.reserve(raw.size());
  for (const auto& c : raw) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const WalkerComponent& m) { return same_point(m.center, c.center); });
    if (it == merged.end()) {
      merged.push_back(c);
    } else {
      it->weight += c.weight;
    }
  }
  std::vector<WalkerComponent> kept;
  std::copy_if(merged.begin(), merged.end(), std::back_inserter(kept),
               [](const WalkerComponent& c) { return c.weight != 0.0; });
  if (kept.empty() && !merged.empty()) kept.push_back(merged.front());
  return kept;
}

std::vector<Dyad> merge_dyads(std::vector<Dyad> raw) {
  std::vector<Dyad> merged;
  merged.reserve(raw.size());
  for (const auto& d : raw) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Dyad& m) {
      return same_point(m.bra, d.bra) && same_point(m.ket, d.ket);
    });
    if (it == merged.end()) {
      merged.push_back(d);
    } else {
      it->weight += d.weight;
    }
  }
  return merged;
}

XComplex inner_product(const WalkerState& a, const WalkerState& b) {
  XComplex sum = 0;
  for (const auto& ca : a.components()) {
    const XComplex wa = std::conj(detail::widen(ca.weight));
    for (const auto& cb : b.components()) {
      sum += wa * detail::widen(cb.weight) *
             detail::overlap(detail::widen(ca.center), detail::widen(cb.center));
    }
  }
  return sum;
}

// Caches coherent_vector results by amplitude.
class CoherentCache {
 public:
  explicit CoherentCache(int dim) : dim_(dim) {}

  const ComplexVector& get(Complex alpha) {
    const auto key = std::make_pair(alpha.real(), alpha.imag());
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, coherent_vector(alpha, dim_)).first;
    return it->second;
  }

 private:
  int dim_;
  std::map<std::pair<double, double>, ComplexVector> cache_;
};

std::uint64_t binomial_exact(int n, int k) {
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(c);
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------

WalkerState::WalkerState(std::vector<WalkerComponent> components, bool normalized)
    : components_(merge_components(std::move(components))), normalized_(normalized) {
  if (components_.empty()) throw DomainError("walker state needs at least one component");
}

WalkerState WalkerState::coherent(Complex alpha) { return WalkerState({{1.0, alpha}}, true); }

std::vector<Complex> WalkerState::centers() const {
  std::vector<Complex> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.center);
  return out;
}

double WalkerState::max_amplitude() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, std::abs(c.center));
  return m;
}

double WalkerState::weight_l1() const {
  double s = 0.0;
  for (const auto& c : components_) s += std::abs(c.weight);
  return s;
}

// ---------------------------------------------------------------------------

CoherentDyadDensity::CoherentDyadDensity(std::vector<Dyad> dyads)
    : dyads_(merge_dyads(std::move(dyads))) {
  if (dyads_.empty()) throw DomainError("dyad density needs at least one dyad");
}

CoherentDyadDensity CoherentDyadDensity::from_pure(const WalkerState& state) {
  std::vector<Dyad> dyads;
  dyads.reserve(state.size() * state.size());
  for (const auto& m : state.components()) {
    for (const auto& n : state.components()) {
      dyads.push_back({m.weight * std::conj(n.weight), n.center, m.center});
    }
  }
  return CoherentDyadDensity(std::move(dyads));
}

Complex CoherentDyadDensity::trace() const {
  XComplex sum = 0;
  for (const auto& d : dyads_) {
    sum += detail::widen(d.weight) * detail::overlap(detail::widen(d.bra), detail::widen(d.ket));
  }
  return detail::narrow(sum);
}

double CoherentDyadDensity::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& d : dyads_) {
    auto it = std::find_if(dyads_.begin(), dyads_.end(), [&](const Dyad& p) {
      return same_point(p.bra, d.ket) && same_point(p.ket, d.bra);
    });
    if (it == dyads_.end()) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(it->weight - std::conj(d.weight)));
  }
  return worst;
}

double CoherentDyadDensity::max_amplitude() const {
  double m = 0.0;
  for (const auto& d : dyads_) m = std::max({m, std::abs(d.bra), std::abs(d.ket)});
  return m;
}

CoherentDyadDensity CoherentDyadDensity::scaled(Complex factor) const {
  std::vector<Dyad> out = dyads_;
  for (auto& d : out) d.weight *= factor;
  return CoherentDyadDensity(std::move(out));
}

// ---------------------------------------------------------------------------

WalkParams WalkParams::from_drive(Complex alpha0, double g, double t, double drive_abs,
                                  double theta, int steps) {
  WalkParams p;
  p.alpha0 = alpha0;
  p.step = 0.5 * g * t;
  p.theta = theta;
  p.phi = phi_of(drive_abs, g, alpha0, t);
  p.steps = steps;
  return p;
}

void WalkParams::validate() const {
  if (steps < 0) throw ConfigError("walk step count N must be >= 0");
  if (!std::isfinite(step) || !std::isfinite(theta) || !std::isfinite(phi) ||
      !std::isfinite(alpha0.real()) || !std::isfinite(alpha0.imag())) {
    throw ConfigError("walk parameters must be finite");
  }
  if (std::abs(std::cos(theta)) < 1e-12) {
    throw DomainError("tan(theta) is singular at theta = pi/2 mod pi; use single_step with (c1, c2)");
  }
}

Complex gram_overlap(Complex beta, Complex gamma) {
  return detail::narrow(detail::overlap(detail::widen(beta), detail::widen(gamma)));
}

ComplexMatrix gram_matrix(const std::vector<Complex>& centers) {
  const auto n = static_cast<Eigen::Index>(centers.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gram_overlap(centers[i], centers[j]);
  }
  return g;
}

double gram_norm_squared(const WalkerState& state) {
  return static_cast<double>(inner_product(state, state).real());
}

double gram_distance(const WalkerState& a, const WalkerState& b) {
  const XReal aa = inner_product(a, a).real();
  const XReal bb = inner_product(b, b).real();
  const XReal ab = std::norm(inner_product(a, b));
  return static_cast<double>(1.0L - ab / (aa * bb));
}

double phi_of(double drive_abs, double g, Complex alpha0, double t) {
  return (drive_abs + 0.5 * g * alpha0.imag()) * t;
}

std::pair<Complex, Complex> atom_amplitudes(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {(c + s) / std::sqrt(2.0), (c - s) / std::sqrt(2.0)};
}

WalkerState single_step(const WalkerState& field, Complex c1, Complex c2, double gt, double phi,
                        Outcome outcome) {
  const Complex c_plus = c1 + c2;
  const Complex c_minus = c1 - c2;
  const double sign = outcome == Outcome::g ? 1.0 : -1.0;
  const Complex forward = 0.5 * c_plus * std::polar(1.0, -phi);
  const Complex backward = 0.5 * sign * c_minus * std::polar(1.0, phi);

  std::vector<WalkerComponent> next;
  next.reserve(2 * field.size());
  for (const auto& c : field.components()) {
    next.push_back({c.weight * forward, c.center + 0.5 * gt});
    next.push_back({c.weight * backward, c.center - 0.5 * gt});
  }
  WalkerState out(std::move(next));
  const double n2 = gram_norm_squared(out);
  const double scale = out.weight_l1();
  if (!(n2 > 1e-24 * scale * scale)) {
    throw MeasurementImpossible(std::string("atom outcome ") +
                                (outcome == Outcome::g ? "g" : "e") + " has zero probability");
  }
  return out;
}

WalkerState walk(const WalkParams& params) {
  params.validate();
  const int n = params.steps;
  const double tan_theta = std::tan(params.theta);
  std::vector<WalkerComponent> comps;
  comps.reserve(n + 1);

  if (tan_theta == 0.0) {
    // Only the all-forward branch survives (0^0 = 1).
    comps.push_back({std::polar(1.0, -n * params.phi), params.alpha0 + n * params.step});
  } else {
    const double log_tan = std::log(std::abs(tan_theta));
    std::vector<double> logs(n + 1);
    for (int m = 0; m <= n; ++m) logs[m] = log_binomial(n, m) + (n - m) * log_tan;
    const double top = *std::max_element(logs.begin(), logs.end());
    for (int m = 0; m <= n; ++m) {
      const double sign = (tan_theta < 0.0 && (n - m) % 2 == 1) ? -1.0 : 1.0;
      const Complex w = std::polar(sign * std::exp(logs[m] - top), (n - 2 * m) * params.phi);
      comps.push_back({w, params.alpha0 - static_cast<double>(n - 2 * m) * params.step});
    }
  }
  return normalize(WalkerState(std::move(comps)));
}

WalkerState normalize(const WalkerState& state) {
  const double n2 = gram_norm_squared(state);
  const double scale = state.weight_l1();
  if (!(n2 > 1e-24 * scale * scale)) {
    throw MeasurementImpossible("cannot normalize a zero-norm walker state");
  }
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<WalkerComponent> comps = state.components();
  for (auto& c : comps) c.weight *= inv;
  return WalkerState(std::move(comps), true);
}

Fraction classical_weight(int steps, int site) {
  if (steps < 0 || steps > 62) throw DomainError("exact classical weights need 0 <= N <= 62");
  if (std::abs(site) > steps || (steps - site) % 2 != 0) return {0, std::uint64_t{1} << steps};
  return {binomial_exact(steps, (steps - site) / 2), std::uint64_t{1} << steps};
}

CoherentDyadDensity classical_mixture(int steps, Complex alpha0, double step) {
  if (steps < 0) throw ConfigError("walk step count N must be >= 0");
  std::vector<Dyad> dyads;
  dyads.reserve(steps + 1);
  for (int p = -steps; p <= steps; p += 2) {
    double w;
    if (steps <= 62) {
      const Fraction f = classical_weight(steps, p);
      w = static_cast<double>(f.num) / static_cast<double>(f.den);
    } else {
      w = std::exp(log_binomial(steps, (steps - p) / 2) - steps * std::log(2.0));
    }
    const Complex center = alpha0 + static_cast<double>(p) * step;
    dyads.push_back({w, center, center});
  }
  return CoherentDyadDensity(std::move(dyads));
}

ComplexVector to_fock(const WalkerState& state, int dim) {
  ComplexVector v = ComplexVector::Zero(dim);
  for (const auto& c : state.components()) v += c.weight * coherent_vector(c.center, dim);
  return v;
}

ComplexMatrix to_density_matrix(const CoherentDyadDensity& rho, int dim) {
  CoherentCache cache(dim);
  Eigen::Matrix<XComplex, Eigen::Dynamic, Eigen::Dynamic> acc =
      Eigen::Matrix<XComplex, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  for (const auto& d : rho.dyads()) {
    const ComplexVector& ket = cache.get(d.ket);
    const ComplexVector& bra = cache.get(d.bra);
    const XComplex w = detail::widen(d.weight);
    for (int j = 0; j < dim; ++j) {
      const XComplex wk = w * detail::widen(ket(j));
      if (wk == XComplex(0)) continue;
      for (int k = 0; k < dim; ++k) acc(j, k) += wk * std::conj(detail::widen(bra(k)));
    }
  }
  ComplexMatrix out(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) out(j, k) = detail::narrow(acc(j, k));
  }
  return out;
}

}  // namespace qrw
