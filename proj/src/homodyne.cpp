#include "qrw/homodyne.hpp"

#include "precise.hpp"
#include "qrw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace qrw {

using detail::XComplex;
using detail::XReal;

void ProbeSpec::validate() const {
  if (!std::isfinite(gt_p) || !(gt_p > 0.0)) throw ConfigError("probe gt_p must be > 0");
  if (n_max && *n_max < 0) throw ConfigError("probe n_max must be >= 0");
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw ConfigError("probe beta must be finite");
  }
}

int default_n_max(const WalkerState& state, Complex beta) {
  const double r = std::abs(beta) + state.max_amplitude();
  return static_cast<int>(std::ceil(r * r + 8.0 * r + 16.0));
}

DisplacedAmplitudes displaced_fock_amplitudes(const WalkerState& state, Complex beta,
                                              std::optional<int> n_max) {
  const WalkerState psi = state.normalized() ? state : normalize(state);
  const int cutoff = n_max.value_or(default_n_max(psi, beta));
  if (cutoff < 0) throw ConfigError("n_max must be >= 0");
  const int reach = 2 * cutoff + 16;

  std::vector<XComplex> f(reach + 1, XComplex(0));
  const XComplex b = detail::widen(beta);
  for (const auto& c : psi.components()) {
    const XComplex alpha = detail::widen(c.center);
    const XComplex gamma = b + alpha;
    const XComplex phase = std::exp((b * std::conj(alpha) - std::conj(b) * alpha) / 2.0L);
    // <n|gamma> by recursion from the vacuum overlap.
    XComplex term = detail::widen(c.weight) * phase * std::exp(-std::norm(gamma) / 2);
    f[0] += term;
    for (int n = 1; n <= reach; ++n) {
      term *= gamma / std::sqrt(static_cast<XReal>(n));
      f[n] += term;
    }
  }

  DisplacedAmplitudes out;
  out.n_max = cutoff;
  out.amplitudes.resize(cutoff + 1);
  XReal inside = 0, tail = 0;
  for (int n = 0; n <= reach; ++n) {
    if (n <= cutoff) {
      out.amplitudes(n) = detail::narrow(f[n]);
      inside += std::norm(f[n]);
    } else {
      tail += std::norm(f[n]);
    }
  }
  out.norm_squared = static_cast<double>(inside);
  out.tail_mass = static_cast<double>(tail);
  if (out.tail_mass > kHomodyneTailTolerance) {
    std::ostringstream msg;
    msg << "Fock cutoff n_max = " << cutoff << " leaves tail mass " << out.tail_mass << " > "
        << kHomodyneTailTolerance;
    throw TruncationError(msg.str(), out.tail_mass);
  }
  return out;
}

double probe_ground_probability(const ComplexVector& amplitudes, double gt_p) {
  double p = 0.0;
  for (Eigen::Index n = 0; n < amplitudes.size(); ++n) {
    const double c = std::cos(gt_p * std::sqrt(static_cast<double>(n)));
    p += std::norm(amplitudes(n)) * c * c;
  }
  return std::clamp(p, 0.0, 1.0);
}

std::vector<ScanPoint> delta_scan(const WalkerState& state, Complex alpha0,
                                  const QuadGrid& delta_grid, double gt_p,
                                  std::optional<int> n_max) {
  delta_grid.validate();
  ProbeSpec{0.0, gt_p, n_max}.validate();
  const WalkerState psi = state.normalized() ? state : normalize(state);
  std::vector<ScanPoint> scan;
  scan.reserve(delta_grid.points);
  for (int i = 0; i < delta_grid.points; ++i) {
    ScanPoint point;
    point.delta = delta_grid.at(i);
    try {
      const auto f = displaced_fock_amplitudes(psi, -alpha0 + point.delta, n_max);
      point.p_g = probe_ground_probability(f.amplitudes, gt_p);
      point.n_max = f.n_max;
      point.tail_mass = f.tail_mass;
    } catch (const Error& e) {
      point.ok = false;
      point.error = std::string(to_string(e.kind())) + ": " + e.what();
      if (const auto* t = dynamic_cast<const TruncationError*>(&e)) point.tail_mass = t->tail_mass();
    }
    scan.push_back(std::move(point));
  }
  return scan;
}

double scan_peak(const std::vector<ScanPoint>& scan) {
  const ScanPoint* best = nullptr;
  for (const auto& p : scan) {
    if (p.ok && (best == nullptr || p.p_g > best->p_g)) best = &p;
  }
  if (best == nullptr) throw DomainError("delta scan has no valid points");
  return best->delta;
}

double scan_half_width(const std::vector<ScanPoint>& scan) {
  std::vector<const ScanPoint*> valid;
  for (const auto& p : scan) {
    if (p.ok) valid.push_back(&p);
  }
  if (valid.size() < 2) throw DomainError("delta scan has fewer than 2 valid points");
  const auto by_pg = [](const ScanPoint* a, const ScanPoint* b) { return a->p_g < b->p_g; };
  const auto top = std::max_element(valid.begin(), valid.end(), by_pg);
  const double level = 0.5 * ((*top)->p_g + (*std::min_element(valid.begin(), valid.end(), by_pg))->p_g);
  const auto peak = static_cast<std::ptrdiff_t>(top - valid.begin());
  const auto n = static_cast<std::ptrdiff_t>(valid.size());

  double width = std::numeric_limits<double>::infinity();
  for (const int dir : {-1, 1}) {
    for (std::ptrdiff_t i = peak; i + dir >= 0 && i + dir < n; i += dir) {
      const ScanPoint& a = *valid[i];
      const ScanPoint& b = *valid[i + dir];
      if (b.p_g <= level) {
        const double frac = (a.p_g - level) / (a.p_g - b.p_g);
        const double crossing = a.delta + frac * (b.delta - a.delta);
        width = std::min(width, std::abs(crossing - (*top)->delta));
        break;
      }
    }
  }
  return width;
}

std::vector<Detection> sample_detections(double p_g, std::uint64_t count, std::uint64_t seed) {
  if (!(p_g >= 0.0 && p_g <= 1.0)) throw DomainError("detection probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution draw(p_g);
  std::vector<Detection> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back({i, draw(rng)});
  return out;
}

}  // namespace qrw
