#include "qrw/render.hpp"

#include "precise.hpp"
#include "qrw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qrw {

using detail::XComplex;
using detail::XReal;

namespace {

using XMatrix = Eigen::Matrix<XReal, Eigen::Dynamic, Eigen::Dynamic>;

constexpr XReal kPi = std::numbers::pi_v<long double>;

// Packet parameters: center q, momentum p0 and the global phase theta.
struct Coord {
  XReal q;
  XReal p0;
  XReal theta;
};

Coord coord_of(Complex alpha, Convention conv) {
  if (conv == Convention::paper) {
    if (std::abs(alpha.imag()) > 1e-12 * std::max(1.0, std::abs(alpha))) {
      std::ostringstream msg;
      msg << "paper convention needs real coherent amplitudes; got " << alpha.real()
          << (alpha.imag() < 0 ? " - " : " + ") << std::abs(alpha.imag())
          << "i (use the standard convention)";
      throw ConventionError(msg.str());
    }
    return {alpha.real(), 0.0L, 0.0L};
  }
  const XReal q = std::sqrt(2.0L) * alpha.real();
  const XReal p0 = std::sqrt(2.0L) * alpha.imag();
  return {q, p0, -q * p0 / 2};
}

XComplex packet_value(const Coord& c, XReal x) {
  const XReal d = x - c.q;
  return std::pow(kPi, -0.25L) * std::exp(XComplex(-d * d / 2, c.p0 * x + c.theta));
}

// int psi_bra^* psi_ket dx.
XComplex coordinate_overlap(const Coord& bra, const Coord& ket) {
  const XReal dq = ket.q - bra.q;
  const XReal dp = ket.p0 - bra.p0;
  const XReal qbar = (ket.q + bra.q) / 2;
  return std::exp(XComplex(-(dq * dq + dp * dp) / 4, dp * qbar + ket.theta - bra.theta));
}

struct CoordDyad {
  XComplex weight;
  Coord bra;
  Coord ket;
};

std::vector<CoordDyad> coord_dyads(const CoherentDyadDensity& rho, Convention conv) {
  std::vector<CoordDyad> out;
  out.reserve(rho.size());
  for (const auto& d : rho.dyads()) {
    out.push_back({detail::widen(d.weight), coord_of(d.bra, conv), coord_of(d.ket, conv)});
  }
  return out;
}

XReal coordinate_trace(const std::vector<CoordDyad>& dyads) {
  XComplex t = 0;
  for (const auto& d : dyads) t += d.weight * coordinate_overlap(d.bra, d.ket);
  return t.real();
}

double grid_sum(const std::vector<double>& density, double dx) {
  XReal s = 0;
  for (double v : density) s += v;
  return static_cast<double>(s * dx);
}

void check_grid_norm(double sum, const char* what) {
  if (!(std::abs(sum - 1.0) < kGridNormTolerance)) {
    std::ostringstream msg;
    msg << what << " integrates to " << sum << " on the grid (|error| >= "
        << kGridNormTolerance << "); widen the grid or add points";
    throw ResolutionError(msg.str());
  }
}

Distribution finish(const QuadGrid& grid, std::vector<double> density, const char* what) {
  const double sum = grid_sum(density, grid.spacing());
  check_grid_norm(sum, what);
  for (double& v : density) v /= sum;
  return summarize(grid.values(), std::move(density));
}

WignerGrid assemble_wigner(const std::vector<CoordDyad>& dyads, const PhaseGrid& grid) {
  grid.x.validate();
  grid.p.validate();
  const XReal trace = coordinate_trace(dyads);
  if (!(trace > 0)) throw ContractError("density has non-positive trace");

  const int nx = grid.x.points;
  const int np = grid.p.points;
  const auto k = static_cast<Eigen::Index>(dyads.size());
  XMatrix xr(nx, k), xi(nx, k), pr(k, np), pi(k, np);
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto& d = dyads[c];
    const XReal qbar = (d.ket.q + d.bra.q) / 2;
    const XReal pbar = (d.ket.p0 + d.bra.p0) / 2;
    const XReal dq = d.ket.q - d.bra.q;
    const XReal dp = d.ket.p0 - d.bra.p0;
    const XComplex w = d.weight / (kPi * trace);
    for (int i = 0; i < nx; ++i) {
      const XReal x = grid.x.at(i);
      const XComplex v =
          w * std::exp(XComplex(-(x - qbar) * (x - qbar),
                                dp * x + d.ket.theta - d.bra.theta + dq * pbar));
      xr(i, c) = v.real();
      xi(i, c) = v.imag();
    }
    for (int j = 0; j < np; ++j) {
      const XReal p = grid.p.at(j);
      const XComplex v = std::exp(XComplex(-(p - pbar) * (p - pbar), -dq * p));
      pr(c, j) = v.real();
      pi(c, j) = v.imag();
    }
  }
  const XMatrix re = xr * pr - xi * pi;
  const XMatrix im = xr * pi + xi * pr;

  WignerGrid out;
  out.grid = grid;
  out.values = re.cast<double>();
  out.max_imag = static_cast<double>(im.cwiseAbs().maxCoeff());
  out.integral = static_cast<double>(re.sum()) * grid.x.spacing() * grid.p.spacing();
  if (!(std::abs(out.integral - 1.0) < kGridNormTolerance)) {
    std::ostringstream msg;
    msg << "Wigner function integrates to " << out.integral << " on the phase grid (|error| >= "
        << kGridNormTolerance << "); widen the grid or add points";
    throw ResolutionError(msg.str());
  }
  return out;
}

}  // namespace

std::string to_string(Convention c) { return c == Convention::paper ? "paper" : "standard"; }

Convention convention_from_string(const std::string& name) {
  if (name == "paper") return Convention::paper;
  if (name == "standard") return Convention::standard;
  throw ConfigError("unknown convention '" + name + "' (expected paper or standard)");
}

std::vector<double> QuadGrid::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = at(i);
  return v;
}

void QuadGrid::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw ConfigError("grid needs finite min < max");
  }
  if (points < 2) throw ConfigError("grid needs at least 2 points");
}

QuadGrid QuadGrid::default_x(int steps, double step) {
  const double reach = 6.0 + steps * std::abs(step);
  return {-reach, reach, 2048};
}

QuadGrid QuadGrid::default_p() { return {-6.0, 6.0, 512}; }

Complex packet(Complex alpha, double x, Convention conv) {
  return detail::narrow(packet_value(coord_of(alpha, conv), x));
}

ComplexVector wavefunction(const WalkerState& state, const QuadGrid& grid, Convention conv) {
  grid.validate();
  std::vector<Coord> coords;
  std::vector<XComplex> weights;
  for (const auto& c : state.components()) {
    coords.push_back(coord_of(c.center, conv));
    weights.push_back(detail::widen(c.weight));
  }
  XComplex norm2 = 0;
  for (std::size_t m = 0; m < coords.size(); ++m) {
    for (std::size_t n = 0; n < coords.size(); ++n) {
      norm2 += std::conj(weights[n]) * weights[m] * coordinate_overlap(coords[n], coords[m]);
    }
  }
  if (!(norm2.real() > 0)) throw MeasurementImpossible("wavefunction has zero norm");
  const XReal scale = 1 / std::sqrt(norm2.real());

  ComplexVector psi(grid.points);
  std::vector<double> density(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    XComplex v = 0;
    for (std::size_t m = 0; m < coords.size(); ++m) v += weights[m] * packet_value(coords[m], grid.at(i));
    psi(i) = detail::narrow(v * scale);
    density[i] = std::norm(psi(i));
  }
  const double sum = grid_sum(density, grid.spacing());
  check_grid_norm(sum, "|psi|^2");
  psi /= std::sqrt(sum);
  return psi;
}

Distribution position_distribution(const WalkerState& state, const QuadGrid& grid,
                                   Convention conv) {
  const ComplexVector psi = wavefunction(state, grid, conv);
  std::vector<double> density(grid.points);
  for (int i = 0; i < grid.points; ++i) density[i] = std::norm(psi(i));
  return summarize(grid.values(), std::move(density));
}

Distribution position_distribution(const CoherentDyadDensity& rho, const QuadGrid& grid,
                                   Convention conv) {
  grid.validate();
  const auto dyads = coord_dyads(rho, conv);
  const XReal trace = coordinate_trace(dyads);
  if (!(trace > 0)) throw ContractError("density has non-positive trace");
  std::vector<double> density(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const XReal x = grid.at(i);
    XComplex v = 0;
    for (const auto& d : dyads) {
      v += d.weight * packet_value(d.ket, x) * std::conj(packet_value(d.bra, x));
    }
    density[i] = static_cast<double>(v.real() / trace);
  }
  return finish(grid, std::move(density), "P(x)");
}

Distribution position_distribution_diagonal(const WalkerState& state, const QuadGrid& grid,
                                            Convention conv) {
  grid.validate();
  XReal total = 0;
  for (const auto& c : state.components()) total += std::norm(detail::widen(c.weight));
  std::vector<double> density(grid.points, 0.0);
  for (const auto& c : state.components()) {
    const Coord coord = coord_of(c.center, conv);
    const XReal w = std::norm(detail::widen(c.weight)) / total;
    for (int i = 0; i < grid.points; ++i) {
      density[i] += static_cast<double>(w * std::norm(packet_value(coord, grid.at(i))));
    }
  }
  return finish(grid, std::move(density), "diagonal P(x)");
}

double l1_distance_to_packet(const Distribution& dist, double center) {
  if (dist.x.size() < 2) throw ContractError("distribution needs at least 2 samples");
  const double dx = dist.x[1] - dist.x[0];
  double s = 0.0;
  for (std::size_t i = 0; i < dist.x.size(); ++i) {
    const double d = dist.x[i] - center;
    s += std::abs(dist.density[i] - std::exp(-d * d) / std::sqrt(std::numbers::pi));
  }
  return s * dx;
}

Distribution summarize(std::vector<double> x, std::vector<double> density) {
  if (x.size() != density.size() || x.size() < 2) {
    throw ContractError("distribution needs matching x and density arrays of length >= 2");
  }
  const double dx = x[1] - x[0];
  Distribution d;
  const auto top = std::max_element(density.begin(), density.end());
  d.peak = x[static_cast<std::size_t>(top - density.begin())];
  XReal m1 = 0, m2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m1 += static_cast<XReal>(x[i]) * density[i];
    m2 += static_cast<XReal>(x[i]) * x[i] * density[i];
  }
  d.mean = static_cast<double>(m1 * dx);
  d.variance = static_cast<double>(m2 * dx - m1 * dx * m1 * dx);
  d.x = std::move(x);
  d.density = std::move(density);
  return d;
}

std::vector<double> WignerGrid::x_marginal() const {
  std::vector<double> out(values.rows());
  const double dp = grid.p.spacing();
  for (Eigen::Index i = 0; i < values.rows(); ++i) out[i] = values.row(i).sum() * dp;
  return out;
}

WignerGrid wigner_pure(const WalkerState& state, const PhaseGrid& grid, Convention conv) {
  // Pair weights stay in long double; rounding them to double costs ~1e-6
  // for states whose weights cancel strongly.
  std::vector<CoordDyad> dyads;
  dyads.reserve(state.size() * state.size());
  for (const auto& m : state.components()) {
    const Coord ket = coord_of(m.center, conv);
    for (const auto& n : state.components()) {
      dyads.push_back({detail::widen(m.weight) * std::conj(detail::widen(n.weight)),
                       coord_of(n.center, conv), ket});
    }
  }
  return assemble_wigner(dyads, grid);
}

WignerGrid wigner_density(const CoherentDyadDensity& rho, const PhaseGrid& grid,
                          Convention conv) {
  double scale = 1.0;
  for (const auto& d : rho.dyads()) scale = std::max(scale, std::abs(d.weight));
  const double defect = rho.hermiticity_defect();
  if (!(defect <= 1e-10 * scale)) {
    std::ostringstream msg;
    msg << "dyad list is not Hermitian (defect " << defect << ")";
    throw ContractError(msg.str());
  }
  return assemble_wigner(coord_dyads(rho, conv), grid);
}

WignerGrid wigner_numeric_oracle(const ComplexVector& psi, const PhaseGrid& grid) {
  grid.x.validate();
  grid.p.validate();
  const int nx = grid.x.points;
  if (psi.size() != nx) throw ContractError("psi must be sampled on the x grid of the phase grid");
  const double edge = std::max(std::abs(psi(0)), std::abs(psi(nx - 1)));
  if (!(edge < 1e-8)) {
    std::ostringstream msg;
    msg << "psi does not decay at the grid edges (|psi| = " << edge << " >= 1e-8)";
    throw DomainError(msg.str());
  }
  const int np = grid.p.points;
  const double dx = grid.x.spacing();
  const int half = nx / 2 + 1;
  Eigen::MatrixXd cosines(np, half), sines(np, half);
  for (int k = 0; k < np; ++k) {
    for (int j = 0; j < half; ++j) {
      const double arg = 2.0 * grid.p.at(k) * j * dx;
      cosines(k, j) = std::cos(arg);
      sines(k, j) = std::sin(arg);
    }
  }

  WignerGrid out;
  out.grid = grid;
  out.values.resize(nx, np);
  Eigen::VectorXd vr(half), vi(half);
  for (int i = 0; i < nx; ++i) {
    const int reach = std::min(i, nx - 1 - i);
    vr.setZero();
    vi.setZero();
    for (int j = 0; j <= reach; ++j) {
      const Complex v = psi(i - j) * std::conj(psi(i + j));
      const double factor = j == 0 ? 1.0 : 2.0;
      vr(j) = factor * v.real();
      vi(j) = factor * v.imag();
    }
    out.values.row(i) = ((cosines * vr - sines * vi) * (dx / std::numbers::pi)).transpose();
  }
  out.integral = out.values.sum() * dx * grid.p.spacing();
  return out;
}

}  // namespace qrw
