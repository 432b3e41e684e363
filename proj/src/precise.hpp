#pragma once

// Extended-precision helpers for quadratic forms over coherent components.
// Walk states with strong interference carry weights whose magnitudes exceed
// the state norm by ~1e5, so pairwise sums cancel heavily.

#include <complex>

namespace qrw::detail {

using XReal = long double;
using XComplex = std::complex<long double>;

inline XComplex widen(std::complex<double> z) { return {z.real(), z.imag()}; }

inline std::complex<double> narrow(XComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// s * log<bra|ket> = s * (bra* ket - |bra|^2/2 - |ket|^2/2).
inline XComplex overlap_exponent(XComplex bra, XComplex ket) {
  return std::conj(bra) * ket - 0.5L * std::norm(bra) - 0.5L * std::norm(ket);
}

/// <bra|ket> for coherent states.
inline XComplex overlap(XComplex bra, XComplex ket) { return std::exp(overlap_exponent(bra, ket)); }

}  // namespace qrw::detail
