#pragma once

#include <complex>

#include "qfc/numerics.hpp"

// Parabolic cylinder function D_nu(z) for nu < 0 and complex z, via the
// integral representation
//   D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf s^{-nu-1} e^{-s^2/2 - z s} ds.
// The quantity the wavepacket closed form actually needs is the scaled
// product W(z) = e^{+z^2/4} D_nu(z), which is the bare integral above divided
// by Gamma(-nu): both exponential factors cancel, so W stays representable
// where e^{±z^2/4} alone would overflow. |Im z| sets the oscillation rate of
// the integrand; panels are pre-split to <= 1/(4 max(1,|Im z|)).

namespace qfc::pcf {

using Complex = std::complex<double>;

inline constexpr double kImWindow = 600.0;   // validity window for the quadrature
inline constexpr double kAsymptoticCut = 30.0;

struct PcfResult {
  Complex value{0.0, 0.0};
  bool precision_loss = false;  // oscillation count exceeded the quadrature budget
};

// e^{z^2/4} D_nu(z); nu < 0. Quadrature inside |Im z| <= 600, asymptotic
// series for |z| > 30 with |arg z| < 3pi/4 beyond the window.
PcfResult scaled_D(double nu, Complex z);

// D_nu(z) itself (e^{-z^2/4} may overflow for large |Im z|; callers that only
// need the product should use scaled_D).
PcfResult D(double nu, Complex z);

// Leading asymptotic branch e^{-z^2/4} z^nu (1 - nu(nu-1)/(2z^2) + ...),
// returned in scaled form z^nu (1 + ...). Valid |z| large, |arg z| < 3pi/4.
Complex scaled_D_asymptotic(double nu, Complex z);

}  // namespace qfc::pcf
