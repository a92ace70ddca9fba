#include "qfc/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace qfc::pcf {

namespace {

bool arg_in_asymptotic_sector(Complex z) {
  return std::abs(std::arg(z)) < 0.75 * M_PI;
}

}  // namespace

Complex scaled_D_asymptotic(double nu, Complex z) {
  const Complex z2 = z * z;
  const double a1 = nu * (nu - 1.0);
  const double a2 = nu * (nu - 1.0) * (nu - 2.0) * (nu - 3.0);
  return std::pow(z, nu) * (1.0 - a1 / (2.0 * z2) + a2 / (8.0 * z2 * z2));
}

PcfResult scaled_D(double nu, Complex z) {
  if (!(nu < 0.0)) throw std::invalid_argument("scaled_D: integral representation needs nu < 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("scaled_D: non-finite argument");

  PcfResult res;
  if (std::abs(z.imag()) > kImWindow) {
    if (std::abs(z) > kAsymptoticCut && arg_in_asymptotic_sector(z)) {
      res.value = scaled_D_asymptotic(nu, z);
      return res;
    }
    res.precision_loss = true;
    return res;
  }

  const double power = -nu - 1.0;
  const double zr = z.real();
  const double zi = z.imag();
  // e^{-s^2/2 - zr*s} peaks at s* = max(0,-zr); support ends where the
  // exponent has fallen by ~42 relative to the peak.
  const double s_peak = std::max(0.0, -zr);
  const double s_end = -zr + std::sqrt(zr * zr + 84.0) + 2.0 * std::max(power, 0.0);
  if (s_peak > 0.0 && power * std::log(s_peak) + 0.5 * zr * zr > 700.0) {
    res.precision_loss = true;  // integrand magnitude beyond double range
    return res;
  }

  num::QuadOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 0.0;
  opt.max_panel_width = 1.0 / (4.0 * std::max(1.0, std::abs(zi)));
  opt.max_intervals = 400000;

  auto f = [&](double s) -> Complex {
    if (s <= 0.0) return {0.0, 0.0};
    const double mag = power * std::log(s) - 0.5 * s * s - zr * s;
    const double ph = -zi * s;
    return std::exp(mag) * Complex(std::cos(ph), std::sin(ph));
  };
  auto q = num::integrate(f, 0.0, s_end, opt);
  res.value = q.value / std::tgamma(-nu);
  res.precision_loss = !q.converged();
  return res;
}

PcfResult D(double nu, Complex z) {
  PcfResult w = scaled_D(nu, z);
  w.value *= std::exp(-z * z / 4.0);
  return w;
}

}  // namespace qfc::pcf
