#include "qfc/smearing.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qfc/parallel.hpp"

namespace qfc::sm {

namespace {

double vnorm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// composite Simpson over a uniform tabulation
Complex simpson(const std::vector<double>& grid, const std::vector<Complex>& f) {
  const std::size_t n = grid.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson: odd point count >= 3 required");
  const double h = grid[1] - grid[0];
  Complex s = f[0] + f[n - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) s += f[i] * ((i % 2 == 1) ? 4.0 : 2.0);
  return s * (h / 3.0);
}

}  // namespace

FGProfiles smearing_FG(const std::vector<double>& k, const std::vector<double>& x_grid,
                       double box_length) {
  const double w = vnorm(k);
  if (w <= 0.0) throw std::invalid_argument("smearing_FG: |k| > 0 required");
  if (k.size() != 1)
    throw std::invalid_argument("smearing_FG: profiles are sampled along a 1d grid");
  const double d = static_cast<double>(k.size());
  const double vol = (box_length > 0.0) ? std::pow(box_length, -0.5 * d)
                                        : std::pow(2.0 * M_PI, -0.5 * d);
  FGProfiles out;
  out.F.grid = out.G.grid = x_grid;
  out.F.values.resize(x_grid.size());
  out.G.values.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double kx = k[0] * x_grid[i];
    out.F.values[i] = std::sqrt(2.0 * w) * vol * std::cos(kx);
    out.G.values[i] = std::sqrt(2.0 / w) * vol * std::sin(kx);
  }
  return out;
}

TabulatedAmplitude tabulate_gaussian(double k0, double sigma, std::size_t n_points,
                                     double half_width_sigmas) {
  if (n_points < 3 || n_points % 2 == 0)
    throw std::invalid_argument("tabulate_gaussian: odd point count >= 3 required");
  TabulatedAmplitude amp;
  amp.k_grid.resize(n_points);
  amp.psi_tilde.resize(n_points);
  const double lo = k0 - half_width_sigmas * sigma;
  const double hi = k0 + half_width_sigmas * sigma;
  const double pref = std::pow(M_PI * sigma * sigma, -0.25);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double k = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    amp.k_grid[i] = k;
    amp.psi_tilde[i] = pref * std::exp(-(k - k0) * (k - k0) / (2.0 * sigma * sigma));
  }
  return amp;
}

double tabulated_norm2(const TabulatedAmplitude& amp) {
  std::vector<Complex> f(amp.k_grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::norm(amp.psi_tilde[i]);
  return simpson(amp.k_grid, f).real();
}

JKProfiles smearing_JK(const TabulatedAmplitude& amp, const std::vector<double>& x_grid,
                       int threads) {
  if (std::abs(tabulated_norm2(amp) - 1.0) > 1e-6)
    throw std::invalid_argument("smearing_JK: amplitude not normalized");
  JKProfiles out;
  out.J.grid = out.K.grid = x_grid;
  out.J.values.resize(x_grid.size());
  out.K.values.resize(x_grid.size());
  const double c = std::pow(2.0 * M_PI, -0.5);
  par::for_each_index(x_grid.size(), threads, [&](std::size_t i) {
    const double x = x_grid[i];
    std::vector<Complex> fJ(amp.k_grid.size()), fK(amp.k_grid.size());
    for (std::size_t j = 0; j < amp.k_grid.size(); ++j) {
      const double k = amp.k_grid[j];
      const double w = std::abs(k);
      const Complex e = std::polar(1.0, k * x) * amp.psi_tilde[j];
      // J: (w/2)^{1/2} [e + cc];  K: -i (2w)^{-1/2} [e - cc]
      fJ[j] = std::sqrt(w / 2.0) * 2.0 * e.real();
      fK[j] = std::pow(2.0 * w, -0.5) * 2.0 * e.imag();
    }
    out.J.values[i] = c * simpson(amp.k_grid, fJ).real();
    out.K.values[i] = c * simpson(amp.k_grid, fK).real();
  });
  return out;
}

Complex psi_from_amplitude(const TabulatedAmplitude& amp, double x) {
  std::vector<Complex> f(amp.k_grid.size());
  const double c = std::pow(2.0 * M_PI, -0.5);
  for (std::size_t j = 0; j < amp.k_grid.size(); ++j) {
    const double k = amp.k_grid[j];
    const double w = std::abs(k);
    f[j] = std::pow(2.0 * w, -0.5) * std::polar(1.0, k * x) * amp.psi_tilde[j];
  }
  return c * simpson(amp.k_grid, f);
}

LocalizationReport localization_report(const SmearingProfile& profile, double window_lo,
                                       double window_hi) {
  if (profile.grid.size() != profile.values.size() || profile.grid.size() < 4)
    throw std::invalid_argument("localization_report: malformed profile");
  if (!(window_lo >= profile.grid.front() && window_hi <= profile.grid.back() &&
        window_lo < window_hi))
    throw std::invalid_argument("localization_report: window outside grid");

  double inside = 0.0, outside = 0.0;
  std::vector<double> tx, tlog;
  std::size_t n_out = 0;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    const double x = profile.grid[i];
    const double v = std::abs(profile.values[i]);
    if (x >= window_lo && x <= window_hi) {
      inside = std::max(inside, v);
    } else {
      outside = std::max(outside, v);
      ++n_out;
      if (v > 0.0) {
        tx.push_back(std::abs(x - 0.5 * (window_lo + window_hi)));
        tlog.push_back(std::log(v));
      }
    }
  }
  if (n_out == 0) throw std::invalid_argument("localization_report: empty tail sample");

  LocalizationReport rep;
  rep.tail_metric = (inside > 0.0) ? outside / inside : 0.0;
  if (rep.tail_metric < 1e-12) {
    rep.decay = DecayClass::Bounded;
    return rep;
  }
  if (tx.size() >= 4) {
    auto line = num::fit_line(tx, tlog);
    rep.tail_slope = line.slope;
    rep.tail_r2 = line.r_squared;
    if (line.slope < 0.0 && line.r_squared > 0.9) {
      rep.decay = DecayClass::ExponentialTail;
      return rep;
    }
  }
  rep.decay = DecayClass::NonDecaying;
  return rep;
}

namespace {

Matrix reduced_after_device(const BipartiteSystem& s, const Matrix& pre_unitary,
                            const Matrix& expA, const Matrix& expB) {
  Matrix rho = pre_unitary * s.rho0 * pre_unitary.adjoint();
  rho = expA * rho * expA.adjoint();
  rho = expB * rho * expB.adjoint();
  return la::partial_trace_first(rho, s.dimA, s.dimB);
}

}  // namespace

double bipartite_no_signalling(const BipartiteSystem& s, const Matrix& U1,
                               const std::vector<double>& lambda_samples) {
  if (!la::is_unitary(U1)) throw std::invalid_argument("bipartite_no_signalling: U1 not unitary");
  const Matrix IA = Matrix::Identity(s.dimA, s.dimA);
  const Matrix IB = Matrix::Identity(s.dimB, s.dimB);
  const Matrix U1full = la::kron(U1, IB);
  const Matrix Ifull = Matrix::Identity(s.dimA * s.dimB, s.dimA * s.dimB);
  double worst = 0.0;
  for (double l : lambda_samples) {
    const Matrix expA = la::kron(la::exp_i_hermitian(s.A, l), IB);
    const Matrix expB = la::kron(IA, la::exp_i_hermitian(s.B, l));
    const Matrix r_with = reduced_after_device(s, U1full, expA, expB);
    const Matrix r_without = reduced_after_device(s, Ifull, expA, expB);
    worst = std::max(worst, la::trace_norm_hermitian(r_with - r_without));
  }
  return worst;
}

double bipartite_nonlocal_deviation(const BipartiteSystem& s, const Matrix& U1,
                                    const Matrix& A_nonlocal,
                                    const std::vector<double>& lambda_samples) {
  const Matrix IA = Matrix::Identity(s.dimA, s.dimA);
  const Matrix IB = Matrix::Identity(s.dimB, s.dimB);
  const Matrix U1full = la::kron(U1, IB);
  const Matrix Ifull = Matrix::Identity(s.dimA * s.dimB, s.dimA * s.dimB);
  double worst = 0.0;
  for (double l : lambda_samples) {
    const Matrix expA = la::exp_i_hermitian(A_nonlocal, l);
    const Matrix expB = la::kron(IA, la::exp_i_hermitian(s.B, l));
    const Matrix r_with = reduced_after_device(s, U1full, expA, expB);
    const Matrix r_without = reduced_after_device(s, Ifull, expA, expB);
    worst = std::max(worst, la::trace_norm_hermitian(r_with - r_without));
  }
  return worst;
}

RandomBipartite random_bipartite(std::uint64_t seed, int dimA, int dimB) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto ginibre = [&](int n) {
    Matrix G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
    return G;
  };
  auto hermitian = [&](int n) {
    Matrix G = ginibre(n);
    return Matrix(0.5 * (G + G.adjoint()));
  };

  RandomBipartite out;
  out.system.dimA = dimA;
  out.system.dimB = dimB;
  out.system.A = hermitian(dimA);
  out.system.B = hermitian(dimB);
  Matrix G = ginibre(dimA * dimB);
  Matrix rho = G * G.adjoint();
  out.system.rho0 = rho / rho.trace().real();
  out.U1 = la::exp_i_hermitian(hermitian(dimA), 1.0);
  out.A_nonlocal = hermitian(dimA * dimB);
  return out;
}

}  // namespace qfc::sm
