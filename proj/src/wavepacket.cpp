#include "qfc/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

#include "qfc/parallel.hpp"
#include "qfc/specfun.hpp"

namespace qfc::wp {

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

bool narrow_packet_ok(const GaussianPacket& p) { return norm(p.k0) >= 3.0 * p.sigma; }

Complex psi_single_momentum(const SingleMomentumPacket& p, const st::Point& xi) {
  const double w = norm(p.k);
  if (w <= 0.0) throw std::invalid_argument("psi_single_momentum: massless zero mode excluded");
  if (p.k.size() != xi.dim()) throw std::invalid_argument("psi_single_momentum: dimension mismatch");
  const double d = static_cast<double>(p.k.size());
  const double amp = std::pow(p.box_length, -0.5 * d) / std::sqrt(2.0 * w);
  const double phase = -w * xi.t + dot(p.k, xi.x);
  return amp * Complex(std::cos(phase), std::sin(phase));
}

PsiResult psi_1d(const GaussianPacket& p, const st::Point& Y, double rel_tol) {
  if (p.dim() != 1 || Y.dim() != 1) throw std::invalid_argument("psi_1d: d=1 only");
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("psi_1d: epsilon > 0 required");
  const double k0 = p.k0[0];
  const double sig = p.sigma;
  const double t = Y.t;
  const double z = Y.x[0];
  const double pref = std::pow(M_PI * sig * sig, -0.25);

  num::QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_panel_width = 2.0 * M_PI / (8.0 * std::max(1.0, std::abs(z) + std::abs(t)));
  auto f = [&](double k) -> Complex {
    const double g = std::exp(-(k - k0) * (k - k0) / (2.0 * sig * sig)) / (4.0 * M_PI * k);
    const double ph = -k * t + k * z;
    return g * Complex(std::cos(ph), std::sin(ph));
  };
  auto q = num::integrate(f, p.epsilon, k0 + 12.0 * sig, opt);
  return {pref * q.value, !q.converged()};
}

ClosedFormResult psi_3d_closed_form(const GaussianPacket& p, double t, double z) {
  if (p.dim() != 3) throw std::invalid_argument("psi_3d_closed_form: d=3 only");
  if (p.k0[0] != 0.0 || p.k0[1] != 0.0)
    throw std::invalid_argument("psi_3d_closed_form: k0 along +z required");
  const double k0 = p.k0[2];
  const double sig = p.sigma;

  ClosedFormResult r;
  const Complex i{0.0, 1.0};
  const Complex zc = z - i * k0 / (sig * sig);
  r.terms.v_minus = i * sig * (t - zc);
  r.terms.v_plus = i * sig * (t + zc);

  auto wm = pcf::scaled_D(-1.5, r.terms.v_minus);
  auto wp = pcf::scaled_D(-1.5, r.terms.v_plus);
  r.terms.scaled_d_minus = wm.value;
  r.terms.scaled_d_plus = wp.value;
  r.precision_loss = wm.precision_loss || wp.precision_loss;

  const double pref = std::exp(-k0 * k0 / (2.0 * sig * sig)) / (4.0 * std::pow(M_PI, 0.75));
  r.value = pref * (wm.value - wp.value) / (k0 / (sig * sig) + i * z);
  return r;
}

PsiResult psi_3d_quadrature(const GaussianPacket& p, double t, double z, double rel_tol) {
  if (p.dim() != 3) throw std::invalid_argument("psi_3d_quadrature: d=3 only");
  if (p.k0[0] != 0.0 || p.k0[1] != 0.0)
    throw std::invalid_argument("psi_3d_quadrature: k0 along +z required");
  const double k0 = p.k0[2];
  const double sig = p.sigma;
  const Complex i{0.0, 1.0};

  // (pi s^2)^{-3/4} (2pi)^{-3/2} 2pi * int dk k^2 (2k)^{-1/2} e^{-(k^2+k0^2)/2s^2} e^{-ikt} 2 sinh(a)/a
  // with a = k(k0/s^2 + iz); sinh and the Gaussian are combined in the
  // exponent so neither factor overflows:
  //   e^{-(k^2+k0^2)/2s^2} 2 sinh(a)/a = [e^{-(k-k0)^2/2s^2 + ikz} - e^{-(k+k0)^2/2s^2 - ikz}]/a
  const double c = std::pow(M_PI * sig * sig, -0.75) * std::pow(2.0 * M_PI, -1.5) * 2.0 * M_PI;
  const Complex avec = k0 / (sig * sig) + i * z;
  auto f = [&](double k) -> Complex {
    const Complex a = k * avec;
    const Complex e1 = std::exp(Complex(-(k - k0) * (k - k0) / (2.0 * sig * sig), k * z));
    const Complex e2 = std::exp(Complex(-(k + k0) * (k + k0) / (2.0 * sig * sig), -k * z));
    const Complex phase = std::exp(Complex(0.0, -k * t));
    return k * k / std::sqrt(2.0 * k) * phase * (e1 - e2) / a;
  };

  num::QuadOptions opt;
  opt.rel_tol = rel_tol;
  const double freq = std::max(1.0, std::abs(z - t) + std::abs(z + t));
  opt.max_panel_width = 2.0 * M_PI / (8.0 * freq);
  auto q = num::integrate(f, 0.0, k0 + 12.0 * sig, opt);
  return {c * q.value, !q.converged()};
}

namespace {

template <typename F>
SignalSample make_sample(const st::Point& X, const st::Point& Y, F&& psi) {
  SignalSample s;
  s.X = X;
  s.Y = Y;
  s.psiX = psi(X);
  s.psiY = psi(Y);
  s.S = -std::imag(std::conj(s.psiX) * s.psiY);
  s.spacelike = st::classify_interval(X, Y).kind == st::IntervalKind::Spacelike;
  return s;
}

}  // namespace

SignalSample signal_strength(const st::Point& X, const st::Point& Y,
                             const SingleMomentumPacket& p) {
  return make_sample(X, Y, [&](const st::Point& q) { return psi_single_momentum(p, q); });
}

SignalSample signal_strength(const st::Point& X, const st::Point& Y, const GaussianPacket& p,
                             PsiMethod method) {
  return make_sample(X, Y, [&](const st::Point& q) -> Complex {
    switch (method) {
      case PsiMethod::OneD:
        return psi_1d(p, q).value;
      case PsiMethod::ThreeDClosedForm:
        return psi_3d_closed_form(p, q.t, q.x.at(2)).value;
      case PsiMethod::ThreeDQuadrature:
        return psi_3d_quadrature(p, q.t, q.x.at(2)).value;
      default:
        throw std::invalid_argument("signal_strength: unsupported method for Gaussian packet");
    }
  });
}

FalloffFit falloff_fit(const GaussianPacket& p, double delta, double t_min, double t_max,
                       int n_samples, int threads) {
  if (p.dim() != 3) throw std::invalid_argument("falloff_fit: d=3 Gaussian packet required");
  const double k0 = p.k0[2];
  const double sig = p.sigma;
  if (!(delta > 0.0 && delta < 1.0 / sig))
    throw std::invalid_argument("falloff_fit: delta in (0, 1/sigma) required");
  if (!(t_min >= 5.0 * k0 / (sig * sig)))
    throw std::invalid_argument("falloff_fit: t_min >= 5 k0/sigma^2 required");
  if (n_samples < 4) throw std::invalid_argument("falloff_fit: need >= 4 samples");

  FalloffFit fit;
  fit.t_samples.resize(n_samples);
  fit.envelope.assign(n_samples, 0.0);
  const double la = std::log(t_min), lb = std::log(t_max);
  for (int i = 0; i < n_samples; ++i)
    fit.t_samples[i] = std::exp(la + (lb - la) * i / (n_samples - 1.0));

  const double cosfac = std::abs(std::cos(k0 * delta));
  par::for_each_index(n_samples, threads, [&](std::size_t i) {
    const double t = fit.t_samples[i];
    fit.envelope[i] = std::abs(psi_3d_closed_form(p, t, t + delta).value) * cosfac;
  });

  std::vector<double> lx, ly;
  for (int i = 0; i < n_samples; ++i) {
    if (fit.envelope[i] > 0.0) {
      lx.push_back(std::log(fit.t_samples[i]));
      ly.push_back(std::log(fit.envelope[i]));
    }
  }
  if (lx.size() < 4) throw std::runtime_error("falloff_fit: degenerate fit");
  auto line = num::fit_line(lx, ly);
  fit.exponent = line.slope;
  fit.gamma_hat = std::exp(line.intercept) / (std::sqrt(k0 / sig) * cosfac);
  return fit;
}

std::vector<ClosedFormResult> sweep_closed_form(const GaussianPacket& p,
                                                const std::vector<GridPoint>& pts, int threads) {
  std::vector<ClosedFormResult> out(pts.size());
  par::for_each_index(pts.size(), threads,
                      [&](std::size_t i) { out[i] = psi_3d_closed_form(p, pts[i].t, pts[i].z); });
  return out;
}

std::vector<PsiResult> sweep_quadrature(const GaussianPacket& p,
                                        const std::vector<GridPoint>& pts, int threads) {
  std::vector<PsiResult> out(pts.size());
  par::for_each_index(pts.size(), threads,
                      [&](std::size_t i) { out[i] = psi_3d_quadrature(p, pts[i].t, pts[i].z); });
  return out;
}

std::vector<ClosedFormResult> sweep_closed_form_serial(const GaussianPacket& p,
                                                       const std::vector<GridPoint>& pts) {
  std::vector<ClosedFormResult> out(pts.size());
  par::for_each_index_serial(pts.size(),
                             [&](std::size_t i) { out[i] = psi_3d_closed_form(p, pts[i].t, pts[i].z); });
  return out;
}

std::vector<PsiResult> sweep_quadrature_serial(const GaussianPacket& p,
                                               const std::vector<GridPoint>& pts) {
  std::vector<PsiResult> out(pts.size());
  par::for_each_index_serial(pts.size(),
                             [&](std::size_t i) { out[i] = psi_3d_quadrature(p, pts[i].t, pts[i].z); });
  return out;
}

double packet_norm2(const GaussianPacket& p) {
  const double sig = p.sigma;
  if (p.dim() == 1) {
    const double k0 = p.k0[0];
    const double pref = std::pow(M_PI * sig * sig, -0.5);
    auto f = [&](double k) -> Complex {
      return pref * std::exp(-(k - k0) * (k - k0) / (sig * sig));
    };
    auto q = num::integrate(f, std::max(p.epsilon, 0.0), k0 + 14.0 * sig, {1e-12});
    return q.value.real();
  }
  if (p.dim() == 3) {
    const double k0 = norm(p.k0);
    // angular integral of e^{-|k-k0|^2/s^2} gives the combined-exponent form
    const double pref = std::pow(M_PI * sig * sig, -1.5) * 2.0 * M_PI;
    auto f = [&](double k) -> Complex {
      const double a = 2.0 * k * k0 / (sig * sig);
      double ang;
      if (a < 1e-8)
        ang = 2.0 * std::exp(-(k * k + k0 * k0) / (sig * sig));
      else
        ang = (std::exp(-(k - k0) * (k - k0) / (sig * sig)) -
               std::exp(-(k + k0) * (k + k0) / (sig * sig))) / a;
      return k * k * ang;
    };
    auto q = num::integrate(f, 0.0, k0 + 14.0 * sig, {1e-12});
    return pref * q.value.real();
  }
  throw std::invalid_argument("packet_norm2: d=1 or d=3");
}

}  // namespace qfc::wp
