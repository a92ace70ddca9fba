#pragma once

#include <complex>
#include <vector>

#include "qfc/numerics.hpp"
#include "qfc/spacetime.hpp"

// One-particle wavefunctions psi(xi) = <0|phi(xi)|1> for a free massless
// scalar (omega_k = |k|, mostly-plus k_mu xi^mu = -omega t + k.x), the
// signal strength S(X,Y) = -Im(psi(X)* psi(Y)), the on-axis 3+1d closed form
// and its large-t envelope.

namespace qfc::wp {

using Complex = std::complex<double>;

struct SingleMomentumPacket {
  std::vector<double> k;  // d-momentum, |k| > 0
  double box_length = 1.0;
};

struct GaussianPacket {
  std::vector<double> k0;   // mean momentum
  double sigma = 1.0;       // momentum-space spread
  double epsilon = 0.0;     // infrared cutoff, d=1 only
  std::size_t dim() const { return k0.size(); }
};

// |k0| >> sigma is advisory; callers may warn below this ratio.
bool narrow_packet_ok(const GaussianPacket& p);

Complex psi_single_momentum(const SingleMomentumPacket& p, const st::Point& xi);

struct PsiResult {
  Complex value{0.0, 0.0};
  bool precision_loss = false;
};

// d=1 right-mover with momentum support k > epsilon > 0 (adaptive quadrature)
PsiResult psi_1d(const GaussianPacket& p, const st::Point& Y, double rel_tol = 1e-9);

struct ClosedFormTerms {
  Complex v_plus, v_minus;
  // scaled products e^{v^2/4} D_{-3/2}(v); the two exponential factors are
  // never formed separately (they overflow alone for |v| ~ 40)
  Complex scaled_d_plus, scaled_d_minus;
};

struct ClosedFormResult {
  Complex value{0.0, 0.0};
  ClosedFormTerms terms;
  bool precision_loss = false;
};

// on-axis evaluation point (t, 0, 0, z); packet momentum k0 along +z
ClosedFormResult psi_3d_closed_form(const GaussianPacket& p, double t, double z);

// ORACLE: spherical reduction of the defining momentum integral; the angular
// integral gives 2 sinh(a)/a with a = k k0/sigma^2 + i k z, and a single
// radial adaptive quadrature over (0, k0 + 12 sigma] remains.
PsiResult psi_3d_quadrature(const GaussianPacket& p, double t, double z, double rel_tol = 1e-8);

struct SignalSample {
  st::Point X, Y;
  Complex psiX, psiY;
  double S = 0.0;
  bool spacelike = false;
};

enum class PsiMethod { SingleMomentum, OneD, ThreeDClosedForm, ThreeDQuadrature };

SignalSample signal_strength(const st::Point& X, const st::Point& Y,
                             const SingleMomentumPacket& p);
SignalSample signal_strength(const st::Point& X, const st::Point& Y,
                             const GaussianPacket& p, PsiMethod method);

struct FalloffFit {
  double exponent = 0.0;   // slope of log(envelope) vs log(t), expect ~ -1
  double gamma_hat = 0.0;  // envelope ~ gamma_hat sqrt(k0/sigma) |cos(k0 delta)| / t
  std::vector<double> t_samples;
  std::vector<double> envelope;  // |psi(t, t+delta)| |cos(k0 delta)|
};

// samples the closed form at z = t + delta on a log-spaced grid; the envelope
// is the analytic modulus times the explicit cos(k0 delta) factor rather than
// peak-picking
FalloffFit falloff_fit(const GaussianPacket& p, double delta, double t_min, double t_max,
                       int n_samples, int threads = 1);

struct GridPoint {
  double t, z;
};

// data-parallel sweep of the on-axis wavefunction over (t, z) points
std::vector<ClosedFormResult> sweep_closed_form(const GaussianPacket& p,
                                                const std::vector<GridPoint>& pts, int threads);
std::vector<PsiResult> sweep_quadrature(const GaussianPacket& p,
                                        const std::vector<GridPoint>& pts, int threads);
// serial reference implementations (identical results, no OpenMP)
std::vector<ClosedFormResult> sweep_closed_form_serial(const GaussianPacket& p,
                                                       const std::vector<GridPoint>& pts);
std::vector<PsiResult> sweep_quadrature_serial(const GaussianPacket& p,
                                               const std::vector<GridPoint>& pts);

// normalization integral of |psi_tilde|^2 (should be 1)
double packet_norm2(const GaussianPacket& p);

}  // namespace qfc::wp
