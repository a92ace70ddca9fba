#pragma once

#include <cstdint>
#include <vector>

#include "qfc/linalg.hpp"
#include "qfc/numerics.hpp"

// Spatial smearing weights that realize mode-quadrature observables as
// integrals of phi and pi over a constant-time surface, their localization
// diagnostics, and the bipartite sum-of-local-observables no-signalling
// check.

namespace qfc::sm {

using la::Complex;
using la::Matrix;
using la::Vector;

struct SmearingProfile {
  std::vector<double> grid;    // strictly increasing positions
  std::vector<double> values;
};

// single-momentum weights, continuum normalization (2pi)^{-d/2}; pass
// box_length > 0 to replace the 2pi by L
struct FGProfiles {
  SmearingProfile F, G;
};
FGProfiles smearing_FG(const std::vector<double>& k, const std::vector<double>& x_grid,
                       double box_length = 0.0);

// tabulated momentum amplitude on a uniform grid (d=1)
struct TabulatedAmplitude {
  std::vector<double> k_grid;        // uniform, strictly increasing
  std::vector<Complex> psi_tilde;
};
TabulatedAmplitude tabulate_gaussian(double k0, double sigma, std::size_t n_points = 8193,
                                     double half_width_sigmas = 8.0);
double tabulated_norm2(const TabulatedAmplitude& amp);

// packet-state weights J (phi weight) and K (pi weight); K(x) is twice the
// imaginary part of the t=0 wavefunction, J(x) is not its real part
struct JKProfiles {
  SmearingProfile J, K;
};
JKProfiles smearing_JK(const TabulatedAmplitude& amp, const std::vector<double>& x_grid,
                       int threads = 1);

// t=0 one-particle wavefunction from the tabulated amplitude (same grid rule)
Complex psi_from_amplitude(const TabulatedAmplitude& amp, double x);

enum class DecayClass { Bounded, ExponentialTail, NonDecaying };

struct LocalizationReport {
  double tail_metric = 0.0;  // max |v| outside window / max |v| inside
  DecayClass decay = DecayClass::NonDecaying;
  double tail_slope = 0.0;   // log|v| vs x fit outside the window
  double tail_r2 = 0.0;
};

LocalizationReport localization_report(const SmearingProfile& profile, double window_lo,
                                       double window_hi);

struct BipartiteSystem {
  int dimA = 2, dimB = 2;
  Matrix A;     // Hermitian on subsystem A
  Matrix B;     // Hermitian on subsystem B
  Matrix rho0;  // density matrix on the product
};

// Applies (U1 x 1), then the measurement-as-random-unitary device
// e^{i l (A x 1)} e^{i l (1 x B)} for each lambda sample, traces out A, and
// returns the largest trace-norm distance between the reduced states with U1
// and with the identity. The sum-of-local-observables theorem makes this
// vanish; sup over the fixed lambda set rather than an ensemble average,
// since the product of commuting local unitaries factorizes pointwise in
// lambda.
double bipartite_no_signalling(const BipartiteSystem& system, const Matrix& U1,
                               const std::vector<double>& lambda_samples);

// negative control: the same protocol with a nonlocal coupling A' on the full
// product in place of A x 1
double bipartite_nonlocal_deviation(const BipartiteSystem& system, const Matrix& U1,
                                    const Matrix& A_nonlocal,
                                    const std::vector<double>& lambda_samples);

// seeded random instances for the property suites
struct RandomBipartite {
  BipartiteSystem system;
  Matrix U1;
  Matrix A_nonlocal;
};
RandomBipartite random_bipartite(std::uint64_t seed, int dimA, int dimB);

}  // namespace qfc::sm
