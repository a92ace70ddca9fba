#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qfc/linalg.hpp"

// Two oscillator detectors at fixed positions coupled to a single field mode:
//   H = w1(d1+ d1 + 1/2) + w2(d2+ d2 + 1/2) + Omega(f+ f + 1/2)
//       + sum_i lambda_i(t) (d_i + d_i+)(f e^{i Omega x_i} + f+ e^{-i Omega x_i})
// with step-function couplings (zero for t <= 0, constant on (0, T]). The
// Hamiltonian is quadratic, so the 6x6 linear Heisenberg evolution is exact;
// a truncated-Fock evolution is kept as an independent cross-check.

namespace qfc::det {

using la::Complex;
using la::Matrix;
using la::Vector;

struct LinearHeisenberg {};

struct TruncatedFock {
  int n_det = 6;    // max occupation per detector mode
  int n_field = 6;  // max occupation of the field mode
  double time_tol = 1e-8;  // RK4 global error target
  int threads = 1;
};

struct DetectorTriadModel {
  double w1 = 1.0, w2 = 1.0;
  double Omega = 1.0;
  double x1 = 0.0, x2 = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;
  double T = 1.0;
  std::variant<LinearHeisenberg, TruncatedFock> backend{LinearHeisenberg{}};

  void validate() const;
};

// Heisenberg generator M for v = (d1, d1+, d2, d2+, f, f+), dv/dt = M v
Matrix heisenberg_generator(const DetectorTriadModel& model);

struct ModeVector {
  Matrix evolution;          // exp(M T)
  double symplectic_defect;  // max |U J U^T - J|
};

// exact evolution of the ladder-operator vector; throws if the symplectic
// condition fails beyond 1e-9 (generator assembly bug)
ModeVector evolve_linear(const DetectorTriadModel& model);

struct EnergyResult {
  double E1 = 0.0;
  // set when a convergence check ran: E1 change upon raising both cutoffs by 2
  std::optional<double> convergence_delta;
  bool converged = true;  // false when |convergence_delta| > 1e-4
};

// E1(T) = w1 (<d1+ d1>_T + 1/2) from the free ground state
EnergyResult detector_energy(const DetectorTriadModel& model, bool check_convergence = false);
double detector_energy_linear(const DetectorTriadModel& model);
double detector_energy_fock(const DetectorTriadModel& model);

struct SignalFit {
  double c0 = 0.0, c2 = 0.0, c4 = 0.0;
  std::vector<double> lambda2_grid;
  std::vector<double> E1_values;
};

// fits E1(lambda2) = c0 + c2 l^2 + c4 l^4 (odd terms absent by the
// f -> -f, d2 -> -d2 symmetry, asserted on the sampled grid)
SignalFit signal_coefficient(const DetectorTriadModel& model,
                             const std::vector<double>& lambda2_grid, int threads = 1);

// interaction-picture coupling Hamiltonian of detector i at time t on the
// truncated triad space; zero matrix outside the switching window
Matrix interaction_hamiltonian(const DetectorTriadModel& model, int which, double t);

struct CommutatorResult {
  double factor = 0.0;  // sin(Omega_mu (X1 - X2)^mu), mostly plus
  double norm = 0.0;    // Frobenius norm of [H1(t1), H2(t2)] on the truncation
};

CommutatorResult commutator_factor(const DetectorTriadModel& model, double t1, double t2);

struct SmearingProfilePair {
  std::vector<double> x;
  std::vector<double> F, G;
  bool non_decaying = false;  // constant-amplitude profile: detector not localized
};

// spatial weights of the mode the detector couples to, in a box of length L:
//   F_i(x) = (2 Omega)^{1/2} L^{-1/2} cos[Omega(x - x_i)]
//   G_i(x) = (2/Omega)^{1/2} L^{-1/2} sin[Omega(x - x_i)]
SmearingProfilePair effective_smearing(const DetectorTriadModel& model, int which,
                                       const std::vector<double>& x_grid, double box_length);

// closed form of int F_1 F_2 dx over one period 2pi/Omega
double smearing_overlap(const DetectorTriadModel& model, double box_length);

}  // namespace qfc::det
