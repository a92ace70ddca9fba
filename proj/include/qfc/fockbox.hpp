#pragma once

#include <map>
#include <variant>
#include <vector>

#include "qfc/linalg.hpp"
#include "qfc/spacetime.hpp"

// Box-quantized scalar field on finitely many momentum modes with a total
// occupation cutoff, dense operator realizations, and the sequential
// intervention protocol (unitary kicks, ideal measurements, one-particle
// rotations, final field expectation).

namespace qfc::fb {

using la::Complex;
using la::Matrix;
using la::Vector;

class TruncatedFockModel {
 public:
  // basis = all occupation tuples over the modes with total <= n_max
  TruncatedFockModel(double box_length, std::vector<std::vector<double>> modes, int n_max);

  double L() const { return L_; }
  std::size_t d() const { return d_; }
  int n_max() const { return n_max_; }
  long dim() const { return static_cast<long>(basis_.size()); }
  std::size_t mode_count() const { return modes_.size(); }
  const std::vector<double>& mode(std::size_t m) const { return modes_.at(m); }
  double omega(std::size_t m) const { return omegas_.at(m); }
  const std::vector<std::vector<int>>& basis() const { return basis_; }
  long index_of(const std::vector<int>& occ) const;

  const Matrix& annihilator(std::size_t m) const { return ladders_.at(m); }

  // e^{i k_mu xi^mu} phase of mode m at event xi (mostly plus)
  double mode_phase(std::size_t m, const st::Point& xi) const;
  Vector vacuum() const;
  Vector one_particle(std::size_t m) const;
  // <0|phi(xi)|1_m> = L^{-d/2} (2 omega)^{-1/2} e^{i k_mu xi^mu}
  Complex one_particle_wavefunction(std::size_t m, const st::Point& xi) const;

 private:
  double L_;
  std::size_t d_;
  std::vector<std::vector<double>> modes_;
  std::vector<double> omegas_;
  int n_max_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, long> index_;
  std::vector<Matrix> ladders_;
};

Matrix field_operator(const TruncatedFockModel& model, const st::Point& X);
Matrix unitary_kick(const TruncatedFockModel& model, const st::Point& X, double lambda);

struct RotationSpec {
  Vector one_a;  // |1>
  Vector one_b;  // |1'>, orthonormal to |1>
  Complex C{1.0, 0.0};
  Complex D{0.0, 0.0};
  double theta = 0.0;  // global phase on the rotated block
};

// e^{i theta}(C|1><1| + D|1><1'| - D*|1'><1| + C*|1'><1'|) + identity on the
// orthogonal complement
Matrix rotation_unitary(const TruncatedFockModel& model, const RotationSpec& spec);

// Tr(P_n ... P_1 rho P_1 ... P_n) for the ordered outcome sequence
double sequential_probability(const Matrix& rho, const std::vector<Matrix>& projectors);
double sequential_probability(const Vector& psi, const std::vector<Matrix>& projectors);

struct KickStep {
  st::Point X;
  double lambda = 0.0;
};
struct IdealMeasureStep {
  std::vector<Matrix> projectors;  // complete and orthogonal
};
struct RotateStep {
  RotationSpec spec;
};
struct MeasureFieldStep {
  st::Point Y;
};

struct Protocol {
  std::vector<std::variant<KickStep, IdealMeasureStep, RotateStep, MeasureFieldStep>> steps;
  Vector initial_state;
};

struct ProtocolResult {
  double expectation = 0.0;                        // <phi(Y)> on the final state
  std::vector<std::vector<double>> branch_weights;  // one entry per ideal measurement
};

// Kicks and rotations act as unitaries; ideal measurements update the state
// non-selectively (rho -> sum_b P_b rho P_b) while the selective branch
// weights are recorded. The final step must be MeasureField.
ProtocolResult run_protocol(const TruncatedFockModel& model, const Protocol& protocol);

// central finite difference d<phi(Y)>/d lambda at lambda = 0 taken on the
// first kick step
double protocol_lambda_derivative(const TruncatedFockModel& model, const Protocol& protocol,
                                  double h = 1e-4);

// The lambda-derivative attributable to the ideal measurements alone,
// normalized so that for the kick/measure(|1><1|)/field protocol on the
// vacuum it equals S(X,Y) = -Im(psi(X)* psi(Y)) exactly in the truncated
// model: the derivative with the measurement steps removed is subtracted
// (that baseline carries the truncated-commutator artifact) and the
// remainder is divided by -2.
double measurement_induced_signal(const TruncatedFockModel& model, const Protocol& protocol,
                                  double h = 1e-4);

// rotation signal for single-momentum states |1_ma>, |1_mb>:
//   L^{-d} (omega_a omega_b)^{-1/2} [sin(k_b Y - k_a X) - sin(k_a Y - k_b X)]
// with k X shorthand for k_mu X^mu
double analytic_box_signal(const TruncatedFockModel& model, std::size_t mode_a,
                           std::size_t mode_b, const st::Point& X, const st::Point& Y);

// specialization of the same expression to k_b = -k_a:
//   -(2 L^{-d}/omega) cos[omega (Y^0-X^0)] sin[k.(Y+X)]
double analytic_box_signal_opposite(const TruncatedFockModel& model, std::size_t mode_a,
                                    const st::Point& X, const st::Point& Y);

// smallest model containing both one-particle states and everything a single
// kick reaches at first order: d=1, L=2pi, modes {k, -k}, total cutoff 3
TruncatedFockModel default_two_mode_model(double k = 1.0);

}  // namespace qfc::fb
