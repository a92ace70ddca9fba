#include "qfc/detector.hpp"

#include <cmath>
#include <stdexcept>

#include "qfc/numerics.hpp"
#include "qfc/parallel.hpp"

namespace qfc::det {

namespace {

constexpr Complex kI{0.0, 1.0};

// triad occupation basis, flat index ((i1)*(n2+1) + i2)*(nf+1) + i3
struct TriadBasis {
  int n1, n2, nf;
  long dim;
  TriadBasis(int nd1, int nd2, int nfld)
      : n1(nd1), n2(nd2), nf(nfld),
        dim(static_cast<long>(nd1 + 1) * (nd2 + 1) * (nfld + 1)) {}
  long index(int i1, int i2, int i3) const {
    return (static_cast<long>(i1) * (n2 + 1) + i2) * (nf + 1) + i3;
  }
  void unpack(long idx, int& i1, int& i2, int& i3) const {
    i3 = static_cast<int>(idx % (nf + 1));
    idx /= (nf + 1);
    i2 = static_cast<int>(idx % (n2 + 1));
    i1 = static_cast<int>(idx / (n2 + 1));
  }
};

struct SparseH {
  std::vector<std::vector<std::pair<long, Complex>>> rows;
  double gershgorin = 0.0;

  void add(long r, long c, Complex v) { rows[r].emplace_back(c, v); }
};

// H without the constant 1/2 terms (they only shift the global phase)
SparseH build_triad_hamiltonian(const DetectorTriadModel& m, const TriadBasis& b) {
  SparseH H;
  H.rows.resize(b.dim);
  const Complex c1 = std::polar(1.0, m.Omega * m.x1);
  const Complex c2 = std::polar(1.0, m.Omega * m.x2);
  for (long r = 0; r < b.dim; ++r) {
    int i1, i2, i3;
    b.unpack(r, i1, i2, i3);
    H.add(r, r, m.w1 * i1 + m.w2 * i2 + m.Omega * i3);
    // lambda (d + d+)(f c + f+ conj(c)): four ladder strings per detector.
    // Row r receives <r|H|col>: e.g. the d1 f+ term lowers i1 and raises i3
    // of the column state, so col = (i1+1, i2, i3-1).
    auto couple = [&](int which, double lam, Complex c) {
      if (lam == 0.0) return;
      int& id = (which == 1) ? i1 : i2;
      const int nd = (which == 1) ? b.n1 : b.n2;
      // d f   : col = (id+1, i3+1)
      if (id + 1 <= nd && i3 + 1 <= b.nf) {
        long col = (which == 1) ? b.index(i1 + 1, i2, i3 + 1) : b.index(i1, i2 + 1, i3 + 1);
        H.add(r, col, lam * c * std::sqrt(double(id + 1)) * std::sqrt(double(i3 + 1)));
      }
      // d f+  : col = (id+1, i3-1)
      if (id + 1 <= nd && i3 - 1 >= 0) {
        long col = (which == 1) ? b.index(i1 + 1, i2, i3 - 1) : b.index(i1, i2 + 1, i3 - 1);
        H.add(r, col, lam * std::conj(c) * std::sqrt(double(id + 1)) * std::sqrt(double(i3)));
      }
      // d+ f  : col = (id-1, i3+1)
      if (id - 1 >= 0 && i3 + 1 <= b.nf) {
        long col = (which == 1) ? b.index(i1 - 1, i2, i3 + 1) : b.index(i1, i2 - 1, i3 + 1);
        H.add(r, col, lam * c * std::sqrt(double(id)) * std::sqrt(double(i3 + 1)));
      }
      // d+ f+ : col = (id-1, i3-1)
      if (id - 1 >= 0 && i3 - 1 >= 0) {
        long col = (which == 1) ? b.index(i1 - 1, i2, i3 - 1) : b.index(i1, i2 - 1, i3 - 1);
        H.add(r, col, lam * std::conj(c) * std::sqrt(double(id)) * std::sqrt(double(i3)));
      }
    };
    couple(1, m.lambda1, c1);
    couple(2, m.lambda2, c2);
  }
  for (const auto& row : H.rows) {
    double s = 0.0;
    for (const auto& [c, v] : row) s += std::abs(v);
    H.gershgorin = std::max(H.gershgorin, s);
  }
  return H;
}

void apply_minus_iH(const SparseH& H, const Vector& in, Vector& out, int threads) {
  par::for_each_index(static_cast<std::size_t>(in.size()), threads, [&](std::size_t r) {
    Complex acc{0.0, 0.0};
    for (const auto& [c, v] : H.rows[r]) acc += v * in(static_cast<long>(c));
    out(static_cast<long>(r)) = -kI * acc;
  });
}

}  // namespace

void DetectorTriadModel::validate() const {
  if (!(w1 > 0.0 && w2 > 0.0 && Omega > 0.0))
    throw std::invalid_argument("DetectorTriadModel: frequencies must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("DetectorTriadModel: T > 0 required");
  if (const auto* fb = std::get_if<TruncatedFock>(&backend))
    if (fb->n_det < 2 || fb->n_field < 2)
      throw std::invalid_argument("DetectorTriadModel: truncations >= 2 required");
}

Matrix heisenberg_generator(const DetectorTriadModel& m) {
  m.validate();
  Matrix M = Matrix::Zero(6, 6);
  const Complex c1 = std::polar(1.0, m.Omega * m.x1);
  const Complex c2 = std::polar(1.0, m.Omega * m.x2);
  // d d1/dt = -i w1 d1 - i lambda1 (f e^{i O x1} + f+ e^{-i O x1}), etc.
  M(0, 0) = -kI * m.w1;
  M(0, 4) = -kI * m.lambda1 * c1;
  M(0, 5) = -kI * m.lambda1 * std::conj(c1);
  M(1, 1) = kI * m.w1;
  M(1, 4) = kI * m.lambda1 * c1;
  M(1, 5) = kI * m.lambda1 * std::conj(c1);
  M(2, 2) = -kI * m.w2;
  M(2, 4) = -kI * m.lambda2 * c2;
  M(2, 5) = -kI * m.lambda2 * std::conj(c2);
  M(3, 3) = kI * m.w2;
  M(3, 4) = kI * m.lambda2 * c2;
  M(3, 5) = kI * m.lambda2 * std::conj(c2);
  M(4, 4) = -kI * m.Omega;
  M(4, 0) = M(4, 1) = -kI * m.lambda1 * std::conj(c1);
  M(4, 2) = M(4, 3) = -kI * m.lambda2 * std::conj(c2);
  M(5, 5) = kI * m.Omega;
  M(5, 0) = M(5, 1) = kI * m.lambda1 * c1;
  M(5, 2) = M(5, 3) = kI * m.lambda2 * c2;
  return M;
}

ModeVector evolve_linear(const DetectorTriadModel& m) {
  Matrix U = la::expm(heisenberg_generator(m) * m.T);
  Matrix J = Matrix::Zero(6, 6);
  for (int b = 0; b < 3; ++b) {
    J(2 * b, 2 * b + 1) = 1.0;
    J(2 * b + 1, 2 * b) = -1.0;
  }
  const double defect = (U * J * U.transpose() - J).cwiseAbs().maxCoeff();
  if (defect > 1e-9)
    throw std::runtime_error("evolve_linear: symplectic condition violated");
  return {std::move(U), defect};
}

double detector_energy_linear(const DetectorTriadModel& m) {
  const Matrix U = evolve_linear(m).evolution;
  // d1(T) = sum_j U(0,j) v_j; on the free ground state only the anti-ladder
  // coefficients (columns d1+, d2+, f+) contribute to <d1+ d1>
  const double n1 = std::norm(U(0, 1)) + std::norm(U(0, 3)) + std::norm(U(0, 5));
  return m.w1 * (n1 + 0.5);
}

double detector_energy_fock(const DetectorTriadModel& m) {
  const auto* fb = std::get_if<TruncatedFock>(&m.backend);
  if (!fb) throw std::invalid_argument("detector_energy_fock: TruncatedFock backend required");
  m.validate();
  TriadBasis basis(fb->n_det, fb->n_det, fb->n_field);
  SparseH H = build_triad_hamiltonian(m, basis);

  // fixed-step RK4: global error ~ T |H|^5 dt^4 / 120
  const double hn = std::max(H.gershgorin, 1.0);
  double dt = std::pow(120.0 * fb->time_tol / (m.T * std::pow(hn, 5)), 0.25);
  dt = std::min(dt, 0.35 / hn);
  const long steps = static_cast<long>(std::ceil(m.T / dt));
  dt = m.T / static_cast<double>(steps);

  Vector psi = Vector::Zero(basis.dim);
  psi(0) = 1.0;
  Vector k1(basis.dim), k2(basis.dim), k3(basis.dim), k4(basis.dim), tmp(basis.dim);
  for (long s = 0; s < steps; ++s) {
    apply_minus_iH(H, psi, k1, fb->threads);
    tmp = psi + 0.5 * dt * k1;
    apply_minus_iH(H, tmp, k2, fb->threads);
    tmp = psi + 0.5 * dt * k2;
    apply_minus_iH(H, tmp, k3, fb->threads);
    tmp = psi + dt * k3;
    apply_minus_iH(H, tmp, k4, fb->threads);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double drift = std::abs(psi.norm() - 1.0);
  if (drift > 1e-6) throw std::runtime_error("detector_energy_fock: integrator norm drift");

  double n1 = 0.0;
  for (long i = 0; i < basis.dim; ++i) {
    int i1, i2, i3;
    basis.unpack(i, i1, i2, i3);
    n1 += i1 * std::norm(psi(i));
  }
  return m.w1 * (n1 + 0.5);
}

EnergyResult detector_energy(const DetectorTriadModel& m, bool check_convergence) {
  EnergyResult res;
  if (std::holds_alternative<LinearHeisenberg>(m.backend)) {
    res.E1 = detector_energy_linear(m);
    return res;
  }
  res.E1 = detector_energy_fock(m);
  if (check_convergence) {
    DetectorTriadModel bigger = m;
    auto fb = std::get<TruncatedFock>(m.backend);
    fb.n_det += 2;
    fb.n_field += 2;
    bigger.backend = fb;
    const double e2 = detector_energy_fock(bigger);
    res.convergence_delta = e2 - res.E1;
    res.converged = std::abs(*res.convergence_delta) <= 1e-4;
  }
  return res;
}

SignalFit signal_coefficient(const DetectorTriadModel& model,
                             const std::vector<double>& lambda2_grid, int threads) {
  bool has_zero = false;
  int nonzero = 0;
  for (double l : lambda2_grid) {
    if (l == 0.0) has_zero = true;
    else {
      ++nonzero;
      if (std::abs(l) > 0.05)
        throw std::invalid_argument("signal_coefficient: |lambda2| <= 0.05 required");
    }
  }
  if (!has_zero || nonzero < 2)
    throw std::invalid_argument("signal_coefficient: grid needs 0 and >= 2 nonzero values");

  SignalFit fit;
  fit.lambda2_grid = lambda2_grid;
  fit.E1_values.assign(lambda2_grid.size(), 0.0);
  const bool linear = std::holds_alternative<LinearHeisenberg>(model.backend);
  par::for_each_index(lambda2_grid.size(), linear ? 1 : threads, [&](std::size_t i) {
    DetectorTriadModel m = model;
    m.lambda2 = lambda2_grid[i];
    fit.E1_values[i] = linear ? detector_energy_linear(m) : detector_energy_fock(m);
  });

  // parity check wherever the grid contains both signs
  for (std::size_t i = 0; i < lambda2_grid.size(); ++i)
    for (std::size_t j = i + 1; j < lambda2_grid.size(); ++j)
      if (lambda2_grid[i] == -lambda2_grid[j] && lambda2_grid[i] != 0.0)
        if (std::abs(fit.E1_values[i] - fit.E1_values[j]) > 1e-10)
          throw std::runtime_error("signal_coefficient: lambda2 parity violated");

  std::vector<double> ones, l2, l4;
  for (double l : lambda2_grid) {
    ones.push_back(1.0);
    l2.push_back(l * l);
    l4.push_back(l * l * l * l);
  }
  // need at least 3 distinct lambda^2 values for the 3 coefficients
  {
    std::vector<double> distinct = l2;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
      throw std::invalid_argument("signal_coefficient: ill-conditioned fit grid");
  }
  auto c = num::least_squares({ones, l2, l4}, fit.E1_values);
  fit.c0 = c[0];
  fit.c2 = c[1];
  fit.c4 = c[2];
  return fit;
}

Matrix interaction_hamiltonian(const DetectorTriadModel& m, int which, double t) {
  const auto* fb = std::get_if<TruncatedFock>(&m.backend);
  if (!fb) throw std::invalid_argument("interaction_hamiltonian: TruncatedFock backend required");
  if (which != 1 && which != 2) throw std::invalid_argument("interaction_hamiltonian: which in {1,2}");
  m.validate();
  TriadBasis b(fb->n_det, fb->n_det, fb->n_field);
  Matrix H = Matrix::Zero(b.dim, b.dim);
  const double lam = (which == 1) ? m.lambda1 : m.lambda2;
  if (t <= 0.0 || t > m.T || lam == 0.0) return H;  // switching window

  const double w = (which == 1) ? m.w1 : m.w2;
  const double x = (which == 1) ? m.x1 : m.x2;
  const Complex det_ph = std::polar(1.0, -w * t);           // with d
  const Complex fld_ph = std::polar(1.0, m.Omega * (x - t));  // with f
  for (long r = 0; r < b.dim; ++r) {
    int i1, i2, i3;
    b.unpack(r, i1, i2, i3);
    const int id = (which == 1) ? i1 : i2;
    const int nd = (which == 1) ? b.n1 : b.n2;
    auto col = [&](int dd, int df) {
      return (which == 1) ? b.index(i1 + dd, i2, i3 + df) : b.index(i1, i2 + dd, i3 + df);
    };
    // <r| (d ph + d+ ph*)(f fp + f+ fp*) |col>
    if (id + 1 <= nd && i3 + 1 <= b.nf)
      H(r, col(1, 1)) = lam * det_ph * fld_ph * std::sqrt(double(id + 1)) * std::sqrt(double(i3 + 1));
    if (id + 1 <= nd && i3 - 1 >= 0)
      H(r, col(1, -1)) = lam * det_ph * std::conj(fld_ph) * std::sqrt(double(id + 1)) * std::sqrt(double(i3));
    if (id - 1 >= 0 && i3 + 1 <= b.nf)
      H(r, col(-1, 1)) = lam * std::conj(det_ph) * fld_ph * std::sqrt(double(id)) * std::sqrt(double(i3 + 1));
    if (id - 1 >= 0 && i3 - 1 >= 0)
      H(r, col(-1, -1)) = lam * std::conj(det_ph) * std::conj(fld_ph) * std::sqrt(double(id)) * std::sqrt(double(i3));
  }
  return H;
}

CommutatorResult commutator_factor(const DetectorTriadModel& model, double t1, double t2) {
  CommutatorResult res;
  // Omega_mu (X1 - X2)^mu = -Omega (t1 - t2) + Omega (x1 - x2), mostly plus
  res.factor = std::sin(-model.Omega * (t1 - t2) + model.Omega * (model.x1 - model.x2));

  DetectorTriadModel m = model;
  if (!std::holds_alternative<TruncatedFock>(m.backend)) m.backend = TruncatedFock{3, 3};
  const Matrix H1 = interaction_hamiltonian(m, 1, t1);
  const Matrix H2 = interaction_hamiltonian(m, 2, t2);
  res.norm = (H1 * H2 - H2 * H1).norm();  // Frobenius
  return res;
}

SmearingProfilePair effective_smearing(const DetectorTriadModel& m, int which,
                                       const std::vector<double>& x_grid, double box_length) {
  if (which != 1 && which != 2) throw std::invalid_argument("effective_smearing: which in {1,2}");
  if (!(box_length > 0.0)) throw std::invalid_argument("effective_smearing: box length required");
  const double xi = (which == 1) ? m.x1 : m.x2;
  const double cF = std::sqrt(2.0 * m.Omega / box_length);
  const double cG = std::sqrt(2.0 / (m.Omega * box_length));
  SmearingProfilePair out;
  out.x = x_grid;
  out.F.resize(x_grid.size());
  out.G.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    out.F[i] = cF * std::cos(m.Omega * (x_grid[i] - xi));
    out.G[i] = cG * std::sin(m.Omega * (x_grid[i] - xi));
  }
  // constant-amplitude profiles never decay across the grid
  double head = 0.0, tail = 0.0;
  const std::size_t third = std::max<std::size_t>(1, x_grid.size() / 3);
  for (std::size_t i = 0; i < third; ++i) head = std::max(head, std::abs(out.F[i]));
  for (std::size_t i = x_grid.size() - third; i < x_grid.size(); ++i)
    tail = std::max(tail, std::abs(out.F[i]));
  out.non_decaying = tail > 0.5 * head;
  return out;
}

double smearing_overlap(const DetectorTriadModel& m, double box_length) {
  // int_0^{2pi/Omega} F1 F2 dx = (2pi/L) cos(Omega (x1 - x2))
  return (2.0 * M_PI / box_length) * std::cos(m.Omega * (m.x1 - m.x2));
}

}  // namespace qfc::det
