#include "qfc/fockbox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfc::fb {

namespace {

double vnorm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void enumerate_tuples(std::vector<int>& cur, std::size_t pos, int budget,
                      std::vector<std::vector<int>>& out) {
  if (pos == cur.size()) {
    out.push_back(cur);
    return;
  }
  for (int n = 0; n <= budget; ++n) {
    cur[pos] = n;
    enumerate_tuples(cur, pos + 1, budget - n, out);
  }
  cur[pos] = 0;
}

void check_projector_family(const std::vector<Matrix>& projs, long dim) {
  if (projs.empty()) throw std::invalid_argument("ideal measurement: empty projector set");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& P : projs) {
    if (P.rows() != dim || P.cols() != dim)
      throw std::invalid_argument("ideal measurement: projector dimension mismatch");
    if (!la::is_hermitian(P)) throw std::invalid_argument("ideal measurement: non-Hermitian projector");
    sum += P;
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > la::kOpTol)
    throw std::invalid_argument("ideal measurement: incomplete projector set");
  for (std::size_t a = 0; a < projs.size(); ++a)
    for (std::size_t b = 0; b < projs.size(); ++b) {
      Matrix prod = projs[a] * projs[b];
      Matrix expect = (a == b) ? projs[a] : Matrix::Zero(dim, dim);
      if ((prod - expect).cwiseAbs().maxCoeff() > 1e-11)
        throw std::invalid_argument("ideal measurement: non-orthogonal projectors");
    }
}

}  // namespace

TruncatedFockModel::TruncatedFockModel(double box_length, std::vector<std::vector<double>> modes,
                                       int n_max)
    : L_(box_length), modes_(std::move(modes)), n_max_(n_max) {
  if (L_ <= 0.0) throw std::invalid_argument("TruncatedFockModel: box length must be positive");
  if (modes_.empty()) throw std::invalid_argument("TruncatedFockModel: no modes");
  if (n_max_ < 1) throw std::invalid_argument("TruncatedFockModel: n_max >= 1 required");
  d_ = modes_[0].size();
  for (const auto& k : modes_) {
    if (k.size() != d_) throw std::invalid_argument("TruncatedFockModel: modes of mixed dimension");
    const double w = vnorm(k);
    if (w <= 0.0) throw std::invalid_argument("TruncatedFockModel: zero mode excluded");
    omegas_.push_back(w);
  }
  for (std::size_t a = 0; a < modes_.size(); ++a)
    for (std::size_t b = a + 1; b < modes_.size(); ++b)
      if (modes_[a] == modes_[b]) throw std::invalid_argument("TruncatedFockModel: duplicate modes");

  std::vector<int> cur(modes_.size(), 0);
  enumerate_tuples(cur, 0, n_max_, basis_);
  std::sort(basis_.begin(), basis_.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<long>(i);

  const long expected = binomial(n_max_ + static_cast<int>(modes_.size()),
                                 static_cast<int>(modes_.size()));
  if (dim() != expected) throw std::logic_error("TruncatedFockModel: basis size mismatch");

  for (std::size_t m = 0; m < modes_.size(); ++m) {
    Matrix a = Matrix::Zero(dim(), dim());
    for (long i = 0; i < dim(); ++i) {
      const auto& occ = basis_[i];
      if (occ[m] > 0) {
        std::vector<int> low = occ;
        low[m] -= 1;
        a(index_.at(low), i) = std::sqrt(static_cast<double>(occ[m]));
      }
    }
    ladders_.push_back(std::move(a));
  }
}

long TruncatedFockModel::index_of(const std::vector<int>& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) throw std::invalid_argument("TruncatedFockModel: tuple outside basis");
  return it->second;
}

double TruncatedFockModel::mode_phase(std::size_t m, const st::Point& xi) const {
  if (xi.dim() != d_) throw std::invalid_argument("mode_phase: dimension mismatch");
  double kx = 0.0;
  for (std::size_t i = 0; i < d_; ++i) kx += modes_.at(m)[i] * xi.x[i];
  return -omegas_[m] * xi.t + kx;
}

Vector TruncatedFockModel::vacuum() const {
  Vector v = Vector::Zero(dim());
  v(index_.at(std::vector<int>(modes_.size(), 0))) = 1.0;
  return v;
}

Vector TruncatedFockModel::one_particle(std::size_t m) const {
  std::vector<int> occ(modes_.size(), 0);
  occ.at(m) = 1;
  Vector v = Vector::Zero(dim());
  v(index_.at(occ)) = 1.0;
  return v;
}

Complex TruncatedFockModel::one_particle_wavefunction(std::size_t m, const st::Point& xi) const {
  const double amp = std::pow(L_, -0.5 * static_cast<double>(d_)) / std::sqrt(2.0 * omega(m));
  return amp * std::polar(1.0, mode_phase(m, xi));
}

Matrix field_operator(const TruncatedFockModel& model, const st::Point& X) {
  if (X.dim() != model.d()) throw std::invalid_argument("field_operator: dimension mismatch");
  Matrix phi = Matrix::Zero(model.dim(), model.dim());
  const double box = std::pow(model.L(), -0.5 * static_cast<double>(model.d()));
  for (std::size_t m = 0; m < model.mode_count(); ++m) {
    const Complex u = std::polar(1.0, model.mode_phase(m, X));
    const double c = box / std::sqrt(2.0 * model.omega(m));
    phi += c * (u * model.annihilator(m) + std::conj(u) * model.annihilator(m).adjoint());
  }
  return phi;
}

Matrix unitary_kick(const TruncatedFockModel& model, const st::Point& X, double lambda) {
  return la::exp_i_hermitian(field_operator(model, X), lambda);
}

Matrix rotation_unitary(const TruncatedFockModel& model, const RotationSpec& spec) {
  const long n = model.dim();
  if (spec.one_a.size() != n || spec.one_b.size() != n)
    throw std::invalid_argument("rotation_unitary: state dimension mismatch");
  if (std::abs(spec.one_a.norm() - 1.0) > la::kOpTol || std::abs(spec.one_b.norm() - 1.0) > la::kOpTol)
    throw std::invalid_argument("rotation_unitary: states must be normalized");
  if (std::abs(spec.one_a.dot(spec.one_b)) > la::kOpTol)
    throw std::invalid_argument("rotation_unitary: states must be orthogonal");
  const double mod = std::norm(spec.C) + std::norm(spec.D);
  if (std::abs(mod - 1.0) > la::kOpTol)
    throw std::invalid_argument("rotation_unitary: |C|^2 + |D|^2 = 1 required");

  const Matrix Pa = spec.one_a * spec.one_a.adjoint();
  const Matrix Pb = spec.one_b * spec.one_b.adjoint();
  const Matrix Aab = spec.one_a * spec.one_b.adjoint();
  const Matrix Aba = spec.one_b * spec.one_a.adjoint();
  const Complex ph = std::polar(1.0, spec.theta);
  Matrix U = ph * (spec.C * Pa + spec.D * Aab - std::conj(spec.D) * Aba + std::conj(spec.C) * Pb);
  U += Matrix::Identity(n, n) - Pa - Pb;
  return U;
}

double sequential_probability(const Matrix& rho, const std::vector<Matrix>& projectors) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("sequential_probability: square rho required");
  Matrix m = rho;
  for (const auto& P : projectors) {
    if (P.rows() != rho.rows() || P.cols() != rho.cols())
      throw std::invalid_argument("sequential_probability: dimension mismatch");
    if (!la::is_hermitian(P) || (P * P - P).cwiseAbs().maxCoeff() > 1e-11)
      throw std::invalid_argument("sequential_probability: non-idempotent projector");
    m = P * m * P;
  }
  return m.trace().real();
}

double sequential_probability(const Vector& psi, const std::vector<Matrix>& projectors) {
  Vector v = psi;
  for (const auto& P : projectors) {
    if (P.rows() != psi.size()) throw std::invalid_argument("sequential_probability: dimension mismatch");
    if (!la::is_hermitian(P) || (P * P - P).cwiseAbs().maxCoeff() > 1e-11)
      throw std::invalid_argument("sequential_probability: non-idempotent projector");
    v = P * v;
  }
  return v.squaredNorm();
}

ProtocolResult run_protocol(const TruncatedFockModel& model, const Protocol& protocol) {
  if (protocol.steps.empty()) throw std::invalid_argument("run_protocol: empty protocol");
  if (!std::holds_alternative<MeasureFieldStep>(protocol.steps.back()))
    throw std::invalid_argument("run_protocol: final step must measure the field");
  if (protocol.initial_state.size() != model.dim())
    throw std::invalid_argument("run_protocol: initial state dimension mismatch");

  Matrix rho = protocol.initial_state * protocol.initial_state.adjoint();
  ProtocolResult res;
  for (std::size_t s = 0; s < protocol.steps.size(); ++s) {
    const auto& step = protocol.steps[s];
    if (const auto* kick = std::get_if<KickStep>(&step)) {
      Matrix U = unitary_kick(model, kick->X, kick->lambda);
      rho = U * rho * U.adjoint();
    } else if (const auto* rot = std::get_if<RotateStep>(&step)) {
      Matrix U = rotation_unitary(model, rot->spec);
      rho = U * rho * U.adjoint();
    } else if (const auto* meas = std::get_if<IdealMeasureStep>(&step)) {
      check_projector_family(meas->projectors, model.dim());
      std::vector<double> weights;
      Matrix next = Matrix::Zero(model.dim(), model.dim());
      for (const auto& P : meas->projectors) {
        Matrix branch = P * rho * P;
        weights.push_back(branch.trace().real());
        next += branch;
      }
      res.branch_weights.push_back(std::move(weights));
      rho = next;
    } else if (const auto* fin = std::get_if<MeasureFieldStep>(&step)) {
      if (s + 1 != protocol.steps.size())
        throw std::invalid_argument("run_protocol: field measurement must be the final step");
      res.expectation = (field_operator(model, fin->Y) * rho).trace().real();
    }
  }
  return res;
}

namespace {

double expectation_with_kick_lambda(const TruncatedFockModel& model, const Protocol& protocol,
                                    double lambda) {
  Protocol p = protocol;
  for (auto& step : p.steps)
    if (auto* kick = std::get_if<KickStep>(&step)) {
      kick->lambda = lambda;
      return run_protocol(model, p).expectation;
    }
  throw std::invalid_argument("protocol_lambda_derivative: protocol has no kick step");
}

}  // namespace

double protocol_lambda_derivative(const TruncatedFockModel& model, const Protocol& protocol,
                                  double h) {
  const double ep = expectation_with_kick_lambda(model, protocol, h);
  const double em = expectation_with_kick_lambda(model, protocol, -h);
  return (ep - em) / (2.0 * h);
}

double measurement_induced_signal(const TruncatedFockModel& model, const Protocol& protocol,
                                  double h) {
  bool any = false;
  Protocol stripped;
  stripped.initial_state = protocol.initial_state;
  for (const auto& step : protocol.steps) {
    if (std::holds_alternative<IdealMeasureStep>(step)) {
      any = true;
      continue;
    }
    stripped.steps.push_back(step);
  }
  if (!any)
    throw std::invalid_argument("measurement_induced_signal: protocol has no ideal measurement");
  const double with_meas = protocol_lambda_derivative(model, protocol, h);
  const double without = protocol_lambda_derivative(model, stripped, h);
  return -0.5 * (with_meas - without);
}

double analytic_box_signal(const TruncatedFockModel& model, std::size_t mode_a,
                           std::size_t mode_b, const st::Point& X, const st::Point& Y) {
  if (mode_a >= model.mode_count() || mode_b >= model.mode_count())
    throw std::invalid_argument("analytic_box_signal: mode not in model");
  const double pa_X = model.mode_phase(mode_a, X);
  const double pa_Y = model.mode_phase(mode_a, Y);
  const double pb_X = model.mode_phase(mode_b, X);
  const double pb_Y = model.mode_phase(mode_b, Y);
  const double boxd = std::pow(model.L(), -static_cast<double>(model.d()));
  return boxd / std::sqrt(model.omega(mode_a) * model.omega(mode_b)) *
         (std::sin(pb_Y - pa_X) - std::sin(pa_Y - pb_X));
}

double analytic_box_signal_opposite(const TruncatedFockModel& model, std::size_t mode_a,
                                    const st::Point& X, const st::Point& Y) {
  if (mode_a >= model.mode_count())
    throw std::invalid_argument("analytic_box_signal_opposite: mode not in model");
  const auto& k = model.mode(mode_a);
  double ksum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) ksum += k[i] * (Y.x[i] + X.x[i]);
  const double w = model.omega(mode_a);
  const double boxd = std::pow(model.L(), -static_cast<double>(model.d()));
  return -(2.0 * boxd / w) * std::cos(w * (Y.t - X.t)) * std::sin(ksum);
}

TruncatedFockModel default_two_mode_model(double k) {
  return TruncatedFockModel(2.0 * M_PI, {{k}, {-k}}, 3);
}

}  // namespace qfc::fb
