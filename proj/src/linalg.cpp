#include "qfc/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qfc::la {

double hermiticity_defect(const Matrix& A) {
  return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& U) {
  Matrix I = Matrix::Identity(U.rows(), U.cols());
  return (U.adjoint() * U - I).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& A, double tol) { return hermiticity_defect(A) <= tol; }
bool is_unitary(const Matrix& U, double tol) { return unitarity_defect(U) <= tol; }

Matrix exp_i_hermitian(const Matrix& H, double s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("exp_i_hermitian: eigensolver failed");
  Vector phases(H.rows());
  for (long j = 0; j < H.rows(); ++j)
    phases(j) = std::polar(1.0, s * es.eigenvalues()(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix expm(const Matrix& A) {
  // Pade 13 coefficients
  static const double b[14] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800.,  129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,       1323241920.,
                               40840800.,          960960.,            16380.,
                               182.,               1.};
  const double theta13 = 5.371920351148152;
  const long n = A.rows();
  const double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  Matrix As = A;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    As /= std::pow(2.0, squarings);
  }
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = As * As;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A2 * A4;
  Matrix U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                   b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
             b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Matrix F = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) F = F * F;
  return F;
}

double trace_norm_hermitian(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("trace_norm_hermitian: eigensolver failed");
  double s = 0.0;
  for (long j = 0; j < A.rows(); ++j) s += std::abs(es.eigenvalues()(j));
  return s;
}

Matrix partial_trace_first(const Matrix& rho, int dimA, int dimB) {
  if (rho.rows() != static_cast<long>(dimA) * dimB || rho.cols() != rho.rows())
    throw std::invalid_argument("partial_trace_first: dimension mismatch");
  Matrix out = Matrix::Zero(dimB, dimB);
  for (int a = 0; a < dimA; ++a)
    for (int i = 0; i < dimB; ++i)
      for (int j = 0; j < dimB; ++j)
        out(i, j) += rho(a * dimB + i, a * dimB + j);
  return out;
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

}  // namespace qfc::la
