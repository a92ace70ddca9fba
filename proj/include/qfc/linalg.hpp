#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qfc::la {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kOpTol = 1e-12;

double hermiticity_defect(const Matrix& A);   // ||A - A^dag||_max
double unitarity_defect(const Matrix& U);     // ||U^dag U - 1||_max
bool is_hermitian(const Matrix& A, double tol = kOpTol);
bool is_unitary(const Matrix& U, double tol = kOpTol);

// e^{i s H} for Hermitian H via eigendecomposition (unitary to machine
// precision by construction)
Matrix exp_i_hermitian(const Matrix& H, double s);

// General matrix exponential, Pade 13 with scaling and squaring
// (Higham 2005); handles defective generators.
Matrix expm(const Matrix& A);

// trace norm ||A||_1 for Hermitian A (sum of |eigenvalues|)
double trace_norm_hermitian(const Matrix& A);

// partial trace over subsystem A (dimA x dimB product ordering: index =
// a*dimB + b); returns dimB x dimB
Matrix partial_trace_first(const Matrix& rho, int dimA, int dimB);

Matrix kron(const Matrix& A, const Matrix& B);

}  // namespace qfc::la
