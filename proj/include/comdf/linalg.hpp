#pragma once

#include <Eigen/Dense>

namespace comdf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest eigenvalue modulus and largest singular value of a square matrix.
struct Spectrum {
    double radius = 0.0;
    double norm2 = 0.0;
};

/// True iff every entry of m is finite (no NaN/Inf).
bool is_finite(const Matrix& m);

/// (m + m^T)/2, used after covariance updates to suppress asymmetry drift.
Matrix symmetrize(const Matrix& m);

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// m^k for k >= 0 by repeated squaring.
Matrix matrix_power(const Matrix& m, long k);

/// max |lambda_i(m)| via a full (Schur-based) eigenvalue decomposition.
/// Power iteration is not reliable here: the fusion matrix G of a directed
/// graph is nonsymmetric and may have a complex dominant pair.
double spectral_radius(const Matrix& m);

/// Largest singular value.
double spectral_norm(const Matrix& m);

Spectrum spectrum(const Matrix& m);

/// Stationary solution of
///   P = A P A^T + Q - A P C^T (C P C^T + R)^{-1} C P A^T
/// by fixed-point iteration of the Riccati recursion from P0 = Q.
/// Requires (C, A) observable (detectable), Q PSD and R PD; the result is
/// symmetric PSD and satisfies the equation with residual spectral norm
/// <= 1e-9 * (1 + ||P||_2).
Matrix solve_dare(const Matrix& A, const Matrix& C, const Matrix& Q, const Matrix& R);

/// Unique solution of X = F X F^T + Phi for Schur-stable F (rho(F) < 1),
/// computed as the fixed point of X_{k+1} = F X_k F^T + Phi from X0 = Phi.
/// Residual spectral norm <= 1e-9 * (1 + ||X||_2).
Matrix solve_dle(const Matrix& F, const Matrix& Phi);

/// Upper bound on ||M^k||_2 for an n x n matrix:
///   sqrt(n) * sum_{j=0}^{n-1} C(n-1,j) C(k,j) ||M||_2^j rho(M)^{k-j}
/// with C(k,j) = 0 for j > k.
double power_norm_bound(const Matrix& m, long k);

/// Symmetric PSD square root via eigendecomposition; negative eigenvalues
/// within roundoff of zero are clamped. Used to colour Gaussian noise.
Matrix psd_sqrt(const Matrix& m);

}  // namespace comdf
