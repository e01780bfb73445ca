#include "comdf/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "comdf/errors.hpp"

namespace comdf {

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        fail(ErrorCode::InvalidArgument,
             std::string(who) + ": matrix must be square, got " +
                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

bool is_finite(const Matrix& m) { return m.allFinite(); }

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix matrix_power(const Matrix& m, long k) {
    require_square(m, "matrix_power");
    if (k < 0) fail(ErrorCode::InvalidArgument, "matrix_power: negative exponent");
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    Matrix base = m;
    for (long e = k; e > 0; e >>= 1) {
        if (e & 1) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

double spectral_radius(const Matrix& m) {
    require_square(m, "spectral_radius");
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::Numeric, "spectral_radius: eigenvalue iteration failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Spectrum spectrum(const Matrix& m) { return {spectral_radius(m), spectral_norm(m)}; }

Matrix solve_dare(const Matrix& A, const Matrix& C, const Matrix& Q, const Matrix& R) {
    const Eigen::Index n = A.rows();
    require_square(A, "solve_dare");
    require_square(Q, "solve_dare");
    require_square(R, "solve_dare");
    if (C.cols() != n || Q.rows() != n || R.rows() != C.rows())
        fail(ErrorCode::InvalidArgument, "solve_dare: dimension mismatch among A, C, Q, R");

    constexpr long kMaxIterations = 100000;
    constexpr double kStepTol = 1e-12;

    Matrix P = symmetrize(Q);
    double step = 0.0;
    for (long it = 0; it < kMaxIterations; ++it) {
        Matrix S = C * P * C.transpose() + R;
        Matrix APCt = A * P * C.transpose();
        Matrix next =
            A * P * A.transpose() + Q - APCt * S.ldlt().solve(APCt.transpose());
        next = symmetrize(next);
        step = spectral_norm(next - P);
        P = next;
        if (step <= kStepTol) break;
    }

    Matrix S = C * P * C.transpose() + R;
    Matrix APCt = A * P * C.transpose();
    Matrix residual =
        A * P * A.transpose() + Q - APCt * S.ldlt().solve(APCt.transpose()) - P;
    double res_norm = spectral_norm(residual);
    if (step > kStepTol || res_norm > 1e-9 * (1.0 + spectral_norm(P)))
        fail(ErrorCode::Numeric,
             "solve_dare: no convergence within iteration cap, last residual " +
                 std::to_string(res_norm));
    return P;
}

Matrix solve_dle(const Matrix& F, const Matrix& Phi) {
    require_square(F, "solve_dle");
    require_square(Phi, "solve_dle");
    if (F.rows() != Phi.rows())
        fail(ErrorCode::InvalidArgument, "solve_dle: F and Phi sizes differ");
    double rho = spectral_radius(F);
    if (rho >= 1.0)
        fail(ErrorCode::Infeasible,
             "solve_dle: F is not Schur stable (spectral radius " + std::to_string(rho) + ")");

    constexpr long kMaxIterations = 200000;
    constexpr double kStepTol = 1e-13;

    Matrix X = symmetrize(Phi);
    double step = 0.0;
    for (long it = 0; it < kMaxIterations; ++it) {
        Matrix next = symmetrize(F * X * F.transpose() + Phi);
        step = spectral_norm(next - X);
        X = next;
        if (step <= kStepTol) break;
    }

    double res_norm = spectral_norm(F * X * F.transpose() + Phi - X);
    if (step > kStepTol || res_norm > 1e-9 * (1.0 + spectral_norm(X)))
        fail(ErrorCode::Numeric,
             "solve_dle: no convergence within iteration cap, last residual " +
                 std::to_string(res_norm));
    return X;
}

double power_norm_bound(const Matrix& m, long k) {
    require_square(m, "power_norm_bound");
    if (k < 0) fail(ErrorCode::InvalidArgument, "power_norm_bound: negative exponent");
    const long n = m.rows();
    const double norm = spectral_norm(m);
    const double rho = spectral_radius(m);

    double sum = 0.0;
    for (long j = 0; j < n && j <= k; ++j) {
        // C(n-1, j) * C(k, j), accumulated multiplicatively in double.
        double binoms = 1.0;
        for (long t = 1; t <= j; ++t)
            binoms *= static_cast<double>(n - j + t - 1) / t * (static_cast<double>(k - j + t) / t);
        sum += binoms * std::pow(norm, static_cast<double>(j)) *
               std::pow(rho, static_cast<double>(k - j));
    }
    return std::sqrt(static_cast<double>(n)) * sum;
}

Matrix psd_sqrt(const Matrix& m) {
    require_square(m, "psd_sqrt");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(m));
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::Numeric, "psd_sqrt: eigendecomposition failed");
    Vector values = solver.eigenvalues();
    double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) < -1e-10 * scale)
            fail(ErrorCode::InvalidArgument, "psd_sqrt: matrix is not positive semidefinite");
        values(i) = std::sqrt(std::max(values(i), 0.0));
    }
    return solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace comdf
